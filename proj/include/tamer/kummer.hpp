#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tamer/poly.hpp"
#include "tamer/quotient.hpp"

namespace tamer {

/// R[t_1, ..., t_n]/(t_i^{r_i} - s_i) over a polynomial ring R, graded by
/// deg t_i = e_i in Z^n/r.
class GradedKummerAlgebra {
public:
    const PolyRingPtr& base() const noexcept { return base_; }
    /// Ring with the base variables followed by t_1, ..., t_n.
    const PolyRingPtr& ring() const noexcept { return presentation_.ring(); }
    const QuotientPresentation& presentation() const noexcept { return presentation_; }
    const std::vector<MultiPoly>& s() const noexcept { return s_; }
    const std::vector<std::uint32_t>& r() const noexcept { return r_; }
    std::size_t branches() const noexcept { return r_.size(); }
    std::size_t t_index(std::size_t i) const noexcept { return base_->nvars() + i; }

    /// prod r_i.
    std::uint64_t rank() const noexcept;
    /// R-basis t^e, 0 <= e < r, in mixed-radix order (first index fastest).
    std::vector<Monomial> basis() const;
    /// Degree in Z^n/r of a monomial of ring().
    std::vector<std::uint32_t> degree(const Monomial& m) const;
    /// s_i embedded in ring().
    MultiPoly lifted_s(std::size_t i) const;
    MultiPoly t(std::size_t i) const;
    /// The components of a normal form by degree; each nonzero component is
    /// (coefficient in R) * t^e for the unique basis monomial of that degree.
    std::vector<std::pair<std::vector<std::uint32_t>, MultiPoly>> homogeneous_parts(const MultiPoly& f) const;
    /// Coefficient in R of t^e in a normal form.
    MultiPoly coefficient(const MultiPoly& f, const std::vector<std::uint32_t>& e) const;

    /// det of the Jacobian of (t_i^{r_i} - s_i) in the t variables.
    MultiPoly jacobian_determinant() const;

    friend GradedKummerAlgebra kummer_algebra(PolyRingPtr base, std::vector<MultiPoly> s,
                                              std::vector<std::uint32_t> r);

private:
    GradedKummerAlgebra(PolyRingPtr base, QuotientPresentation q, std::vector<MultiPoly> s,
                        std::vector<std::uint32_t> r);
    PolyRingPtr base_;
    QuotientPresentation presentation_;
    std::vector<MultiPoly> s_;
    std::vector<std::uint32_t> r_;
};

/// Throws InputError for s_i = 0, r_i = 0, or mismatched lengths.
GradedKummerAlgebra kummer_algebra(PolyRingPtr base, std::vector<MultiPoly> s, std::vector<std::uint32_t> r);

/// The etale-locus identity det * prod t_i = (prod r_i) * prod s_i, checked
/// in the algebra; `unit_factor` is prod r_i mod p.
struct EtaleCertificate {
    MultiPoly determinant;
    MultiPoly determinant_times_t;
    MultiPoly expected;
    std::uint64_t unit_factor;
    bool identity_holds;
    bool etale;  ///< identity holds and unit_factor != 0
};
EtaleCertificate etale_certificate(const GradedKummerAlgebra& Z);

/// Z/m_1 x ... x Z/m_k with elements indexed in mixed radix.
class FiniteAbelianGroup {
public:
    explicit FiniteAbelianGroup(std::vector<std::uint64_t> orders);
    const std::vector<std::uint64_t>& orders() const noexcept { return orders_; }
    std::size_t rank() const noexcept { return orders_.size(); }
    std::uint64_t size() const noexcept { return size_; }
    std::vector<std::uint64_t> element(std::uint64_t index) const;
    std::uint64_t index(const std::vector<std::uint64_t>& coords) const;
    std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t neg(std::uint64_t a) const;
    /// Index of the j-th standard generator.
    std::uint64_t generator(std::size_t j) const;

private:
    std::vector<std::uint64_t> orders_;
    std::uint64_t size_;
};

/// A homomorphism A -> Z^n/r given by the images of the standard generators:
/// phi[i][j] is the i-th coordinate of phi(generator j).
using CharacterMatrix = std::vector<std::vector<long>>;

/// Throws InputError unless phi is well defined (m_j phi(g_j) = 0 mod r).
void validate_character_map(const FiniteAbelianGroup& A, const CharacterMatrix& phi,
                            const std::vector<std::uint32_t>& r);
/// Surjectivity of phi onto Z^n/r: every invariant factor of [phi | diag r]
/// equals 1.
bool is_surjective(const CharacterMatrix& phi, const std::vector<std::uint32_t>& r);

/// The A-graded R-algebra with basis w_a (a in A) and
/// w_a w_b = u_{a,b} w_{a+b}, u_{a,b} = prod_i s_i^{floor((d_i(a) + d_i(b))/r_i)},
/// where d(a) in [0, r) is phi(a). Realizes sum_a Z_{phi(a)} with w_a = t^{d(a)}.
class CoverAlgebra {
public:
    using Element = std::vector<MultiPoly>;  ///< coefficient of each w_a

    CoverAlgebra(PolyRingPtr base, std::vector<MultiPoly> s, std::vector<std::uint32_t> r,
                 FiniteAbelianGroup A, CharacterMatrix phi);

    const PolyRingPtr& base() const noexcept { return base_; }
    const std::vector<MultiPoly>& s() const noexcept { return s_; }
    const std::vector<std::uint32_t>& r() const noexcept { return r_; }
    const FiniteAbelianGroup& group() const noexcept { return A_; }
    const CharacterMatrix& phi() const noexcept { return phi_; }
    std::uint64_t rank() const noexcept { return A_.size(); }

    /// d(a) in [0, r).
    const std::vector<std::uint32_t>& degree(std::uint64_t a) const { return d_.at(a); }
    /// Exponent vector of u_{a,b} in the s_i.
    std::vector<std::uint32_t> carry(std::uint64_t a, std::uint64_t b) const;
    MultiPoly cocycle(std::uint64_t a, std::uint64_t b) const;

    Element zero() const;
    Element basis_element(std::uint64_t a) const;
    Element multiply(const Element& x, const Element& y) const;

    /// u_{a,b} u_{a+b,c} = u_{b,c} u_{a,b+c}: exhaustive when |A| <= 64,
    /// otherwise on `samples` seeded triples. Returns the number of triples.
    std::uint64_t check_cocycle(std::uint64_t samples = 20000, std::uint64_t seed = 1) const;
    /// u_{a,-a} is a monomial in s, so w_a is a unit once prod s_i is inverted.
    bool free_away_from_branch_locus() const;

    /// Relations as text, "w_a*w_b = u*w_c" for each generator pair.
    std::vector<std::string> presentation() const;

private:
    PolyRingPtr base_;
    std::vector<MultiPoly> s_;
    std::vector<std::uint32_t> r_;
    FiniteAbelianGroup A_;
    CharacterMatrix phi_;
    std::vector<std::vector<std::uint32_t>> d_;
};

/// Cover algebra of Z along a surjection phi: A ->> Z^n/r. Throws InputError
/// when phi is not surjective or not well defined.
CoverAlgebra induced_cover(const GradedKummerAlgebra& Z, const FiniteAbelianGroup& A, const CharacterMatrix& phi);

/// Checks that each w_a of `cover`, realized as t^{d(a)} in Z, multiplies
/// like Z: t^{d(a)} t^{d(b)} = u_{a,b} t^{d(a+b)} as normal forms.
bool refines_grading(const CoverAlgebra& cover, const GradedKummerAlgebra& Z);

/// Graded isomorphism w_a -> w'_a over the same base and group: equal
/// gradings and equal cocycles (all pairs when |A| <= 64, else every pair
/// (a, generator)), with u_{0,a} = 1.
bool graded_isomorphic(const CoverAlgebra& x, const CoverAlgebra& y);

}  // namespace tamer
