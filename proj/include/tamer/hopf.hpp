#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "tamer/field.hpp"
#include "tamer/finite_group.hpp"
#include "tamer/linalg.hpp"

namespace tamer {

/// Cap for the literal commutator map with n = 1.
inline constexpr std::size_t kMaxHopfDim = 36;
/// Cap for the factored chain, the derived subgroup and the abelianization,
/// whose storage is dim^3.
inline constexpr std::size_t kMaxChainDim = 64;
inline constexpr std::size_t kMaxAxiomDim = 64;

/// A finite-dimensional commutative Hopf algebra over F_q given by dense
/// structure tensors on a basis b_0, ..., b_{dim-1}.
///
///   mult[(i*dim + j)*dim + k]   coefficient of b_k in b_i b_j
///   comult[(k*dim + i)*dim + j] coefficient of b_i (x) b_j in Delta(b_k)
///   antipode[j*dim + i]         coefficient of b_i in S(b_j)
class HopfAlgebra {
public:
    HopfAlgebra(FiniteField field, std::vector<std::string> labels, std::vector<std::uint32_t> mult,
                Vec unit, std::vector<std::uint32_t> comult, Vec counit,
                std::vector<std::uint32_t> antipode);

    const FiniteField& field() const noexcept { return field_; }
    std::size_t dim() const noexcept { return dim_; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const std::vector<std::uint32_t>& mult() const noexcept { return mult_; }
    const Vec& unit() const noexcept { return unit_; }
    const std::vector<std::uint32_t>& comult() const noexcept { return comult_; }
    const Vec& counit() const noexcept { return counit_; }
    const std::vector<std::uint32_t>& antipode() const noexcept { return antipode_; }

    struct Term2 {
        std::uint32_t i, j, c;
    };
    struct Term1 {
        std::uint32_t k, c;
    };
    /// Sparse views.
    const std::vector<Term1>& product(std::size_t i, std::size_t j) const { return mult_sparse_[i * dim_ + j]; }
    const std::vector<Term2>& coproduct(std::size_t k) const { return comult_sparse_[k]; }
    const std::vector<Term1>& antipode_of(std::size_t j) const { return antipode_sparse_[j]; }

    Vec multiply(const Vec& a, const Vec& b) const;
    Vec apply_antipode(const Vec& a) const;
    std::uint32_t apply_counit(const Vec& a) const;
    /// Delta(a) as a dense dim*dim vector, index i*dim + j.
    Vec comultiply(const Vec& a) const;
    Vec basis_vector(std::size_t i) const;

private:
    FiniteField field_;
    std::size_t dim_;
    std::vector<std::string> labels_;
    std::vector<std::uint32_t> mult_;
    Vec unit_;
    std::vector<std::uint32_t> comult_;
    Vec counit_;
    std::vector<std::uint32_t> antipode_;
    std::vector<std::vector<Term1>> mult_sparse_;
    std::vector<std::vector<Term2>> comult_sparse_;
    std::vector<std::vector<Term1>> antipode_sparse_;
};

/// Outcome of each Hopf axiom as an exact tensor identity.
struct AxiomReport {
    std::vector<std::pair<std::string, bool>> checks;
    bool all_pass() const noexcept;
    std::string failures() const;
};

AxiomReport check_axioms(const HopfAlgebra& H);

/// Cocommutativity: Delta = swap o Delta. For a finite group scheme this is
/// exactly commutativity of the group.
bool is_abelian(const HopfAlgebra& H);

/// H (x)_k k' for an extension k' of H's prime field.
HopfAlgebra base_change(const HopfAlgebra& H, const FiniteField& bigger);

// ---------------------------------------------------------------------------
// Constructors

struct GroupSchemeDescriptor;

struct MuDesc {
    std::uint64_t n;
};
struct AlphaDesc {
    std::uint64_t p;
};
struct ConstantDesc {
    std::string name;  ///< bundled table name, or "custom"
    std::shared_ptr<const AbstractFiniteGroup> group;
};
struct ProductDesc {
    std::shared_ptr<const GroupSchemeDescriptor> a, b;
};
/// Action of the quotient on the normal factor.
///   trivial
///   exponents: constant quotient acting on mu(n) by zeta -> zeta^{k_q}
///   scalars:   constant quotient acting on alpha(p) by a -> c_q a
///   weight:    mu(m) acting through a Z/m grading, x -> y^w (x) x
struct ActionDesc {
    enum class Kind { Trivial, Exponents, Scalars, Weight } kind = Kind::Trivial;
    std::vector<std::int64_t> values;
    std::int64_t weight = 0;
};
struct SemidirectDesc {
    std::shared_ptr<const GroupSchemeDescriptor> normal, quotient;
    ActionDesc action;
};

struct GroupSchemeDescriptor {
    std::variant<MuDesc, AlphaDesc, ConstantDesc, ProductDesc, SemidirectDesc> node;
    /// Order of the group scheme (= dimension of its Hopf algebra).
    std::size_t order() const;
    std::string describe() const;
};

GroupSchemeDescriptor mu(std::uint64_t n);
GroupSchemeDescriptor alpha(std::uint64_t p);
GroupSchemeDescriptor constant(const std::string& name);
GroupSchemeDescriptor constant(const AbstractFiniteGroup& g, std::string name = "custom");
GroupSchemeDescriptor product(GroupSchemeDescriptor a, GroupSchemeDescriptor b);
GroupSchemeDescriptor semidirect(GroupSchemeDescriptor normal, GroupSchemeDescriptor quotient,
                                 ActionDesc action);
/// alpha(p) x| mu(p) with mu_p scaling alpha_p.
GroupSchemeDescriptor alpha_semidirect_mu(std::uint64_t p);
/// mu(n) x| Z/2 with Z/2 acting by inversion.
GroupSchemeDescriptor mu_semidirect_z2(std::uint64_t n);

/// Builds the Hopf algebra over `field`. Throws InputError for alpha(p)
/// with char != p and for action data that is not an action by Hopf
/// automorphisms.
HopfAlgebra build(const GroupSchemeDescriptor& d, const FiniteField& field);

/// Function algebra of a constant group; basis e_g indexed like the table.
HopfAlgebra constant_hopf(const AbstractFiniteGroup& g, const FiniteField& field);

}  // namespace tamer
