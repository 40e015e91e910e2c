#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tamer/field.hpp"
#include "tamer/poly.hpp"

namespace tamer {

/// Rewrite rule var^power -> rhs.
struct PowerRule {
    std::size_t var;
    std::uint32_t power;
    MultiPoly rhs;
};

/// Monomials of total degree above `max_degree` in `vars` rewrite to zero.
struct Truncation {
    std::vector<std::size_t> vars;
    std::uint32_t max_degree;
};

/// A quotient F_p[x]/(rules) presented by a rewrite system.
///
/// Supported shapes: one pure-power rule per ruled variable, whose
/// right-hand side has lower degree in that variable and mentions no other
/// ruled variable (t^r -> s, x^(B+1) -> 0, y^n -> 1, w^k -> m(w) lower
/// terms), plus an optional total-degree truncation on unruled variables.
/// Under these shapes the quotient is a tower of monic single-variable
/// extensions over a truncated polynomial ring, so reduction terminates and
/// normal forms are unique. Anything else is rejected at construction.
class QuotientPresentation {
public:
    QuotientPresentation(PolyRingPtr ring, std::vector<PowerRule> rules,
                         std::optional<Truncation> truncation = std::nullopt);

    const PolyRingPtr& ring() const noexcept { return ring_; }
    const std::vector<PowerRule>& rules() const noexcept { return rules_; }
    const std::optional<Truncation>& truncation() const noexcept { return truncation_; }

    bool is_reducible(const Monomial& m) const noexcept;
    /// Every variable is bounded by a rule or the truncation.
    bool is_finite() const noexcept;
    /// Normal monomials in degrevlex-descending order. Throws if infinite.
    std::vector<Monomial> normal_basis() const;

private:
    PolyRingPtr ring_;
    std::vector<PowerRule> rules_;
    std::optional<Truncation> truncation_;
    std::vector<long> rule_of_var_;
};

MultiPoly normal_form(const MultiPoly& e, const QuotientPresentation& q);

/// NF(a * b).
MultiPoly multiply_mod(const MultiPoly& a, const MultiPoly& b, const QuotientPresentation& q);
MultiPoly power_mod(const MultiPoly& a, std::uint64_t e, const QuotientPresentation& q);

/// F_p[w]/(m(w)) as a FiniteField, with m monic of degree k given by the
/// single rule w^k -> lower terms. Throws InputError unless m is irreducible.
FiniteField extension_field(const QuotientPresentation& q);

/// Conway-style default quadratic extension F_{p^2} = F_p[w]/(w^2 - c) or,
/// for p = 2, F_2[w]/(w^2 + w + 1).
QuotientPresentation quadratic_extension_presentation(std::uint64_t p);

/// A finite-dimensional commutative F_p-algebra with enumerable elements.
/// Elements are encoded as integers in [0, p^dim) over the normal basis.
class FiniteAlgebra {
public:
    /// Precomputes full addition and multiplication tables on codes;
    /// throws BudgetExceeded when p^dim exceeds `max_elements`.
    FiniteAlgebra(const QuotientPresentation& q, std::uint64_t max_elements = 4096);

    std::uint64_t characteristic() const noexcept { return p_; }
    std::size_t dim() const noexcept { return basis_.size(); }
    std::uint32_t size() const noexcept { return size_; }
    const std::vector<Monomial>& basis() const noexcept { return basis_; }
    const QuotientPresentation& presentation() const noexcept { return q_; }

    std::uint32_t zero() const noexcept { return 0; }
    std::uint32_t one() const noexcept { return one_; }
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept { return add_[a * size_ + b]; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept { return mul_[a * size_ + b]; }
    std::uint32_t scale(std::uint32_t c, std::uint32_t a) const noexcept { return scale_[c * size_ + a]; }

    std::uint32_t encode(const MultiPoly& normal) const;
    MultiPoly decode(std::uint32_t code) const;

private:
    QuotientPresentation q_;
    std::uint64_t p_;
    std::vector<Monomial> basis_;
    std::uint32_t size_;
    std::uint32_t one_;
    std::vector<std::uint32_t> add_, mul_, scale_;
};

}  // namespace tamer
