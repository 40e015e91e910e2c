#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "tamer/field.hpp"

namespace tamer {

using Monomial = std::vector<std::uint32_t>;

/// Degree reverse lexicographic order on the declared variable order:
/// higher total degree first, ties broken by the smaller exponent of the
/// last differing variable.
struct DegRevLexGreater {
    bool operator()(const Monomial& a, const Monomial& b) const noexcept;
};

std::uint32_t total_degree(const Monomial& m) noexcept;

/// F_p[x_1, ..., x_n] with named variables.
class PolyRing {
public:
    PolyRing(std::uint64_t p, std::vector<std::string> variables);

    const PrimeField& field() const noexcept { return field_; }
    std::uint64_t characteristic() const noexcept { return field_.modulus(); }
    const std::vector<std::string>& variables() const noexcept { return vars_; }
    std::size_t nvars() const noexcept { return vars_.size(); }
    /// Throws InputError for undeclared names.
    std::size_t index_of(const std::string& name) const;

    bool operator==(const PolyRing& o) const noexcept {
        return field_ == o.field_ && vars_ == o.vars_;
    }

private:
    PrimeField field_;
    std::vector<std::string> vars_;
};

using PolyRingPtr = std::shared_ptr<const PolyRing>;

PolyRingPtr make_ring(std::uint64_t p, std::vector<std::string> variables);

/// A multivariate polynomial: exponent vectors to nonzero F_p coefficients,
/// kept in descending degrevlex order.
class MultiPoly {
public:
    using Terms = std::map<Monomial, std::uint64_t, DegRevLexGreater>;

    explicit MultiPoly(PolyRingPtr ring);
    static MultiPoly constant(PolyRingPtr ring, std::int64_t c);
    static MultiPoly variable(PolyRingPtr ring, const std::string& name);
    static MultiPoly variable(PolyRingPtr ring, std::size_t index);
    static MultiPoly monomial(PolyRingPtr ring, Monomial exps, std::int64_t c = 1);

    const PolyRingPtr& ring() const noexcept { return ring_; }
    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }
    /// -1 for the zero polynomial.
    long total_degree() const noexcept;
    long degree_in(std::size_t var) const noexcept;
    std::uint64_t coefficient(const Monomial& m) const;
    std::uint64_t constant_term() const;

    /// Adds c * m, dropping the term if the coefficient cancels.
    void add_term(const Monomial& m, std::uint64_t c);

    MultiPoly operator+(const MultiPoly& o) const;
    MultiPoly operator-(const MultiPoly& o) const;
    MultiPoly operator*(const MultiPoly& o) const;
    MultiPoly operator-() const;
    MultiPoly scaled(std::uint64_t c) const;
    MultiPoly pow(std::uint64_t e) const;
    /// Drops every term of total degree above `bound` in the listed variables.
    MultiPoly truncated(const std::vector<std::size_t>& vars, std::uint32_t bound) const;
    std::uint64_t evaluate(const std::vector<std::uint64_t>& point) const;

    bool operator==(const MultiPoly& o) const;
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    std::string to_string() const;

private:
    void check_ring(const MultiPoly& o) const;
    PolyRingPtr ring_;
    Terms terms_;
};

}  // namespace tamer
