#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tamer {

/// Divisors D_i with indices r_i and degrees deg D_i on a curve, grouped into
/// marked points by their branches.
struct ParabolicSite {
    std::vector<std::uint32_t> r;
    std::vector<long> divisor_degree;
    /// points[x] = indices i of the branches through x.
    std::vector<std::vector<std::size_t>> points;

    /// Throws InputError unless every r_i >= 1, degrees are positive and
    /// every divisor lies on exactly one point.
    void validate() const;
    std::size_t divisors() const noexcept { return r.size(); }
};

/// One summand S(d) of a split graded module, with base degree e.
struct Summand {
    long e = 0;
    std::vector<long> d;
    bool operator==(const Summand&) const = default;
};

struct GradedModule {
    std::vector<Summand> summands;
};

/// Parabolic line datum normalized so that 0 <= w_i < r_i; e0 = deg E_0.
struct ParabolicPiece {
    long e0 = 0;
    std::vector<long> w;
    auto operator<=>(const ParabolicPiece&) const = default;
};

class ParabolicBundle {
public:
    ParabolicBundle(ParabolicSite site, std::vector<ParabolicPiece> pieces);

    const ParabolicSite& site() const noexcept { return site_; }
    const std::vector<ParabolicPiece>& pieces() const noexcept { return pieces_; }
    std::size_t rank() const noexcept { return pieces_.size(); }

    /// Multiplicity of D_i in the twist of piece k at level l:
    /// E_l = O(e0) (sum_i floor((w_i - l_i)/r_i) D_i).
    std::vector<long> twist(std::size_t k, const std::vector<long>& l) const;
    long piece_degree(std::size_t k, const std::vector<long>& l) const;
    long degree(const std::vector<long>& l) const;
    /// E_{l'} subset of E_l as subsheaves of the generic fiber.
    bool includes(const std::vector<long>& l, const std::vector<long>& lprime) const;

    GradedModule to_module() const;

    bool operator==(const ParabolicBundle& o) const { return pieces_ == o.pieces_; }

private:
    ParabolicSite site_;
    std::vector<ParabolicPiece> pieces_;
};

/// E_{l/r} = pi_*(F (x) N^{-l}) for F = sum S(d_j): degree
/// e + sum_i floor((d_i - l_i)/r_i) deg D_i per summand.
ParabolicBundle parabolic_of(const ParabolicSite& site, const GradedModule& m);

/// Tensor product of split objects: pairwise sums of shifts and degrees.
GradedModule tensor(const GradedModule& a, const GradedModule& b);

/// Weight tuples at point x, over the branches of x in order, sorted.
std::vector<std::vector<long>> weights_at(const ParabolicBundle& b, std::size_t x);

struct JumpReport {
    std::size_t point = 0;
    std::vector<long> l;
    /// Local length of E_l / sum_{i in I_x} E_{l + e_i} at x, per piece.
    std::vector<std::size_t> contributions;
    std::size_t quotient_length = 0;
    /// Pieces admitting l restricted to I_x (mod r) as a weight at x.
    std::size_t weight_count = 0;
    bool pass = false;
};

/// Throws AssertionFailure when the quotient length differs from the number
/// of pieces admitting l as a weight.
JumpReport jump_length_check(const ParabolicBundle& b, const std::vector<long>& l, std::size_t x);

long floor_div(long a, long b) noexcept;

}  // namespace tamer
