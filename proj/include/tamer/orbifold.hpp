#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tamer/kummer.hpp"
#include "tamer/parabolic.hpp"
#include "tamer/snf.hpp"

namespace tamer {

inline constexpr std::uint64_t kTorsionBudget = 1'000'000;

/// Pic of the coarse curve: Z for P1, otherwise Z^f + sum Z/m_j with a degree
/// map on the free generators (torsion has degree 0).
struct CurveData {
    bool p1 = true;
    std::size_t free_rank = 1;
    std::vector<std::uint64_t> torsion;
    std::vector<long> degrees{1};

    std::size_t generators() const noexcept { return free_rank + torsion.size(); }
    bool operator==(const CurveData&) const = default;
};

struct MarkedPoint {
    std::vector<std::size_t> branches;
    bool operator==(const MarkedPoint&) const = default;
};

struct RootStackModel {
    CurveData curve;
    std::vector<MarkedPoint> points;
    /// [O(D_i)] in curve coordinates (free part, then torsion part).
    std::vector<std::vector<long>> classes;
    std::vector<std::uint32_t> r;
    /// Characteristic of the base field; unset means the smallest prime
    /// not dividing any r_i.
    std::optional<std::uint64_t> p;

    /// Throws InputError on malformed data.
    void validate() const;
    std::size_t divisors() const noexcept { return r.size(); }
    long curve_degree(const std::vector<long>& h) const;
    long divisor_degree(std::size_t i) const { return curve_degree(classes.at(i)); }
    std::uint64_t characteristic() const;
    ParabolicSite site() const;
    bool operator==(const RootStackModel&) const = default;
};

/// Pic of the root stack: generators H_1..H_g of the curve then N_1..N_n,
/// relations m_j H_{f+j} = 0 and r_i N_i = [O(D_i)].
class PicRootStack {
public:
    explicit PicRootStack(const RootStackModel& m);

    std::size_t curve_generators() const noexcept { return g_; }
    std::size_t divisors() const noexcept { return n_; }
    const IntMatrix& relations() const noexcept { return relations_; }
    const SmithForm& smith() const noexcept { return smith_; }
    std::size_t free_rank() const noexcept { return free_rank_; }
    /// Invariant factors > 1.
    const std::vector<std::uint64_t>& torsion_orders() const noexcept { return torsion_orders_; }
    /// Generators of the torsion subgroup in (H, N) coordinates.
    const std::vector<std::vector<long>>& torsion_generators() const noexcept { return torsion_generators_; }
    /// Size of the torsion subgroup, saturating at UINT64_MAX.
    std::uint64_t torsion_order() const noexcept;
    /// Element sum_k c_k g_k for the mixed-radix index (first factor fastest).
    std::vector<long> torsion_element(std::uint64_t index) const;
    std::vector<std::uint64_t> torsion_digits(std::uint64_t index) const;
    /// Membership of a coordinate vector in the relation lattice.
    bool is_zero(const std::vector<long>& coords) const;
    /// Structure of the whole group as text, e.g. "Z + Z/2 + Z/2".
    std::string structure() const;

private:
    std::size_t g_ = 0, n_ = 0;
    IntMatrix relations_;
    SmithForm smith_;
    std::size_t free_rank_ = 0;
    std::vector<std::uint64_t> torsion_orders_;
    std::vector<std::vector<long>> torsion_generators_;
};

/// (d_i mod r_i) over the branches of x, where d_i is the N_i coordinate.
std::vector<long> residual_character(const RootStackModel& m, const std::vector<long>& coords, std::size_t x);

/// Degree of a class on the root stack times lcm(r): lcm * (deg h + sum n_i deg D_i / r_i).
long scaled_degree(const RootStackModel& m, const std::vector<long>& coords);

/// Throws AssertionFailure unless every relation has trivial residual
/// character at every point and degree zero.
void check_relations_well_defined(const RootStackModel& m, const PicRootStack& pic);

/// Summand (e, d) of the split object attached to a class: e = deg of the
/// curve part, d = N coordinates.
Summand summand_of(const RootStackModel& m, const std::vector<long>& coords);

struct WeightWitness {
    std::size_t point = 0;
    std::vector<long> l;
    std::vector<long> coords;
    std::uint64_t order = 1;
};

struct WeightsVerdict {
    bool exists = false;
    std::uint64_t torsion_order = 1;
    std::vector<WeightWitness> witnesses;
    std::string certificate;
    std::optional<std::size_t> failing_point;
    std::vector<long> missing;
};

/// Enumerates the torsion subgroup and collects residual characters. Every
/// witness is checked as a parabolic line object of degree zero and finite
/// order. Throws BudgetExceeded("torsion") past `budget` elements.
WeightsVerdict weights_side(const RootStackModel& m, std::uint64_t budget = kTorsionBudget);

struct LocalChart {
    std::size_t point = 0;
    std::vector<std::size_t> branches;
    std::vector<std::uint32_t> r;
    /// Residual characters of the generators of A at the point.
    CharacterMatrix phi;
};

struct TorsorDescription {
    std::uint64_t p = 0;
    FiniteAbelianGroup A{{}};
    /// (H, N) coordinates of the generators of A.
    std::vector<std::vector<long>> generator_coords;
    /// N coordinates of the generators, one row per divisor.
    CharacterMatrix phi;
    CoverAlgebra cover;
    std::vector<LocalChart> charts;
};

struct TorsorVerdict {
    bool exists = false;
    std::optional<TorsorDescription> description;
    std::string certificate;
    std::optional<std::size_t> failing_point;
};

/// Surjectivity of T -> prod Z/r_x at every point via Smith forms; on success
/// A = T and the floor-carry cover over F_p[s_1..s_n]. Throws InputError when
/// p divides some r_i.
TorsorVerdict torsor_side(const RootStackModel& m, std::uint64_t budget = kTorsionBudget);

struct ChartCheck {
    std::size_t point = 0;
    bool unit_rescaling = false;    ///< sigma_j exponents cancel for j off the point
    bool carries_restrict = false;  ///< chart carries are the global ones on I_x
    bool graded_isomorphic = false; ///< against induced_cover(Z_x, A, phi_x)
    bool refines_grading = false;   ///< products agree with normal forms in Z_x
    bool free_away = false;
    bool pass = false;
};

struct TheoremReport {
    bool weights_verdict = false;
    bool torsor_verdict = false;
    bool agree = false;
    std::uint64_t torsion_order = 1;
    std::uint64_t cocycle_triples = 0;
    std::vector<ChartCheck> charts;
    bool structure_weights = true;  ///< O_Y admits every weight tuple at every point
    bool witnesses_ok = true;
    bool pass = false;
    std::string detail;
};

/// Both sides of the criterion plus chart fidelity and the structure-module
/// weights. Discrepancies are reported through `pass`, not thrown.
TheoremReport check_theorem(const RootStackModel& m, std::uint64_t budget = kTorsionBudget);

/// Draw in [0, n) by rejection on the raw 64-bit output.
std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t n);

/// Point count 1-5, r_i in 1-8, curve P1 or Z + Z/m (m <= 12) with random
/// divisor classes; abstract curves sometimes get two-branch points.
RootStackModel random_model(std::uint64_t seed);

struct CampaignFailure {
    std::uint64_t index = 0;
    std::uint64_t model_seed = 0;
    std::string model;
    std::string detail;
};

struct CampaignResult {
    std::uint64_t seed = 0;
    std::uint64_t count = 0;
    std::uint64_t passed = 0;
    std::uint64_t discrepancies = 0;
    std::uint64_t with_cover = 0;
    std::uint64_t charts_checked = 0;
    std::uint64_t budget_skipped = 0;
    std::vector<CampaignFailure> failures;
};

/// Seed of model k in a campaign (splitmix64 of seed + k).
std::uint64_t campaign_model_seed(std::uint64_t seed, std::uint64_t k);

/// Runs check_theorem on `count` random models on `threads` workers; results
/// are merged in order of model serialization.
CampaignResult run_campaign(std::uint64_t seed, std::uint64_t count, unsigned threads = 0,
                            std::uint64_t budget = kTorsionBudget);

}  // namespace tamer
