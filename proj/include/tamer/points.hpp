#pragma once

#include <cstdint>
#include <vector>

#include "tamer/finite_group.hpp"
#include "tamer/hopf.hpp"
#include "tamer/quotient.hpp"

namespace tamer {

inline constexpr std::uint64_t kPointsNodeBudget = 50'000'000;

/// G(R): algebra maps H -> R under convolution.
struct PointsGroup {
    AbstractFiniteGroup group;
    /// homs[g][i] = code in R of the image of basis vector b_i.
    std::vector<std::vector<std::uint32_t>> homs;
};

/// Backtracking search over basis images with constraints checked as soon
/// as their entries are assigned. Throws BudgetExceeded("points") past
/// `node_budget` search nodes, InputError if H is not over the prime field
/// of R.
PointsGroup points(const HopfAlgebra& H, const FiniteAlgebra& R,
                   std::uint64_t node_budget = kPointsNodeBudget);

}  // namespace tamer
