#pragma once

#include <cstddef>
#include <vector>

#include "tamer/hopf.hpp"
#include "tamer/linalg.hpp"

namespace tamer {

/// Storage cap for the literal commutator map H -> H^{(x)2n}, counted in
/// coefficients (dim^{2n+1}).
inline constexpr std::size_t kCommutatorBudget = std::size_t{1} << 26;

struct CommutatorIdeal {
    std::size_t n;
    Subspace subspace;
};

/// Kernel of the algebra map dual to (x_1, y_1, ..., x_n, y_n) ->
/// [x_1, y_1] ... [x_n, y_n], assembled from iterated comultiplication,
/// the antipode, a tensor-factor permutation and multiplication. Throws
/// BudgetExceeded("dim") past dim 36 for n = 1, dim 16 for n >= 2, or the
/// storage cap.
CommutatorIdeal commutator_kernel(const HopfAlgebra& H, std::size_t n);

/// I_1, ..., I_n via I_k = ker((pi_{k-1} (x) pi_1) o Delta), where pi_k is
/// the projection H -> H/I_k. Equal to the literal kernels, with storage
/// bounded by dim^3.
std::vector<Subspace> commutator_chain(const HopfAlgebra& H, std::size_t n);

/// H/I on the complement basis of I (non-pivot standard indices).
struct QuotientHopf {
    HopfAlgebra algebra;
    std::vector<std::size_t> complement;
};

/// Throws AssertionFailure unless I is a Hopf ideal.
QuotientHopf quotient_hopf(const HopfAlgebra& H, const Subspace& ideal);

struct DerivedSubgroup {
    Subspace ideal;
    /// First n with I_n = I_{n+1}.
    std::size_t stabilization_index;
    std::vector<std::size_t> chain_dims;
    QuotientHopf quotient;
};

DerivedSubgroup derived_subgroup(const HopfAlgebra& H);

struct Abelianization {
    /// {h : (id (x) pi) Delta(h) = h (x) pi(1)} inside H.
    Subspace subspace;
    /// Restricted structure on the echelon basis of `subspace`.
    HopfAlgebra algebra;
    std::size_t stabilization_index;
};

/// Throws AssertionFailure if the solution space is not a sub-Hopf-algebra.
Abelianization abelianization(const HopfAlgebra& H);

}  // namespace tamer
