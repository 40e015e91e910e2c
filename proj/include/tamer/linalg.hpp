#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "tamer/field.hpp"

namespace tamer {

using Vec = std::vector<std::uint32_t>;
using SparseVec = std::unordered_map<std::uint64_t, std::uint32_t>;

/// Dense row-major matrix over a finite field.
class FieldMatrix {
public:
    FieldMatrix(FiniteField field, std::size_t rows, std::size_t cols);
    static FieldMatrix identity(FiniteField field, std::size_t n);
    static FieldMatrix from_rows(FiniteField field, std::size_t cols, const std::vector<Vec>& rows);

    const FiniteField& field() const noexcept { return field_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::uint32_t& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    std::uint32_t at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
    Vec row(std::size_t i) const;
    Vec apply(const Vec& x) const;

    FieldMatrix operator*(const FieldMatrix& o) const;
    FieldMatrix transposed() const;
    bool operator==(const FieldMatrix& o) const;

private:
    FiniteField field_;
    std::size_t rows_, cols_;
    std::vector<std::uint32_t> a_;
};

struct Echelon {
    FieldMatrix reduced;
    std::vector<std::size_t> pivots;
};

/// Reduced row echelon form. Pivot rule: leftmost column with a nonzero
/// entry at or below the current row; the first such row is swapped up.
Echelon rref(FieldMatrix m);
std::size_t rank(const FieldMatrix& m);

/// A subspace of F^n held as its canonical reduced echelon basis.
class Subspace {
public:
    Subspace(FiniteField field, std::size_t ambient);
    static Subspace span(FiniteField field, std::size_t ambient, const std::vector<Vec>& vectors);
    static Subspace whole(FiniteField field, std::size_t ambient);

    const FiniteField& field() const noexcept { return field_; }
    std::size_t ambient() const noexcept { return ambient_; }
    std::size_t dim() const noexcept { return basis_.size(); }
    const std::vector<Vec>& basis() const noexcept { return basis_; }
    const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }
    /// Standard basis indices complementary to the pivots.
    std::vector<std::size_t> complement_indices() const;

    /// v minus its projection along the complement: zero at every pivot.
    Vec reduce(const Vec& v) const;
    bool contains(const Vec& v) const;
    /// Coordinates in basis(); throws AssertionFailure if v is not in the span.
    Vec coordinates(const Vec& v) const;
    bool is_subspace_of(const Subspace& o) const;
    bool operator==(const Subspace& o) const;
    bool operator!=(const Subspace& o) const { return !(*this == o); }
    /// Same vectors viewed over an extension field whose prime subfield codes
    /// agree with this field's.
    Subspace extended_to(const FiniteField& bigger) const;

private:
    FiniteField field_;
    std::size_t ambient_;
    std::vector<Vec> basis_;
    std::vector<std::size_t> pivots_;
};

/// Basis of ker L for L: F^cols -> F^rows, returned canonically as a Subspace.
Subspace kernel_basis(const FieldMatrix& L);

/// Kernel of the linear map F^n -> F^N whose j-th column is `columns[j]`
/// (sparse, indices into F^N). Incremental column elimination; suited to
/// tall maps such as H -> H^{(x)2n}.
Subspace kernel_of_columns(const FiniteField& field, const std::vector<SparseVec>& columns);

}  // namespace tamer
