#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace tamer {

/// Rectangular matrix of arbitrary-precision integers.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows);
    static IntMatrix identity(std::size_t n);
    static IntMatrix diagonal(const std::vector<long>& d);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    mpz_class& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const mpz_class& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    IntMatrix operator*(const IntMatrix& o) const;
    bool operator==(const IntMatrix& o) const;
    bool is_diagonal() const;
    mpz_class determinant() const;
    std::string to_string() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<mpz_class> a_;
};

struct SmithForm {
    IntMatrix D;      ///< diagonal, d_1 | d_2 | ..., nonnegative
    IntMatrix U;      ///< unimodular rows x rows
    IntMatrix V;      ///< unimodular cols x cols
    IntMatrix V_inv;  ///< inverse of V
    /// Nonzero diagonal entries, in order.
    std::vector<mpz_class> invariant_factors() const;
    std::size_t rank() const;
};

/// U * M * V = D. Pivot: nonzero entry of least absolute value in the active
/// block, ties to the lowest row index then the lowest column index.
SmithForm smith_normal_form(const IntMatrix& M);

/// The finitely generated abelian group Z^cols / (row space of M).
struct AbelianGroupStructure {
    std::size_t free_rank = 0;
    std::vector<mpz_class> torsion;  ///< invariant factors > 1
    /// Order of the cokernel when finite, 0 otherwise.
    mpz_class finite_order() const;
};

AbelianGroupStructure cokernel_structure(const IntMatrix& relations);

}  // namespace tamer
