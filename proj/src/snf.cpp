#include "tamer/snf.hpp"

#include <sstream>

#include "tamer/error.hpp"

namespace tamer {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    for (const auto& r : rows) {
        if (r.size() != cols_) throw InputError("ragged integer matrix");
        for (long v : r) a_.emplace_back(v);
    }
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::diagonal(const std::vector<long>& d) {
    IntMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m.at(i, i) = d[i];
    return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw InputError("matrix dimensions do not match");
    IntMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            if (sgn(at(i, k)) == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, j) += at(i, k) * o.at(k, j);
        }
    return r;
}

bool IntMatrix::operator==(const IntMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

bool IntMatrix::is_diagonal() const {
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (i != j && sgn(at(i, j)) != 0) return false;
    return true;
}

mpz_class IntMatrix::determinant() const {
    if (rows_ != cols_) throw InputError("determinant of a non-square matrix");
    const auto n = rows_;
    if (n == 0) return 1;
    // Fraction-free Bareiss elimination.
    IntMatrix m = *this;
    mpz_class prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (sgn(m.at(k, k)) == 0) {
            std::size_t s = k + 1;
            while (s < n && sgn(m.at(s, k)) == 0) ++s;
            if (s == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(s, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                mpz_class v = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                m.at(i, j) = v;
            }
        prev = m.at(k, k);
    }
    return sign * m.at(n - 1, n - 1);
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << at(i, j).get_str();
        os << "]";
    }
    os << "]";
    return os.str();
}

std::vector<mpz_class> SmithForm::invariant_factors() const {
    std::vector<mpz_class> out;
    for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i)
        if (sgn(D.at(i, i)) != 0) out.push_back(D.at(i, i));
    return out;
}

std::size_t SmithForm::rank() const { return invariant_factors().size(); }

namespace {

struct SnfState {
    IntMatrix D, U, V, Vi;

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < D.cols(); ++j) std::swap(D.at(a, j), D.at(b, j));
        for (std::size_t j = 0; j < U.cols(); ++j) std::swap(U.at(a, j), U.at(b, j));
    }
    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < D.rows(); ++i) std::swap(D.at(i, a), D.at(i, b));
        for (std::size_t i = 0; i < V.rows(); ++i) std::swap(V.at(i, a), V.at(i, b));
        for (std::size_t j = 0; j < Vi.cols(); ++j) std::swap(Vi.at(a, j), Vi.at(b, j));
    }
    // row_dst += q * row_src
    void add_row(std::size_t dst, std::size_t src, const mpz_class& q) {
        for (std::size_t j = 0; j < D.cols(); ++j) D.at(dst, j) += q * D.at(src, j);
        for (std::size_t j = 0; j < U.cols(); ++j) U.at(dst, j) += q * U.at(src, j);
    }
    // col_dst += q * col_src; V^{-1} gets the inverse row operation
    void add_col(std::size_t dst, std::size_t src, const mpz_class& q) {
        for (std::size_t i = 0; i < D.rows(); ++i) D.at(i, dst) += q * D.at(i, src);
        for (std::size_t i = 0; i < V.rows(); ++i) V.at(i, dst) += q * V.at(i, src);
        for (std::size_t j = 0; j < Vi.cols(); ++j) Vi.at(src, j) -= q * Vi.at(dst, j);
    }
    void negate_row(std::size_t r) {
        for (std::size_t j = 0; j < D.cols(); ++j) D.at(r, j) = -D.at(r, j);
        for (std::size_t j = 0; j < U.cols(); ++j) U.at(r, j) = -U.at(r, j);
    }

    bool select_pivot(std::size_t t) {
        bool found = false;
        std::size_t bi = 0, bj = 0;
        mpz_class best;
        for (std::size_t i = t; i < D.rows(); ++i)
            for (std::size_t j = t; j < D.cols(); ++j) {
                if (sgn(D.at(i, j)) == 0) continue;
                mpz_class a = abs(D.at(i, j));
                if (!found || a < best) {
                    found = true;
                    best = a;
                    bi = i;
                    bj = j;
                }
            }
        if (!found) return false;
        swap_rows(t, bi);
        swap_cols(t, bj);
        return true;
    }
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& M) {
    const auto m = M.rows(), n = M.cols();
    SnfState s{M, IntMatrix::identity(m), IntMatrix::identity(n), IntMatrix::identity(n)};
    for (std::size_t t = 0; t < std::min(m, n); ++t) {
        if (!s.select_pivot(t)) break;
        for (;;) {
            bool clean = true;
            mpz_class q;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (sgn(s.D.at(i, t)) == 0) continue;
                mpz_tdiv_q(q.get_mpz_t(), s.D.at(i, t).get_mpz_t(), s.D.at(t, t).get_mpz_t());
                s.add_row(i, t, -q);
                if (sgn(s.D.at(i, t)) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (sgn(s.D.at(t, j)) == 0) continue;
                mpz_tdiv_q(q.get_mpz_t(), s.D.at(t, j).get_mpz_t(), s.D.at(t, t).get_mpz_t());
                s.add_col(j, t, -q);
                if (sgn(s.D.at(t, j)) != 0) clean = false;
            }
            if (!clean) {
                s.select_pivot(t);
                continue;
            }
            bool divides = true;
            for (std::size_t i = t + 1; i < m && divides; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (!mpz_divisible_p(s.D.at(i, j).get_mpz_t(), s.D.at(t, t).get_mpz_t())) {
                        s.add_row(t, i, 1);
                        divides = false;
                        break;
                    }
            if (divides) break;
            s.select_pivot(t);
        }
        if (sgn(s.D.at(t, t)) < 0) s.negate_row(t);
    }
    return SmithForm{std::move(s.D), std::move(s.U), std::move(s.V), std::move(s.Vi)};
}

mpz_class AbelianGroupStructure::finite_order() const {
    if (free_rank) return 0;
    mpz_class o = 1;
    for (const auto& t : torsion) o *= t;
    return o;
}

AbelianGroupStructure cokernel_structure(const IntMatrix& relations) {
    auto snf = smith_normal_form(relations);
    AbelianGroupStructure g;
    auto inv = snf.invariant_factors();
    g.free_rank = relations.cols() - inv.size();
    for (const auto& d : inv)
        if (d > 1) g.torsion.push_back(d);
    return g;
}

}  // namespace tamer
