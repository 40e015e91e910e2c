#include "tamer/linalg.hpp"

#include <map>

#include "tamer/error.hpp"

namespace tamer {

FieldMatrix::FieldMatrix(FiniteField field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

FieldMatrix FieldMatrix::identity(FiniteField field, std::size_t n) {
    FieldMatrix m(std::move(field), n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

FieldMatrix FieldMatrix::from_rows(FiniteField field, std::size_t cols, const std::vector<Vec>& rows) {
    FieldMatrix m(std::move(field), rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw InputError("row has wrong length");
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

Vec FieldMatrix::row(std::size_t i) const {
    return Vec(a_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
               a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

Vec FieldMatrix::apply(const Vec& x) const {
    if (x.size() != cols_) throw InputError("vector has wrong length");
    Vec y(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
        std::uint32_t acc = 0;
        for (std::size_t j = 0; j < cols_; ++j)
            if (x[j] && at(i, j)) acc = field_.add(acc, field_.mul(at(i, j), x[j]));
        y[i] = acc;
    }
    return y;
}

FieldMatrix FieldMatrix::operator*(const FieldMatrix& o) const {
    if (cols_ != o.rows_) throw InputError("matrix dimensions do not match");
    FieldMatrix r(field_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            auto a = at(i, k);
            if (!a) continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                if (o.at(k, j)) r.at(i, j) = field_.add(r.at(i, j), field_.mul(a, o.at(k, j)));
        }
    return r;
}

FieldMatrix FieldMatrix::transposed() const {
    FieldMatrix r(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

bool FieldMatrix::operator==(const FieldMatrix& o) const {
    return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

Echelon rref(FieldMatrix m) {
    const auto& F = m.field();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t sel = r;
        while (sel < m.rows() && m.at(sel, c) == 0) ++sel;
        if (sel == m.rows()) continue;
        if (sel != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(sel, j), m.at(r, j));
        auto inv = F.inv(m.at(r, c));
        for (std::size_t j = c; j < m.cols(); ++j) m.at(r, j) = F.mul(m.at(r, j), inv);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m.at(i, c) == 0) continue;
            auto f = m.at(i, c);
            for (std::size_t j = c; j < m.cols(); ++j)
                if (m.at(r, j)) m.at(i, j) = F.sub(m.at(i, j), F.mul(f, m.at(r, j)));
        }
        pivots.push_back(c);
        ++r;
    }
    return Echelon{std::move(m), std::move(pivots)};
}

std::size_t rank(const FieldMatrix& m) { return rref(m).pivots.size(); }

Subspace::Subspace(FiniteField field, std::size_t ambient)
    : field_(std::move(field)), ambient_(ambient) {}

Subspace Subspace::span(FiniteField field, std::size_t ambient, const std::vector<Vec>& vectors) {
    Subspace s(field, ambient);
    if (vectors.empty()) return s;
    auto e = rref(FieldMatrix::from_rows(field, ambient, vectors));
    for (std::size_t i = 0; i < e.pivots.size(); ++i) s.basis_.push_back(e.reduced.row(i));
    s.pivots_ = std::move(e.pivots);
    return s;
}

Subspace Subspace::whole(FiniteField field, std::size_t ambient) {
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < ambient; ++i) {
        Vec v(ambient, 0);
        v[i] = 1;
        rows.push_back(std::move(v));
    }
    return span(std::move(field), ambient, rows);
}

std::vector<std::size_t> Subspace::complement_indices() const {
    std::vector<std::size_t> out;
    std::size_t k = 0;
    for (std::size_t j = 0; j < ambient_; ++j) {
        if (k < pivots_.size() && pivots_[k] == j) {
            ++k;
            continue;
        }
        out.push_back(j);
    }
    return out;
}

Vec Subspace::reduce(const Vec& v) const {
    if (v.size() != ambient_) throw InputError("vector has wrong length");
    Vec r = v;
    for (std::size_t k = 0; k < basis_.size(); ++k) {
        auto f = r[pivots_[k]];
        if (!f) continue;
        for (std::size_t j = 0; j < ambient_; ++j)
            if (basis_[k][j]) r[j] = field_.sub(r[j], field_.mul(f, basis_[k][j]));
    }
    return r;
}

bool Subspace::contains(const Vec& v) const {
    for (auto x : reduce(v))
        if (x) return false;
    return true;
}

Vec Subspace::coordinates(const Vec& v) const {
    if (!contains(v)) throw AssertionFailure("vector is not in the subspace");
    Vec c(basis_.size());
    for (std::size_t k = 0; k < basis_.size(); ++k) c[k] = v[pivots_[k]];
    return c;
}

bool Subspace::is_subspace_of(const Subspace& o) const {
    for (const auto& b : basis_)
        if (!o.contains(b)) return false;
    return true;
}

bool Subspace::operator==(const Subspace& o) const {
    return ambient_ == o.ambient_ && field_ == o.field_ && basis_ == o.basis_;
}

Subspace Subspace::extended_to(const FiniteField& bigger) const {
    if (bigger.characteristic() != field_.characteristic() || !field_.is_prime_field())
        throw InputError("can only extend scalars from the prime field");
    Subspace s(bigger, ambient_);
    s.basis_ = basis_;
    s.pivots_ = pivots_;
    return s;
}

Subspace kernel_basis(const FieldMatrix& L) {
    auto e = rref(L);
    const auto& F = L.field();
    std::vector<bool> is_pivot(L.cols(), false);
    for (auto c : e.pivots) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (std::size_t free = 0; free < L.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vec v(L.cols(), 0);
        v[free] = 1;
        for (std::size_t k = 0; k < e.pivots.size(); ++k)
            v[e.pivots[k]] = F.neg(e.reduced.at(k, free));
        basis.push_back(std::move(v));
    }
    return Subspace::span(F, L.cols(), basis);
}

Subspace kernel_of_columns(const FiniteField& field, const std::vector<SparseVec>& columns) {
    const auto n = columns.size();
    const auto& F = field;
    struct Pivot {
        SparseVec col;
        Vec combo;
    };
    // keyed by the smallest row index present in the normalized column
    std::map<std::uint64_t, Pivot> pivots;
    std::vector<Vec> kernel;
    for (std::size_t j = 0; j < n; ++j) {
        SparseVec col = columns[j];
        Vec combo(n, 0);
        combo[j] = 1;
        for (;;) {
            for (auto it = col.begin(); it != col.end();)
                it = it->second == 0 ? col.erase(it) : std::next(it);
            if (col.empty()) break;
            std::uint64_t lead = UINT64_MAX;
            for (const auto& [i, c] : col) lead = std::min(lead, i);
            auto pit = pivots.find(lead);
            if (pit == pivots.end()) {
                auto inv = F.inv(col[lead]);
                for (auto& [i, c] : col) c = F.mul(c, inv);
                for (auto& c : combo) c = F.mul(c, inv);
                pivots.emplace(lead, Pivot{std::move(col), std::move(combo)});
                col.clear();
                combo.clear();
                break;
            }
            auto f = col[lead];
            for (const auto& [i, c] : pit->second.col) {
                auto& slot = col[i];
                slot = F.sub(slot, F.mul(f, c));
            }
            for (std::size_t k = 0; k < n; ++k)
                if (pit->second.combo[k]) combo[k] = F.sub(combo[k], F.mul(f, pit->second.combo[k]));
        }
        if (!combo.empty()) kernel.push_back(std::move(combo));
    }
    return Subspace::span(field, n, kernel);
}

}  // namespace tamer
