#include "tamer/derived.hpp"

#include <map>

#include "tamer/error.hpp"

namespace tamer {

namespace {

using Sparse = std::map<std::uint64_t, std::uint32_t>;

void accumulate(const FiniteField& F, Sparse& m, std::uint64_t key, std::uint32_t c) {
    if (!c) return;
    auto& slot = m[key];
    slot = F.add(slot, c);
    if (!slot) m.erase(key);
}

// c_1^*(b_k) = sum h1 S(h3) (x) h2 S(h4) over Delta^{(3)}(b_k), index i*dim + j.
Sparse commutator_dual(const HopfAlgebra& H, std::size_t k) {
    const auto d = H.dim();
    const auto& F = H.field();
    Sparse out;
    for (const auto& t1 : H.coproduct(k))
        for (const auto& t2 : H.coproduct(t1.j))
            for (const auto& t3 : H.coproduct(t2.j)) {
                // h1 = t1.i, h2 = t2.i, h3 = t3.i, h4 = t3.j
                auto c = F.mul(t1.c, F.mul(t2.c, t3.c));
                for (const auto& s3 : H.antipode_of(t3.i))
                    for (const auto& s4 : H.antipode_of(t3.j)) {
                        auto cs = F.mul(c, F.mul(s3.c, s4.c));
                        for (const auto& m1 : H.product(t1.i, s3.k))
                            for (const auto& m2 : H.product(t2.i, s4.k))
                                accumulate(F, out, static_cast<std::uint64_t>(m1.k) * d + m2.k,
                                           F.mul(cs, F.mul(m1.c, m2.c)));
                    }
            }
    return out;
}

SparseVec to_sparse(const Sparse& m) {
    SparseVec v;
    for (const auto& [k, c] : m) v.emplace(k, c);
    return v;
}

// pi(b_i) in complement coordinates, for every basis vector.
std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> projections(const Subspace& I) {
    const auto n = I.ambient();
    auto comp = I.complement_indices();
    std::vector<std::size_t> slot(n, SIZE_MAX);
    for (std::size_t c = 0; c < comp.size(); ++c) slot[comp[c]] = c;
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        Vec e(n, 0);
        e[i] = 1;
        auto r = I.reduce(e);
        for (std::size_t j = 0; j < n; ++j)
            if (r[j]) out[i].emplace_back(static_cast<std::uint32_t>(slot[j]), r[j]);
    }
    return out;
}

Vec project(const Subspace& I, const Vec& v) {
    auto r = I.reduce(v);
    auto comp = I.complement_indices();
    Vec out(comp.size());
    for (std::size_t c = 0; c < comp.size(); ++c) out[c] = r[comp[c]];
    return out;
}

}  // namespace

CommutatorIdeal commutator_kernel(const HopfAlgebra& H, std::size_t n) {
    if (n == 0) throw InputError("commutator_kernel needs n >= 1");
    const auto d = H.dim();
    const std::size_t cap = n == 1 ? kMaxHopfDim : 16;
    if (d > cap)
        throw BudgetExceeded("dim", "commutator map for n = " + std::to_string(n) + " needs dim <= " +
                                        std::to_string(cap) + ", got " + std::to_string(d));
    long double storage = d;
    for (std::size_t i = 0; i < 2 * n; ++i) storage *= d;
    if (storage > static_cast<long double>(kCommutatorBudget))
        throw BudgetExceeded("dim", "commutator map storage dim^" + std::to_string(2 * n + 1) +
                                        " exceeds budget");
    const auto& F = H.field();
    std::vector<Sparse> c1(d);
    for (std::size_t k = 0; k < d; ++k) c1[k] = commutator_dual(H, k);

    std::vector<SparseVec> columns(d);
    const std::uint64_t block = static_cast<std::uint64_t>(d) * d;
    for (std::size_t k = 0; k < d; ++k) {
        // iterated coproduct Delta^{(n-1)}(b_k) as index tuples
        std::vector<std::pair<std::vector<std::uint32_t>, std::uint32_t>> terms{{{static_cast<std::uint32_t>(k)}, 1}};
        for (std::size_t step = 1; step < n; ++step) {
            decltype(terms) next;
            for (const auto& [idx, c] : terms)
                for (const auto& t : H.coproduct(idx.back())) {
                    auto v = idx;
                    v.back() = t.i;
                    v.push_back(t.j);
                    next.emplace_back(std::move(v), F.mul(c, t.c));
                }
            terms = std::move(next);
        }
        Sparse acc;
        for (const auto& [idx, c] : terms) {
            Sparse cur{{0, c}};
            for (auto i : idx) {
                Sparse next;
                for (const auto& [a, ca] : cur)
                    for (const auto& [b, cb] : c1[i]) accumulate(F, next, a * block + b, F.mul(ca, cb));
                cur = std::move(next);
            }
            for (const auto& [a, ca] : cur) accumulate(F, acc, a, ca);
        }
        columns[k] = to_sparse(acc);
    }
    return {n, kernel_of_columns(F, columns)};
}

namespace {

// I_1, I_2, ... up to n terms, or until two consecutive terms agree.
std::vector<Subspace> build_chain(const HopfAlgebra& H, std::size_t n, bool stop_when_stable) {
    const auto d = H.dim();
    if (d > kMaxChainDim)
        throw BudgetExceeded("dim", "Hopf algebra dimension " + std::to_string(d) + " exceeds " +
                                        std::to_string(kMaxChainDim));
    const auto& F = H.field();
    std::vector<Subspace> chain;
    if (n == 0) return chain;
    {
        std::vector<SparseVec> columns(d);
        for (std::size_t k = 0; k < d; ++k) columns[k] = to_sparse(commutator_dual(H, k));
        chain.push_back(kernel_of_columns(F, columns));
    }
    const auto pi1 = projections(chain[0]);
    const std::uint64_t q1 = chain[0].complement_indices().size();
    while (chain.size() < n) {
        const auto pik = projections(chain.back());
        std::vector<SparseVec> columns(d);
        for (std::size_t k = 0; k < d; ++k) {
            Sparse acc;
            for (const auto& t : H.coproduct(k))
                for (const auto& [a, ca] : pik[t.i])
                    for (const auto& [b, cb] : pi1[t.j])
                        accumulate(F, acc, a * q1 + b, F.mul(t.c, F.mul(ca, cb)));
            columns[k] = to_sparse(acc);
        }
        auto next = kernel_of_columns(F, columns);
        const bool stable = next == chain.back();
        chain.push_back(std::move(next));
        if (stop_when_stable && stable) break;
    }
    return chain;
}

}  // namespace

std::vector<Subspace> commutator_chain(const HopfAlgebra& H, std::size_t n) {
    return build_chain(H, n, false);
}

QuotientHopf quotient_hopf(const HopfAlgebra& H, const Subspace& I) {
    const auto d = H.dim();
    const auto& F = H.field();
    if (I.ambient() != d) throw InputError("ideal lives in the wrong space");
    // Hopf ideal checks
    for (const auto& v : I.basis()) {
        if (H.apply_counit(v) != 0) throw AssertionFailure("ideal not contained in ker(counit)");
        if (!I.contains(H.apply_antipode(v))) throw AssertionFailure("ideal not stable under antipode");
        for (std::size_t j = 0; j < d; ++j)
            if (!I.contains(H.multiply(v, H.basis_vector(j))))
                throw AssertionFailure("subspace is not an ideal");
        auto dv = H.comultiply(v);
        // (pi (x) pi) Delta(v) must vanish
        std::vector<Vec> left(d, Vec(d, 0));
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) left[j][i] = dv[i * d + j];
        std::vector<Vec> half(d);
        for (std::size_t j = 0; j < d; ++j) half[j] = project(I, left[j]);
        const auto q = half.empty() ? 0 : half[0].size();
        for (std::size_t a = 0; a < q; ++a) {
            Vec col(d, 0);
            for (std::size_t j = 0; j < d; ++j) col[j] = half[j][a];
            for (auto x : project(I, col))
                if (x) throw AssertionFailure("ideal is not a coideal");
        }
    }
    const auto comp = I.complement_indices();
    const auto q = comp.size();
    std::vector<std::string> labels;
    std::vector<std::uint32_t> mult(q * q * q, 0), comult(q * q * q, 0), antipode(q * q, 0);
    Vec counit(q, 0);
    for (std::size_t a = 0; a < q; ++a) {
        labels.push_back(H.labels()[comp[a]]);
        counit[a] = H.counit()[comp[a]];
        auto s = project(I, H.apply_antipode(H.basis_vector(comp[a])));
        for (std::size_t b = 0; b < q; ++b) antipode[a * q + b] = s[b];
        for (std::size_t b = 0; b < q; ++b) {
            auto m = project(I, H.multiply(H.basis_vector(comp[a]), H.basis_vector(comp[b])));
            for (std::size_t c = 0; c < q; ++c) mult[(a * q + b) * q + c] = m[c];
        }
    }
    const auto pi = projections(I);
    for (std::size_t a = 0; a < q; ++a)
        for (const auto& t : H.coproduct(comp[a]))
            for (const auto& [x, cx] : pi[t.i])
                for (const auto& [y, cy] : pi[t.j]) {
                    auto& slot = comult[(a * q + x) * q + y];
                    slot = F.add(slot, F.mul(t.c, F.mul(cx, cy)));
                }
    auto unit = project(I, H.unit());
    return {HopfAlgebra(F, labels, mult, unit, comult, counit, antipode), comp};
}

DerivedSubgroup derived_subgroup(const HopfAlgebra& H) {
    const auto d = H.dim();
    if (d > kMaxChainDim)
        throw BudgetExceeded("dim", "Hopf algebra dimension " + std::to_string(d) + " exceeds " +
                                        std::to_string(kMaxChainDim));
    auto chain = build_chain(H, d + 2, true);
    std::size_t n = chain.size() - 1;
    if (chain[n] != chain[n - 1]) throw AssertionFailure("commutator chain failed to stabilize");
    for (std::size_t i = 1; i < chain.size(); ++i)
        if (!chain[i].is_subspace_of(chain[i - 1]))
            throw AssertionFailure("commutator chain is not decreasing at n = " + std::to_string(i));
    std::vector<std::size_t> dims;
    for (std::size_t i = 0; i < n; ++i) dims.push_back(chain[i].dim());
    auto quotient = quotient_hopf(H, chain[n - 1]);
    return {chain[n - 1], n, dims, std::move(quotient)};
}

Abelianization abelianization(const HopfAlgebra& H) {
    const auto d = H.dim();
    const auto& F = H.field();
    auto D = derived_subgroup(H);
    const auto pi = projections(D.ideal);
    const std::uint64_t q = D.quotient.complement.size();
    const auto pi_one = project(D.ideal, H.unit());
    // h -> (id (x) pi) Delta(h) - h (x) pi(1), in H (x) H/I
    std::vector<SparseVec> columns(d);
    for (std::size_t k = 0; k < d; ++k) {
        Sparse acc;
        for (const auto& t : H.coproduct(k))
            for (const auto& [b, cb] : pi[t.j]) accumulate(F, acc, t.i * q + b, F.mul(t.c, cb));
        for (std::size_t b = 0; b < q; ++b) accumulate(F, acc, k * q + b, F.neg(pi_one[b]));
        columns[k] = to_sparse(acc);
    }
    auto K = kernel_of_columns(F, columns);
    const auto m = K.dim();
    const auto& P = K.pivots();
    auto coords = [&](const Vec& v) {
        Vec c(m);
        for (std::size_t i = 0; i < m; ++i) c[i] = v[P[i]];
        Vec back(d, 0);
        for (std::size_t i = 0; i < m; ++i)
            if (c[i])
                for (std::size_t x = 0; x < d; ++x)
                    back[x] = F.add(back[x], F.mul(c[i], K.basis()[i][x]));
        if (back != v) throw AssertionFailure("abelianization subspace is not closed");
        return c;
    };
    std::vector<std::string> labels;
    std::vector<std::uint32_t> mult(m * m * m, 0), comult(m * m * m, 0), antipode(m * m, 0);
    Vec counit(m, 0);
    auto unit = coords(H.unit());
    for (std::size_t a = 0; a < m; ++a) {
        const auto& va = K.basis()[a];
        labels.push_back("v" + std::to_string(a));
        counit[a] = H.apply_counit(va);
        auto s = coords(H.apply_antipode(va));
        for (std::size_t b = 0; b < m; ++b) antipode[a * m + b] = s[b];
        for (std::size_t b = 0; b < m; ++b) {
            auto c = coords(H.multiply(va, K.basis()[b]));
            for (std::size_t x = 0; x < m; ++x) mult[(a * m + b) * m + x] = c[x];
        }
        // Delta(va) in K (x) K: first coordinates along the left factor
        auto dv = H.comultiply(va);
        std::vector<Vec> rows(d, Vec(m, 0));  // rows[i] = coords of the right factor paired with b_i
        for (std::size_t i = 0; i < d; ++i) {
            Vec right(d);
            for (std::size_t j = 0; j < d; ++j) right[j] = dv[i * d + j];
            rows[i] = coords(right);
        }
        for (std::size_t y = 0; y < m; ++y) {
            Vec left(d);
            for (std::size_t i = 0; i < d; ++i) left[i] = rows[i][y];
            auto c = coords(left);
            for (std::size_t x = 0; x < m; ++x) comult[(a * m + x) * m + y] = c[x];
        }
    }
    HopfAlgebra A(F, labels, mult, unit, comult, counit, antipode);
    if (!is_abelian(A)) throw AssertionFailure("abelianization is not cocommutative");
    return {std::move(K), std::move(A), D.stabilization_index};
}

}  // namespace tamer
