// Independent oracles shared by the unit and acceptance suites: group-table
// computations for constant schemes, and points-functor checks over small
// test rings.
#pragma once

#include <algorithm>
#include <set>
#include <vector>

#include "tamer/derived.hpp"
#include "tamer/finite_group.hpp"
#include "tamer/hopf.hpp"
#include "tamer/points.hpp"
#include "tamer/quotient.hpp"

namespace oracle {

using namespace tamer;

/// All commutators xyx^-1y^-1, sorted.
inline std::vector<std::uint32_t> commutator_set(const AbstractFiniteGroup& G) {
    std::set<std::uint32_t> s;
    for (std::uint32_t x = 0; x < G.order(); ++x)
        for (std::uint32_t y = 0; y < G.order(); ++y) s.insert(G.commutator(x, y));
    return {s.begin(), s.end()};
}

/// Subgroup generated by commutators, by closure under the table.
inline std::vector<std::uint32_t> derived_by_table(const AbstractFiniteGroup& G) {
    std::set<std::uint32_t> s{G.identity()};
    auto gens = commutator_set(G);
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<std::uint32_t> cur(s.begin(), s.end());
        for (auto a : cur)
            for (auto g : gens) grew |= s.insert(G.mul(a, g)).second;
    }
    return {s.begin(), s.end()};
}

/// Functions on G vanishing on X, in the idempotent basis e_g.
inline Subspace vanishing_on(const FiniteField& F, std::size_t n, const std::vector<std::uint32_t>& X) {
    std::vector<Vec> vs;
    for (std::uint32_t g = 0; g < n; ++g)
        if (!std::binary_search(X.begin(), X.end(), g)) {
            Vec v(n, 0);
            v[g] = 1;
            vs.push_back(v);
        }
    return Subspace::span(F, n, vs);
}

/// Span of the indicator functions of the cosets of N.
inline Subspace coset_indicators(const FiniteField& F, const AbstractFiniteGroup& G,
                                 const std::vector<std::uint32_t>& N) {
    const auto n = G.order();
    std::vector<Vec> vs;
    std::vector<char> done(n, 0);
    for (std::uint32_t g = 0; g < n; ++g) {
        if (done[g]) continue;
        Vec v(n, 0);
        for (auto h : N) {
            auto x = G.mul(g, h);
            v[x] = 1;
            done[x] = 1;
        }
        vs.push_back(v);
    }
    return Subspace::span(F, n, vs);
}

/// Pullback of O(A) along phi: G -> A, as a subspace of O(G).
inline Subspace pullback(const FiniteField& F, std::size_t n, std::size_t na,
                         const std::vector<std::uint32_t>& phi) {
    std::vector<Vec> vs(na, Vec(n, 0));
    for (std::uint32_t g = 0; g < n; ++g) vs[phi[g]][g] = 1;
    return Subspace::span(F, n, vs);
}

/// Number of grouplike elements (Delta g = g (x) g, eps(g) = 1), by brute force
/// over every vector of H.
inline std::size_t count_grouplikes(const HopfAlgebra& H) {
    const auto d = H.dim();
    const auto q = H.field().order();
    std::size_t count = 0;
    Vec v(d, 0);
    for (;;) {
        if (H.apply_counit(v) == 1) {
            auto dv = H.comultiply(v);
            bool ok = true;
            for (std::size_t i = 0; i < d && ok; ++i)
                for (std::size_t j = 0; j < d && ok; ++j)
                    ok = dv[i * d + j] == H.field().mul(v[i], v[j]);
            if (ok) ++count;
        }
        std::size_t k = 0;
        while (k < d && ++v[k] == q) v[k++] = 0;
        if (k == d) break;
    }
    return count;
}

/// F_p[e]/(e^k).
inline FiniteAlgebra truncated_line(std::uint64_t p, std::uint32_t k) {
    auto R = make_ring(p, {"e"});
    return FiniteAlgebra(QuotientPresentation(R, {PowerRule{0, k, MultiPoly(R)}}));
}

/// F_p[e, f]/(e^2, f^2).
inline FiniteAlgebra square_zero_plane(std::uint64_t p) {
    auto R = make_ring(p, {"e", "f"});
    return FiniteAlgebra(QuotientPresentation(R, {PowerRule{0, 2, MultiPoly(R)}, PowerRule{1, 2, MultiPoly(R)}}));
}

/// F_p itself.
inline FiniteAlgebra prime_ring(std::uint64_t p) {
    auto R = make_ring(p, {"e"});
    return FiniteAlgebra(QuotientPresentation(R, {PowerRule{0, 1, MultiPoly(R)}}));
}

/// f(v) for a point f given by basis images.
inline std::uint32_t evaluate(const FiniteAlgebra& R, const std::vector<std::uint32_t>& f, const Vec& v) {
    std::uint32_t acc = R.zero();
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i]) acc = R.add(acc, R.scale(v[i], f[i]));
    return acc;
}

/// Exactness of 1 -> D -> G -> G^ab on R-points.
struct ExactnessReport {
    std::size_t g_order = 0, d_order = 0, ab_image_kernel = 0, ab_points = 0, d_points = 0;
    bool d_equals_kernel = false;
    bool commutators_in_d = false;
    bool g_abelian = false;
    std::size_t commutator_subgroup_order = 0;
};

inline ExactnessReport exactness(const HopfAlgebra& H, const FiniteAlgebra& R) {
    ExactnessReport rep;
    auto ab = abelianization(H);
    auto der = derived_subgroup(H);
    auto G = points(H, R);
    rep.g_order = G.group.order();
    rep.g_abelian = G.group.is_abelian();
    std::vector<char> in_d(rep.g_order, 0), in_ker(rep.g_order, 0);
    for (std::size_t g = 0; g < rep.g_order; ++g) {
        bool d = true;
        for (const auto& v : der.ideal.basis()) d = d && evaluate(R, G.homs[g], v) == R.zero();
        bool k = true;
        for (const auto& v : ab.subspace.basis())
            k = k && evaluate(R, G.homs[g], v) == R.scale(H.apply_counit(v), R.one());
        in_d[g] = d;
        in_ker[g] = k;
        rep.d_order += d;
        rep.ab_image_kernel += k;
    }
    rep.d_equals_kernel = in_d == in_ker;
    rep.commutators_in_d = true;
    for (std::uint32_t x = 0; x < rep.g_order; ++x)
        for (std::uint32_t y = 0; y < rep.g_order; ++y)
            if (!in_d[G.group.commutator(x, y)]) rep.commutators_in_d = false;
    rep.commutator_subgroup_order = G.group.commutator_subgroup().size();
    rep.ab_points = points(ab.algebra, R).group.order();
    rep.d_points = points(der.quotient.algebra, R).group.order();
    return rep;
}

}  // namespace oracle
