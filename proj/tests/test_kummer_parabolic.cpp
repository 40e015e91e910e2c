#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "parabolic_suite.hpp"
#include "tamer/error.hpp"
#include "tamer/kummer.hpp"
#include "tamer/parabolic.hpp"

using namespace tamer;

namespace {

PolyRingPtr plane(std::uint64_t p) { return make_ring(p, {"u", "v"}); }

MultiPoly t_power(const GradedKummerAlgebra& Z, const std::vector<std::uint32_t>& e) {
    auto m = MultiPoly::constant(Z.ring(), 1);
    for (std::size_t i = 0; i < e.size(); ++i) m = m * Z.t(i).pow(e[i]);
    return m;
}

// Random element of Z: R-combination of basis monomials with small coefficients.
MultiPoly random_element(const GradedKummerAlgebra& Z, std::mt19937_64& rng) {
    MultiPoly f(Z.ring());
    const auto p = Z.ring()->characteristic();
    for (const auto& b : Z.basis()) {
        for (int k = 0; k < 2; ++k) {
            auto m = b;
            m[0] = static_cast<std::uint32_t>(rng() % 3);
            m[1] = static_cast<std::uint32_t>(rng() % 2);
            f.add_term(m, rng() % p);
        }
    }
    return f;
}

}  // namespace

TEST_CASE("kummer algebra examples") {
    for (std::uint64_t p : {2u, 3u, 5u}) {
        auto R = plane(p);
        auto u = MultiPoly::variable(R, "u");
        auto Z = kummer_algebra(R, {u}, {static_cast<std::uint32_t>(p)});
        CHECK(Z.rank() == p);
        CHECK(Z.basis().size() == p);
        CHECK(normal_form(Z.t(0).pow(p), Z.presentation()) == Z.lifted_s(0));
        auto cert = etale_certificate(Z);
        CHECK(cert.identity_holds);
        CHECK_FALSE(cert.etale);  // p divides the index
    }
    auto R = plane(5);
    auto u = MultiPoly::variable(R, "u"), v = MultiPoly::variable(R, "v");
    auto Z = kummer_algebra(R, {u, v}, {2, 3});
    CHECK(Z.rank() == 6);
    CHECK(normal_form(Z.t(0).pow(2), Z.presentation()) == Z.lifted_s(0));
    CHECK(normal_form(Z.t(1).pow(3), Z.presentation()) == Z.lifted_s(1));
    CHECK(normal_form(Z.t(0).pow(5) * Z.t(1).pow(4), Z.presentation()) ==
          Z.lifted_s(0) * Z.lifted_s(0) * Z.lifted_s(1) * Z.t(0) * Z.t(1));
    auto cert = etale_certificate(Z);
    CHECK(cert.identity_holds);
    CHECK(cert.etale);
    CHECK(cert.unit_factor == 1);

    // trivial indices give back R
    auto Z1 = kummer_algebra(R, {u, v}, {1, 1});
    CHECK(Z1.rank() == 1);
    CHECK(normal_form(Z1.t(0), Z1.presentation()) == Z1.lifted_s(0));
}

TEST_CASE("kummer algebra rejects degenerate data") {
    auto R = plane(3);
    auto u = MultiPoly::variable(R, "u");
    CHECK_THROWS_AS(kummer_algebra(R, {MultiPoly(R)}, {2}), InputError);
    CHECK_THROWS_AS(kummer_algebra(R, {u}, {0}), InputError);
    CHECK_THROWS_AS(kummer_algebra(R, {u, u}, {2}), InputError);
    auto other = make_ring(5, {"u", "v"});
    CHECK_THROWS_AS(kummer_algebra(R, {MultiPoly::variable(other, "u")}, {2}), InputError);
}

TEST_CASE("kummer algebra: free of rank prod r with degree-zero part R") {
    std::mt19937_64 rng(11);
    for (std::uint64_t p : {2u, 3u, 7u})
        for (std::vector<std::uint32_t> r : {std::vector<std::uint32_t>{2}, {3}, {2, 2}, {2, 3}, {4, 1}}) {
            auto R = plane(p);
            std::vector<MultiPoly> s;
            for (std::size_t i = 0; i < r.size(); ++i)
                s.push_back(i == 0 ? MultiPoly::variable(R, "u") : MultiPoly::variable(R, "v") + MultiPoly::constant(R, 1));
            auto Z = kummer_algebra(R, s, r);
            std::uint64_t prod = 1;
            for (auto x : r) prod *= x;
            REQUIRE(Z.rank() == prod);
            auto basis = Z.basis();
            std::set<std::vector<std::uint32_t>> degrees;
            for (const auto& b : basis) {
                CHECK(normal_form(MultiPoly::monomial(Z.ring(), b), Z.presentation()) ==
                      MultiPoly::monomial(Z.ring(), b));
                degrees.insert(Z.degree(b));
            }
            CHECK(degrees.size() == prod);  // one basis monomial per degree
            for (int trial = 0; trial < 20; ++trial) {
                auto f = random_element(Z, rng), g = random_element(Z, rng);
                auto fg = multiply_mod(f, g, Z.presentation());
                // the product of homogeneous parts is homogeneous of the summed degree
                for (const auto& [df, pf] : Z.homogeneous_parts(f))
                    for (const auto& [dg, pg] : Z.homogeneous_parts(g)) {
                        auto prodfg = multiply_mod(pf, pg, Z.presentation());
                        auto parts = Z.homogeneous_parts(prodfg);
                        CHECK(parts.size() <= 1);
                        for (const auto& [d, _] : parts)
                            for (std::size_t i = 0; i < r.size(); ++i) CHECK(d[i] == (df[i] + dg[i]) % r[i]);
                    }
                // degree-zero part is the base ring: only t^0 appears
                for (const auto& [d, part] : Z.homogeneous_parts(fg)) {
                    bool zero_degree = true;
                    for (auto x : d) zero_degree = zero_degree && x == 0;
                    if (!zero_degree) continue;
                    for (const auto& [m, c] : part.terms())
                        for (std::size_t i = 0; i < r.size(); ++i) CHECK(m[Z.t_index(i)] == 0);
                }
                // reassembling coefficients over the basis recovers the normal form
                MultiPoly back(Z.ring());
                for (const auto& b : basis) {
                    auto coeff = Z.coefficient(fg, Z.degree(b));
                    for (const auto& [m, c] : coeff.terms()) {
                        auto e = b;
                        for (std::size_t k = 0; k < m.size(); ++k) e[k] = m[k];
                        back.add_term(e, c);
                    }
                }
                CHECK(back == fg);
            }
            auto cert = etale_certificate(Z);
            CHECK(cert.identity_holds);
            CHECK(cert.etale == (prod % p != 0));
        }
}

TEST_CASE("finite abelian groups") {
    FiniteAbelianGroup A({2, 3, 4});
    CHECK(A.size() == 24);
    for (std::uint64_t a = 0; a < A.size(); ++a) {
        CHECK(A.index(A.element(a)) == a);
        CHECK(A.add(a, A.neg(a)) == 0);
        for (std::uint64_t b = 0; b < A.size(); ++b) CHECK(A.add(a, b) == A.add(b, a));
    }
    CHECK(A.element(A.generator(2)) == std::vector<std::uint64_t>{0, 0, 1});
    CHECK_THROWS_AS(FiniteAbelianGroup({0}), InputError);
}

TEST_CASE("surjectivity by invariant factors") {
    CHECK(is_surjective({{1}}, {5}));
    CHECK(is_surjective({{2}}, {5}));
    CHECK_FALSE(is_surjective({{2}}, {4}));
    CHECK(is_surjective({{1, 0}, {0, 1}}, {2, 3}));
    CHECK(is_surjective({{1}, {1}}, {2, 3}));   // Z/6 -> Z/2 x Z/3
    CHECK_FALSE(is_surjective({{1}, {1}}, {2, 2}));
    CHECK(is_surjective({{1, 0}, {1, 1}}, {2, 2}));
    // brute force on small targets
    for (std::uint32_t r1 = 1; r1 <= 4; ++r1)
        for (std::uint32_t r2 = 1; r2 <= 4; ++r2)
            for (long a = 0; a < 4; ++a)
                for (long b = 0; b < 4; ++b) {
                    std::set<std::pair<long, long>> image;
                    for (long k = 0; k < static_cast<long>(r1 * r2); ++k) image.insert({(k * a) % r1, (k * b) % r2});
                    CHECK(is_surjective({{a}, {b}}, {r1, r2}) == (image.size() == r1 * r2));
                }
}

TEST_CASE("induced covers") {
    auto R = plane(7);
    auto u = MultiPoly::variable(R, "u"), v = MultiPoly::variable(R, "v");
    for (std::uint32_t r : {2u, 3u, 4u}) {
        auto Z = kummer_algebra(R, {u}, {r});
        // identity: Z itself
        auto id = induced_cover(Z, FiniteAbelianGroup({r}), {{1}});
        CHECK(id.rank() == Z.rank());
        CHECK(refines_grading(id, Z));
        for (std::uint64_t a = 0; a < r; ++a) CHECK(id.degree(a)[0] == a);
        // Z/2r ->> Z/r: each degree occurs twice
        auto dbl = induced_cover(Z, FiniteAbelianGroup({2 * r}), {{1}});
        CHECK(dbl.rank() == 2 * r);
        CHECK(refines_grading(dbl, Z));
        std::vector<int> hits(r, 0);
        for (std::uint64_t a = 0; a < 2 * r; ++a) ++hits[dbl.degree(a)[0]];
        for (auto h : hits) CHECK(h == 2);
        // Z/r x Z/m -> Z/r: w_{(0,1)}^m = 1
        for (std::uint64_t m : {2u, 3u}) {
            auto prod = induced_cover(Z, FiniteAbelianGroup({r, m}), {{1, 0}});
            CHECK(prod.rank() == r * m);
            CHECK(refines_grading(prod, Z));
            auto g = prod.group().generator(1);
            auto w = prod.basis_element(g), acc = prod.basis_element(0);
            for (std::uint64_t k = 0; k < m; ++k) acc = prod.multiply(acc, w);
            CHECK(acc == prod.basis_element(0));
            // w_{(1,0)}^r = u
            auto h = prod.basis_element(prod.group().generator(0));
            acc = prod.basis_element(0);
            for (std::uint64_t k = 0; k < r; ++k) acc = prod.multiply(acc, h);
            auto expect = prod.zero();
            expect[0] = u;
            CHECK(acc == expect);
            prod.check_cocycle();
            CHECK(prod.free_away_from_branch_locus());
            CHECK(prod.presentation().size() == 3);
        }
    }
    auto Z2 = kummer_algebra(R, {u, v}, {2, 3});
    auto c6 = induced_cover(Z2, FiniteAbelianGroup({6}), {{1}, {1}});
    CHECK(refines_grading(c6, Z2));
    CHECK(graded_isomorphic(c6, c6));
    auto c6b = induced_cover(Z2, FiniteAbelianGroup({6}), {{1}, {2}});
    CHECK_FALSE(graded_isomorphic(c6, c6b));
    CHECK(refines_grading(c6b, Z2));

    auto Z4 = kummer_algebra(R, {u}, {4});
    CHECK_THROWS_AS(induced_cover(Z4, FiniteAbelianGroup({4}), {{2}}), InputError);  // not onto
    CHECK_THROWS_AS(induced_cover(Z4, FiniteAbelianGroup({3}), {{1}}), InputError);  // not well defined
}

TEST_CASE("cover algebras are associative, commutative and unital") {
    auto R = plane(3);
    auto u = MultiPoly::variable(R, "u"), v = MultiPoly::variable(R, "v");
    auto Z = kummer_algebra(R, {u, v}, {2, 2});
    auto cover = induced_cover(Z, FiniteAbelianGroup({2, 4}), {{1, 0}, {1, 1}});
    CHECK(cover.check_cocycle() == 8 * 8 * 8);
    std::mt19937_64 rng(5);
    auto random = [&] {
        auto x = cover.zero();
        for (auto& c : x) c = MultiPoly::constant(R, static_cast<std::int64_t>(rng() % 3)) * (rng() % 2 ? u : v);
        return x;
    };
    auto one = cover.basis_element(0);
    for (int k = 0; k < 30; ++k) {
        auto a = random(), b = random(), c = random();
        CHECK(cover.multiply(cover.multiply(a, b), c) == cover.multiply(a, cover.multiply(b, c)));
        CHECK(cover.multiply(a, b) == cover.multiply(b, a));
        CHECK(cover.multiply(one, a) == a);
    }
    // large group: sampled cocycle check
    auto Zb = kummer_algebra(R, {u}, {5});
    auto big = induced_cover(Zb, FiniteAbelianGroup({5, 4, 4}), {{1, 0, 0}});
    CHECK(big.check_cocycle(5000, 3) == 5000);
    CHECK(graded_isomorphic(big, big));
}

TEST_CASE("parabolic weights examples") {
    ParabolicSite one{{3}, {1}, {{0}}};
    auto trivial = parabolic_of(one, {{{0, {0}}}});
    CHECK(weights_at(trivial, 0) == std::vector<std::vector<long>>{{0}});
    CHECK(trivial.degree({0}) == 0);
    CHECK(trivial.degree({1}) == -1);
    CHECK(trivial.degree({3}) == -1);
    CHECK(trivial.degree({4}) == -2);

    ParabolicSite five{{5}, {1}, {{0}}};
    auto b = parabolic_of(five, {{{0, {3}}}});
    CHECK(weights_at(b, 0) == std::vector<std::vector<long>>{{3}});
    CHECK(b.degree({0}) == 0);
    CHECK(b.degree({3}) == 0);
    CHECK(b.degree({4}) == -1);

    // shifts beyond r normalize into the base degree
    auto c = parabolic_of(five, {{{1, {7}}}});
    CHECK(c.pieces()[0].e0 == 2);
    CHECK(c.pieces()[0].w == std::vector<long>{2});
    auto neg = parabolic_of(five, {{{0, {-1}}}});
    CHECK(neg.pieces()[0].e0 == -1);
    CHECK(neg.pieces()[0].w == std::vector<long>{4});

    ParabolicSite two{{2}, {1}, {{0}}};
    auto m = parabolic_of(two, {{{0, {0}}, {0, {1}}, {0, {1}}}});
    CHECK(weights_at(m, 0) == std::vector<std::vector<long>>{{0}, {1}});
    CHECK(jump_length_check(m, {1}, 0).quotient_length == 2);
    CHECK(jump_length_check(m, {0}, 0).quotient_length == 1);
    CHECK(jump_length_check(trivial, {0}, 0).quotient_length == 1);
    CHECK(jump_length_check(trivial, {1}, 0).quotient_length == 0);

    // two branches through one point
    ParabolicSite node{{2, 3}, {1, 1}, {{0, 1}}};
    auto nb = parabolic_of(node, {{{0, {1, 2}}, {0, {1, 0}}}});
    CHECK(weights_at(nb, 0) == std::vector<std::vector<long>>{{1, 0}, {1, 2}});
    CHECK(jump_length_check(nb, {1, 2}, 0).quotient_length == 1);
    CHECK(jump_length_check(nb, {1, 1}, 0).quotient_length == 0);
}

TEST_CASE("parabolic site validation") {
    CHECK_THROWS_AS(parabolic_of(ParabolicSite{{0}, {1}, {{0}}}, {}), InputError);
    CHECK_THROWS_AS(parabolic_of(ParabolicSite{{2}, {0}, {{0}}}, {}), InputError);
    CHECK_THROWS_AS(parabolic_of(ParabolicSite{{2, 2}, {1, 1}, {{0}}}, {}), InputError);
    CHECK_THROWS_AS(parabolic_of(ParabolicSite{{2}, {1}, {{0}, {0}}}, {}), InputError);
    CHECK_THROWS_AS(parabolic_of(ParabolicSite{{2}, {1}, {{0}}}, {{{0, {1, 1}}}}), InputError);
}

TEST_CASE("parabolic invariants: exhaustive small cases and random bundles") {
    auto t = parabolic_suite::run(2024, 500);
    const std::string first = t.failures.empty() ? std::string() : t.failures.front();
    INFO(first);
    CHECK(t.failures.empty());
    CHECK(t.checks > 100000);
}
