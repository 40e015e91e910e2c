#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>
#include <random>
#include <set>

#include "tamer/error.hpp"
#include "tamer/field.hpp"
#include "tamer/linalg.hpp"
#include "tamer/poly.hpp"
#include "tamer/quotient.hpp"
#include "tamer/snf.hpp"

using namespace tamer;

namespace {

MultiPoly var(const PolyRingPtr& R, const char* name) { return MultiPoly::variable(R, name); }
MultiPoly cst(const PolyRingPtr& R, std::int64_t c) { return MultiPoly::constant(R, c); }

MultiPoly random_poly(const PolyRingPtr& R, std::mt19937_64& rng, std::uint32_t max_deg, int terms) {
    MultiPoly f(R);
    const auto p = R->characteristic();
    for (int k = 0; k < terms; ++k) {
        Monomial m(R->nvars(), 0);
        std::uint32_t budget = static_cast<std::uint32_t>(rng() % (max_deg + 1));
        for (std::size_t v = 0; v < m.size() && budget; ++v) {
            auto e = static_cast<std::uint32_t>(rng() % (budget + 1));
            m[v] = e;
            budget -= e;
        }
        f.add_term(m, rng() % p);
    }
    return f;
}

// gcd of all k x k minors
mpz_class determinantal_divisor(const IntMatrix& M, std::size_t k) {
    mpz_class g = 0;
    std::vector<std::size_t> rows(k), cols(k);
    std::function<void(std::size_t, std::size_t)> pick_cols;
    std::function<void(std::size_t, std::size_t)> pick_rows = [&](std::size_t at, std::size_t from) {
        if (at == k) {
            pick_cols(0, 0);
            return;
        }
        for (std::size_t i = from; i < M.rows(); ++i) {
            rows[at] = i;
            pick_rows(at + 1, i + 1);
        }
    };
    pick_cols = [&](std::size_t at, std::size_t from) {
        if (at == k) {
            IntMatrix sub(k, k);
            for (std::size_t a = 0; a < k; ++a)
                for (std::size_t b = 0; b < k; ++b) sub.at(a, b) = M.at(rows[a], cols[b]);
            mpz_class d = sub.determinant();
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
            return;
        }
        for (std::size_t j = from; j < M.cols(); ++j) {
            cols[at] = j;
            pick_cols(at + 1, j + 1);
        }
    };
    pick_rows(0, 0);
    return g;
}

// Order of Z^n / rowspace(M) by breadth-first enumeration of the relation
// lattice modulo N (N annihilates the cokernel). Only for tiny cases.
std::uint64_t enumerate_cokernel(const IntMatrix& M, std::uint64_t N) {
    const auto n = M.cols();
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= N;
    std::vector<char> seen(total, 0);
    auto code = [&](const std::vector<std::uint64_t>& v) {
        std::uint64_t c = 0;
        for (auto x : v) c = c * N + x;
        return c;
    };
    std::vector<std::vector<std::uint64_t>> gens;
    for (std::size_t i = 0; i < M.rows(); ++i) {
        std::vector<std::uint64_t> g(n);
        for (std::size_t j = 0; j < n; ++j) {
            mpz_class r = M.at(i, j) % static_cast<long>(N);
            if (r < 0) r += static_cast<long>(N);
            g[j] = r.get_ui();
        }
        gens.push_back(g);
    }
    std::vector<std::vector<std::uint64_t>> queue{std::vector<std::uint64_t>(n, 0)};
    seen[0] = 1;
    for (std::size_t h = 0; h < queue.size(); ++h)
        for (const auto& g : gens) {
            auto v = queue[h];
            for (std::size_t j = 0; j < n; ++j) v[j] = (v[j] + g[j]) % N;
            if (!seen[code(v)]) {
                seen[code(v)] = 1;
                queue.push_back(v);
            }
        }
    return total / queue.size();
}

}  // namespace

TEST_CASE("prime field axioms") {
    std::mt19937_64 rng(11);
    for (std::uint64_t p : {2u, 3u, 5u, 7u, 101u}) {
        PrimeField F(p);
        auto check = [&](std::uint64_t a, std::uint64_t b, std::uint64_t c) {
            CHECK(F.add(F.add(a, b), c) == F.add(a, F.add(b, c)));
            CHECK(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
            CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
            CHECK(F.sub(F.add(a, b), b) == a);
            if (a) CHECK(F.mul(a, F.inv(a)) == 1);
        };
        if (p <= 7) {
            for (std::uint64_t a = 0; a < p; ++a)
                for (std::uint64_t b = 0; b < p; ++b)
                    for (std::uint64_t c = 0; c < p; ++c) check(a, b, c);
        } else {
            for (int k = 0; k < 2000; ++k) check(rng() % p, rng() % p, rng() % p);
        }
        CHECK_THROWS_AS(F.inv(0), InputError);
    }
    CHECK_THROWS_AS(PrimeField(6), InputError);
}

TEST_CASE("Fp element arithmetic") {
    Fp a(3, 7), b(5, 7);
    CHECK((a + b).residue() == 1);
    CHECK((a - b).residue() == 5);
    CHECK((a * b).residue() == 1);
    CHECK((a / b * b) == a);
    CHECK((-a).residue() == 4);
    CHECK(a.pow(6).residue() == 1);
    CHECK(Fp(-1, 7).residue() == 6);
    CHECK_THROWS_AS(a + Fp(1, 5), InputError);
}

TEST_CASE("quadratic extensions are fields") {
    for (std::uint64_t p : {2u, 3u, 5u, 7u}) {
        auto F = extension_field(quadratic_extension_presentation(p));
        CHECK(F.order() == p * p);
        CHECK(F.degree() == 2);
        for (std::uint32_t a = 1; a < F.order(); ++a) {
            CHECK(F.mul(a, F.inv(a)) == 1);
            CHECK(F.pow(a, F.order() - 1) == 1);
        }
        // prime subfield codes agree with F_p
        for (std::uint32_t a = 0; a < p; ++a)
            for (std::uint32_t b = 0; b < p; ++b) CHECK(F.mul(a, b) == (a * b) % p);
    }
    auto R = make_ring(3, {"w"});
    // w^2 + 1 is irreducible over F_3, w^2 - 1 is not
    CHECK_NOTHROW(extension_field(QuotientPresentation(R, {PowerRule{0, 2, cst(R, -1)}})));
    CHECK_THROWS_AS(extension_field(QuotientPresentation(R, {PowerRule{0, 2, cst(R, 1)}})), InputError);
}

TEST_CASE("degrevlex order") {
    DegRevLexGreater gt;
    CHECK(gt({2, 0}, {0, 1}));   // higher degree first
    CHECK(gt({1, 1, 0}, {1, 0, 1}));  // smaller last exponent wins
    CHECK(gt({0, 2, 0}, {1, 0, 1}));
    CHECK_FALSE(gt({1, 0}, {1, 0}));
    auto R = make_ring(5, {"x", "y"});
    auto f = var(R, "x") * var(R, "y") + var(R, "x").pow(2) + cst(R, 3);
    CHECK(f.terms().begin()->first == Monomial{2, 0});
    CHECK(f.total_degree() == 2);
    CHECK(MultiPoly(R).total_degree() == -1);
}

TEST_CASE("normal form examples") {
    for (std::uint32_t r : {2u, 3u, 5u}) {
        auto R = make_ring(7, {"t", "s"});
        QuotientPresentation Q(R, {PowerRule{0, r, var(R, "s")}});
        CHECK(normal_form(var(R, "t").pow(r), Q) == var(R, "s"));
        CHECK(normal_form(var(R, "t").pow(2 * r + 1), Q) == var(R, "s").pow(2) * var(R, "t"));
    }
    // (a + b t)^2 in A[t]/(t^2 - s)
    auto R = make_ring(5, {"t", "a", "b", "s"});
    QuotientPresentation Q(R, {PowerRule{0, 2, var(R, "s")}});
    auto x = var(R, "a") + var(R, "b") * var(R, "t");
    auto expect = var(R, "a").pow(2) + var(R, "s") * var(R, "b").pow(2) +
                  cst(R, 2) * var(R, "a") * var(R, "b") * var(R, "t");
    CHECK(multiply_mod(x, x, Q) == expect);
    CHECK(normal_form(cst(R, 1), Q) == cst(R, 1));
}

TEST_CASE("unsupported rewrite shapes are rejected") {
    auto R = make_ring(3, {"t", "u", "s"});
    CHECK_THROWS_AS(QuotientPresentation(R, {PowerRule{0, 2, var(R, "t").pow(3)}}), InputError);
    CHECK_THROWS_AS(QuotientPresentation(R, {PowerRule{0, 2, var(R, "s")}, PowerRule{0, 3, var(R, "s")}}),
                    InputError);
    CHECK_THROWS_AS(QuotientPresentation(R, {PowerRule{0, 2, var(R, "u")}, PowerRule{1, 2, var(R, "t")}}),
                    InputError);
    CHECK_THROWS_AS(QuotientPresentation(R, {PowerRule{0, 0, cst(R, 1)}}), InputError);
    CHECK_THROWS_AS(QuotientPresentation(R, {PowerRule{0, 2, var(R, "s")}}, Truncation{{0}, 4}), InputError);
}

TEST_CASE("normal form is a ring homomorphism onto normal forms") {
    std::mt19937_64 rng(5);
    auto R = make_ring(5, {"t1", "t2", "y", "u", "v"});
    QuotientPresentation Q(R,
                           {PowerRule{0, 2, var(R, "u")}, PowerRule{1, 3, var(R, "v") + cst(R, 2)},
                            PowerRule{2, 4, cst(R, 1)}},
                           Truncation{{3, 4}, 6});
    for (int k = 0; k < 60; ++k) {
        auto a = random_poly(R, rng, 7, 6), b = random_poly(R, rng, 7, 6);
        auto na = normal_form(a, Q), nb = normal_form(b, Q);
        CHECK(normal_form(na, Q) == na);
        for (const auto& [m, c] : na.terms()) CHECK_FALSE(Q.is_reducible(m));
        CHECK(normal_form(a * b, Q) == normal_form(na * nb, Q));
        CHECK(normal_form(a + b, Q) == normal_form(na + nb, Q));
    }
}

TEST_CASE("truncated series arithmetic") {
    std::mt19937_64 rng(9);
    auto R = make_ring(3, {"u", "v"});
    const std::uint32_t B = 8;
    for (int k = 0; k < 100; ++k) {
        auto a = random_poly(R, rng, 12, 8), b = random_poly(R, rng, 12, 8);
        auto lhs = (a * b).truncated({0, 1}, B);
        auto rhs = (a.truncated({0, 1}, B) * b.truncated({0, 1}, B)).truncated({0, 1}, B);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("finite algebra tables") {
    auto R = make_ring(3, {"e"});
    FiniteAlgebra A(QuotientPresentation(R, {PowerRule{0, 2, MultiPoly(R)}}));
    CHECK(A.size() == 9);
    CHECK(A.dim() == 2);
    auto e = A.encode(var(R, "e"));
    CHECK(A.mul(e, e) == A.zero());
    CHECK(A.mul(A.one(), e) == e);
    for (std::uint32_t a = 0; a < A.size(); ++a)
        for (std::uint32_t b = 0; b < A.size(); ++b) {
            auto pa = A.decode(a), pb = A.decode(b);
            CHECK(A.decode(A.mul(a, b)) == normal_form(pa * pb, A.presentation()));
            CHECK(A.decode(A.add(a, b)) == pa + pb);
        }
    auto big = make_ring(5, {"x", "y"});
    CHECK_THROWS_AS(FiniteAlgebra(QuotientPresentation(big, {}, Truncation{{0, 1}, 4})), BudgetExceeded);
}

TEST_CASE("rref pivot rule and subspaces") {
    FiniteField F(5);
    auto M = FieldMatrix::from_rows(F, 3, {{0, 2, 4}, {1, 1, 1}, {2, 2, 2}});
    auto E = rref(M);
    CHECK(E.pivots == std::vector<std::size_t>{0, 1});
    CHECK(E.reduced.row(0) == Vec{1, 0, 4});
    CHECK(E.reduced.row(1) == Vec{0, 1, 2});
    CHECK(rank(M) == 2);
    auto S = Subspace::span(F, 3, {{0, 2, 4}, {1, 1, 1}});
    CHECK(S.contains({1, 3, 0}));
    CHECK_FALSE(S.contains({0, 0, 1}));
    CHECK(S.complement_indices() == std::vector<std::size_t>{2});
    CHECK(S.coordinates({2, 1, 0}) == Vec{2, 1});
    CHECK_THROWS_AS(S.coordinates({0, 0, 1}), AssertionFailure);
    CHECK(Subspace::span(F, 3, {{1, 3, 0}, {0, 1, 2}}) == S);
    CHECK(S.is_subspace_of(Subspace::whole(F, 3)));
}

TEST_CASE("kernel basis examples") {
    FiniteField F(7);
    CHECK(kernel_basis(FieldMatrix(F, 3, 3)).dim() == 3);
    // x -> x^p on F_p[x]/(x^p): kills x, ..., x^{p-1}
    for (std::uint64_t p : {2u, 3u, 5u}) {
        FiniteField Fp_(p);
        auto R = make_ring(p, {"x"});
        QuotientPresentation Q(R, {PowerRule{0, static_cast<std::uint32_t>(p), MultiPoly(R)}});
        FieldMatrix L(Fp_, p, p);
        for (std::uint32_t j = 0; j < p; ++j) {
            auto img = power_mod(MultiPoly::monomial(R, {j}), p, Q);
            for (std::uint32_t i = 0; i < p; ++i) L.at(i, j) = static_cast<std::uint32_t>(img.coefficient({i}));
        }
        auto K = kernel_basis(L);
        CHECK(K.dim() == p - 1);
        for (std::uint32_t j = 1; j < p; ++j) {
            Vec e(p, 0);
            e[j] = 1;
            CHECK(K.contains(e));
        }
    }
    // Frobenius on the degree <= B truncation of F_p[u,v]
    for (std::uint64_t p : {2u, 3u, 5u}) {
        FiniteField Fp_(p);
        auto R = make_ring(p, {"u", "v"});
        const std::uint32_t B = 6;
        std::vector<Monomial> src;
        for (std::uint32_t d = 0; d <= B; ++d)
            for (std::uint32_t a = 0; a <= d; ++a) src.push_back({a, d - a});
        std::vector<Monomial> dst;
        for (std::uint32_t d = 0; d <= p * B; ++d)
            for (std::uint32_t a = 0; a <= d; ++a) dst.push_back({a, d - a});
        FieldMatrix L(Fp_, dst.size(), src.size());
        for (std::size_t j = 0; j < src.size(); ++j) {
            auto img = MultiPoly::monomial(R, src[j]).pow(p);
            for (std::size_t i = 0; i < dst.size(); ++i)
                L.at(i, j) = static_cast<std::uint32_t>(img.coefficient(dst[i]));
        }
        CHECK(kernel_basis(L).dim() == 0);
        CHECK(rank(L) == src.size());
    }
}

TEST_CASE("sparse column kernel agrees with dense kernel") {
    std::mt19937_64 rng(3);
    for (std::uint64_t p : {2u, 3u, 7u}) {
        FiniteField F(p);
        for (int k = 0; k < 40; ++k) {
            std::size_t rows = 1 + rng() % 8, cols = 1 + rng() % 8;
            FieldMatrix L(F, rows, cols);
            std::vector<SparseVec> columns(cols);
            for (std::size_t i = 0; i < rows; ++i)
                for (std::size_t j = 0; j < cols; ++j)
                    if (rng() % 3 == 0) {
                        auto c = static_cast<std::uint32_t>(rng() % p);
                        L.at(i, j) = c;
                        if (c) columns[j][i] = c;
                    }
            auto K = kernel_basis(L);
            CHECK(K == kernel_of_columns(F, columns));
            for (const auto& v : K.basis())
                for (auto x : L.apply(v)) CHECK(x == 0);
            CHECK(K.dim() + rank(L) == cols);
        }
    }
}

TEST_CASE("subspace extension of scalars") {
    FiniteField F(3);
    auto big = extension_field(quadratic_extension_presentation(3));
    auto S = Subspace::span(F, 3, {{1, 2, 0}, {0, 0, 1}});
    auto T = S.extended_to(big);
    CHECK(T.dim() == 2);
    CHECK(T.field() == big);
    CHECK(T.contains({1, 2, 5}));
}

TEST_CASE("smith normal form examples") {
    auto s = smith_normal_form(IntMatrix{{2, 0}, {0, 3}});
    CHECK(s.D == IntMatrix{{1, 0}, {0, 6}});
    auto id = smith_normal_form(IntMatrix::identity(3));
    CHECK(id.D == IntMatrix::identity(3));
    CHECK(id.U == IntMatrix::identity(3));
    CHECK(id.V == IntMatrix::identity(3));
    for (long r = 1; r <= 6; ++r) {
        IntMatrix M{{r, -1}};
        auto t = smith_normal_form(M);
        CHECK(t.D == IntMatrix{{1, 0}});
        auto g = cokernel_structure(M);
        CHECK(g.free_rank == 1);
        CHECK(g.torsion.empty());
    }
}

TEST_CASE("smith normal form against determinantal divisors") {
    std::mt19937_64 rng(500);
    int enumerated = 0;
    for (int k = 0; k < 500; ++k) {
        std::size_t m = 1 + rng() % 5, n = 1 + rng() % 5;
        IntMatrix M(m, n);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) M.at(i, j) = static_cast<long>(rng() % 41) - 20;
        auto s = smith_normal_form(M);
        CHECK(s.U * M * s.V == s.D);
        CHECK(s.D.is_diagonal());
        CHECK(abs(s.U.determinant()) == 1);
        CHECK(abs(s.V.determinant()) == 1);
        CHECK(s.V * s.V_inv == IntMatrix::identity(n));
        auto inv = s.invariant_factors();
        for (std::size_t i = 0; i < inv.size(); ++i) {
            CHECK(inv[i] > 0);
            if (i + 1 < inv.size()) CHECK(mpz_divisible_p(inv[i + 1].get_mpz_t(), inv[i].get_mpz_t()));
        }
        // d_1 ... d_k = gcd of k x k minors
        mpz_class prod = 1;
        for (std::size_t k2 = 1; k2 <= std::min(m, n); ++k2) {
            auto dk = determinantal_divisor(M, k2);
            if (k2 <= inv.size()) {
                prod *= inv[k2 - 1];
                CHECK(dk == prod);
            } else {
                CHECK(dk == 0);
            }
        }
        auto g = cokernel_structure(M);
        if (g.free_rank == 0) {
            auto order = g.finite_order();
            if (n <= 2 && order <= 60) {
                CHECK(enumerate_cokernel(M, order.get_ui()) == order.get_ui());
                ++enumerated;
            }
        }
    }
    CHECK(enumerated > 10);
}
