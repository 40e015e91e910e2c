#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>

#include "constructors.hpp"
#include "oracles.hpp"
#include "tamer/derived.hpp"
#include "tamer/error.hpp"
#include "tamer/hopf.hpp"
#include "tamer/points.hpp"

using namespace tamer;

namespace {

std::vector<constructors::Case> constructors_235() { return constructors::all({2, 3, 5}); }

}  // namespace

TEST_CASE("constructor dimensions and axioms") {
    for (const auto& c : constructors_235()) {
        auto H = build(c.desc, FiniteField(c.p));
        CAPTURE(c.desc.describe());
        CAPTURE(c.p);
        CHECK(H.dim() == c.desc.order());
        auto rep = check_axioms(H);
        CHECK_MESSAGE(rep.all_pass(), rep.failures());
    }
    CHECK(build(alpha_semidirect_mu(7), FiniteField(7)).dim() == 49);
    CHECK(build(mu_semidirect_z2(7), FiniteField(7)).dim() == 14);
}

TEST_CASE("mu(p) is x^p = 1 with x grouplike") {
    auto H = build(mu(5), FiniteField(5));
    auto x = H.basis_vector(1);
    Vec acc = H.unit();
    for (int k = 0; k < 5; ++k) acc = H.multiply(acc, x);
    CHECK(acc == H.unit());
    auto dx = H.comultiply(x);
    CHECK(dx[1 * 5 + 1] == 1);
    CHECK(std::accumulate(dx.begin(), dx.end(), 0u) == 1);
}

TEST_CASE("constructor rejections") {
    CHECK_THROWS_AS(build(alpha(3), FiniteField(5)), InputError);
    ActionDesc bad;
    bad.kind = ActionDesc::Kind::Exponents;
    bad.values = {1, 2};  // 2 * 2 != 1 mod 5
    CHECK_THROWS_AS(build(semidirect(mu(5), constant("C2"), bad), FiniteField(5)), InputError);
    ActionDesc scal;
    scal.kind = ActionDesc::Kind::Scalars;
    scal.values = {1, 2};
    CHECK_THROWS_AS(build(semidirect(alpha(5), constant("C2"), scal), FiniteField(5)), InputError);
    ActionDesc w;
    w.kind = ActionDesc::Kind::Weight;
    w.weight = 1;
    CHECK_THROWS_AS(build(semidirect(alpha(3), constant("C3"), w), FiniteField(3)), InputError);
    CHECK_THROWS_AS(build(constant("S5"), FiniteField(2)), Error);
}

TEST_CASE("points functor examples") {
    for (std::uint64_t p : {3u, 5u, 7u, 11u})
        for (std::uint64_t n : {1u, 2u, 3u, 4u, 5u, 6u}) {
            auto G = points(build(mu(n), FiniteField(p)), oracle::prime_ring(p)).group;
            CHECK(G.order() == std::gcd(n, p - 1));
            CHECK(G.is_abelian());
        }
    for (std::uint64_t p : {2u, 3u, 5u})
        CHECK(points(build(alpha(p), FiniteField(p)), oracle::prime_ring(p)).group.order() == 1);
    auto S3 = points(build(constant("S3"), FiniteField(5)), oracle::prime_ring(5)).group;
    CHECK(S3.order() == 6);
    CHECK(S3.order_profile() == groups::by_name("S3").order_profile());
    // alpha_p over F_p[e]/(e^2) is (e) under addition
    auto A = points(build(alpha(3), FiniteField(3)), oracle::truncated_line(3, 2)).group;
    CHECK(A.order() == 3);
}

TEST_CASE("points budget") {
    auto H = build(constant("C2xC2xC2"), FiniteField(3));
    CHECK_THROWS_AS(points(H, oracle::truncated_line(3, 3), 100), BudgetExceeded);
}

TEST_CASE("commutator kernel examples") {
    FiniteField F(5);
    for (std::uint64_t n : {2u, 3u, 5u}) {
        auto H = build(mu(n), F);
        auto I = commutator_kernel(H, 1).subspace;
        CHECK(I.dim() == n - 1);
        for (const auto& v : I.basis()) CHECK(H.apply_counit(v) == 0);
    }
    auto S3 = groups::by_name("S3");
    auto I = commutator_kernel(constant_hopf(S3, F), 1).subspace;
    CHECK(I.dim() == 3);
    CHECK(I == oracle::vanishing_on(F, 6, S3.commutator_subgroup()));
    auto Q8 = groups::by_name("Q8");
    auto J = commutator_kernel(constant_hopf(Q8, F), 1).subspace;
    CHECK(J.dim() == 6);
    CHECK(J == oracle::vanishing_on(F, 8, Q8.commutator_subgroup()));
    CHECK_THROWS_AS(commutator_kernel(constant_hopf(S3, F), 0), InputError);
    CHECK_THROWS_AS(commutator_kernel(build(constant("S4"), F), 2), BudgetExceeded);
}

TEST_CASE("literal and factored commutator kernels agree") {
    for (const auto& c : constructors_235()) {
        auto H = build(c.desc, FiniteField(c.p));
        if (H.dim() > 16) continue;
        CAPTURE(c.desc.describe());
        auto chain = commutator_chain(H, 3);
        for (std::size_t n = 1; n <= 3; ++n) {
            try {
                CHECK(commutator_kernel(H, n).subspace == chain[n - 1]);
            } catch (const BudgetExceeded&) {
                CHECK(n == 3);
            }
        }
    }
}

TEST_CASE("commutator chain decreases, consists of ideals, stabilizes early") {
    for (const auto& c : constructors_235()) {
        auto H = build(c.desc, FiniteField(c.p));
        CAPTURE(c.desc.describe());
        auto chain = commutator_chain(H, 4);
        for (std::size_t n = 0; n < chain.size(); ++n) {
            if (n) CHECK(chain[n].is_subspace_of(chain[n - 1]));
            for (const auto& v : chain[n].basis())
                for (std::size_t j = 0; j < H.dim(); ++j) CHECK(chain[n].contains(H.multiply(v, H.basis_vector(j))));
        }
        auto D = derived_subgroup(H);
        CHECK(D.stabilization_index <= 3);
        CHECK(D.ideal == chain[D.stabilization_index - 1]);
    }
}

TEST_CASE("derived subgroup examples") {
    FiniteField F(5);
    for (std::uint64_t n : {2u, 4u}) {
        auto D = derived_subgroup(build(mu(n), F));
        CHECK(D.quotient.algebra.dim() == 1);
        CHECK(D.ideal.dim() == n - 1);
    }
    auto D = derived_subgroup(build(constant("S3"), F));
    CHECK(D.quotient.algebra.dim() == 3);
    CHECK(check_axioms(D.quotient.algebra).all_pass());
    for (std::uint64_t p : {3u, 5u, 7u}) {
        auto H = build(mu_semidirect_z2(p), FiniteField(p));
        auto Dp = derived_subgroup(H);
        CHECK(Dp.quotient.algebra.dim() == p);
        CHECK(check_axioms(Dp.quotient.algebra).all_pass());
    }
}

TEST_CASE("mu_p x| Z/2 over a field containing p-th roots of unity") {
    // F_7 contains mu_3, so G(F_7) = S_3 and D(F_7) = A_3
    auto H = build(mu_semidirect_z2(3), FiniteField(7));
    auto R = oracle::prime_ring(7);
    auto G = points(H, R).group;
    CHECK(G.order() == 6);
    CHECK_FALSE(G.is_abelian());
    auto D = derived_subgroup(H);
    CHECK(points(D.quotient.algebra, R).group.order() == G.commutator_subgroup().size());
    auto A = abelianization(H);
    CHECK(A.algebra.dim() == 2);
    CHECK(points(A.algebra, R).group.order() == 2);
}

TEST_CASE("abelianization examples") {
    FiniteField F(5);
    auto H = build(mu(4), F);
    auto A = abelianization(H);
    CHECK(A.algebra.dim() == 4);
    CHECK(A.subspace == Subspace::whole(F, 4));
    auto S3 = abelianization(build(constant("S3"), F));
    CHECK(S3.algebra.dim() == 2);
    CHECK(is_abelian(S3.algebra));
    CHECK(check_axioms(S3.algebra).all_pass());
    for (std::uint64_t p : {3u, 5u}) {
        auto G = abelianization(build(alpha_semidirect_mu(p), FiniteField(p)));
        CHECK(G.algebra.dim() == p);
        CHECK(oracle::count_grouplikes(G.algebra) == p);  // diagonalizable of order p: mu_p
    }
}

TEST_CASE("is_abelian examples") {
    FiniteField F(3);
    CHECK(is_abelian(build(mu(4), F)));
    CHECK_FALSE(is_abelian(build(constant("S3"), F)));
    CHECK_FALSE(is_abelian(build(mu_semidirect_z2(3), F)));
    CHECK_FALSE(is_abelian(build(alpha_semidirect_mu(3), F)));
    CHECK(is_abelian(build(alpha(3), F)));
}

TEST_CASE("constant groups match the table oracle") {
    FiniteField F(7);
    for (const char* name : {"S3", "Q8", "D4", "A4", "C2xC2", "Dic3", "C3xS3"}) {
        auto G = groups::by_name(name);
        auto H = constant_hopf(G, F);
        CAPTURE(name);
        auto D = derived_subgroup(H);
        auto derived = oracle::derived_by_table(G);
        CHECK(D.ideal == oracle::vanishing_on(F, G.order(), derived));
        CHECK(D.quotient.algebra.dim() == derived.size());
        auto A = abelianization(H);
        CHECK(A.subspace == oracle::coset_indicators(F, G, derived));
        CHECK(A.algebra.dim() * derived.size() == G.order());
    }
}

TEST_CASE("universal property of the abelianization") {
    FiniteField F(5);
    std::vector<AbstractFiniteGroup> targets;
    for (const char* a : {"C2", "C3", "C4", "C2xC2", "C6", "C8", "C2xC4", "C2xC2xC2"})
        targets.push_back(groups::by_name(a));
    for (const char* name : {"S3", "Q8", "D4", "C2xC2", "A4"}) {
        auto G = groups::by_name(name);
        auto A = abelianization(constant_hopf(G, F));
        for (const auto& T : targets)
            for (const auto& phi : homomorphisms(G, T))
                CHECK(oracle::pullback(F, G.order(), T.order(), phi).is_subspace_of(A.subspace));
    }
}

TEST_CASE("base change of commutator kernels") {
    for (const auto& c : constructors_235()) {
        auto H = build(c.desc, FiniteField(c.p));
        if (H.dim() > 12) continue;
        CAPTURE(c.desc.describe());
        auto big = extension_field(quadratic_extension_presentation(c.p));
        auto Hb = base_change(H, big);
        auto small = commutator_chain(H, 3);
        auto large = commutator_chain(Hb, 3);
        for (std::size_t n = 0; n < 3; ++n) CHECK(small[n].extended_to(big) == large[n]);
    }
}

TEST_CASE("quotient by a non-ideal is rejected") {
    FiniteField F(3);
    auto H = build(constant("C3"), F);
    auto S = Subspace::span(F, 3, {{1, 1, 0}});
    CHECK_THROWS_AS(quotient_hopf(H, S), AssertionFailure);
}

TEST_CASE("points of alpha_p x| mu_p over F_p[e]/(e^3)") {
    // alpha_p(R) = (e) and mu_p(R) = 1 + (e), each of order p^2
    for (std::uint64_t p : {3u, 5u, 7u}) {
        auto G = points(build(alpha_semidirect_mu(p), FiniteField(p)), oracle::truncated_line(p, 3)).group;
        CHECK(G.order() == p * p * p * p);
        CHECK_FALSE(G.is_abelian());
        auto M = points(build(mu(p), FiniteField(p)), oracle::truncated_line(p, 3)).group;
        CHECK(M.order() == p * p);
    }
}
