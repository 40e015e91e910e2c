#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "orbifold_oracles.hpp"
#include "tamer/error.hpp"
#include "tamer/json_io.hpp"
#include "tamer/orbifold.hpp"

using namespace tamer;
using orbifold_oracle::p1_model;

namespace {

std::vector<long> n_class(const RootStackModel& m, std::vector<long> n) {
    std::vector<long> c(m.curve.generators(), 0);
    c.insert(c.end(), n.begin(), n.end());
    return c;
}

RootStackModel abstract_model(std::uint64_t torsion, long degree, std::vector<std::vector<long>> classes,
                              std::vector<MarkedPoint> points, std::vector<std::uint32_t> r) {
    RootStackModel m;
    m.curve.p1 = false;
    m.curve.free_rank = 1;
    m.curve.degrees = {degree};
    m.curve.torsion = {torsion};
    m.classes = std::move(classes);
    m.points = std::move(points);
    m.r = std::move(r);
    return m;
}

}  // namespace

TEST_CASE("picard group of the root stack: examples") {
    for (std::uint32_t r : {2u, 3u, 5u}) {
        PicRootStack tear(p1_model({r}));
        CHECK(tear.free_rank() == 1);
        CHECK(tear.torsion_orders().empty());
        CHECK(tear.structure() == "Z");

        auto fm = p1_model({r, r});
        PicRootStack foot(fm);
        CHECK(foot.free_rank() == 1);
        REQUIRE(foot.torsion_orders() == std::vector<std::uint64_t>{r});
        // the generator is a unit multiple of N1 - N2
        const auto& g = foot.torsion_generators()[0];
        bool found = false;
        for (long k = 1; k < static_cast<long>(r); ++k) {
            if (std::gcd(k, static_cast<long>(r)) != 1) continue;
            auto diff = n_class(fm, {1, -1});
            for (std::size_t j = 0; j < diff.size(); ++j) diff[j] -= k * g[j];
            found = found || foot.is_zero(diff);
        }
        CHECK(found);
    }
    PicRootStack k4(p1_model({2, 2, 2}));
    CHECK(k4.torsion_orders() == std::vector<std::uint64_t>{2, 2});
    CHECK(k4.structure() == "Z + Z/2 + Z/2");
    PicRootStack spindle(p1_model({2, 3}));
    CHECK(spindle.torsion_orders().empty());
    CHECK(spindle.structure() == "Z");
}

TEST_CASE("torsion order agrees with maximal minors and the normal-form enumeration") {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        auto m = random_model(seed);
        PicRootStack pic(m);
        check_relations_well_defined(m, pic);
        auto g = orbifold_oracle::maximal_minor_gcd(pic.relations());
        CHECK(mpz_class(static_cast<unsigned long>(pic.torsion_order())) == g);
        std::uint64_t box = 1;
        for (auto r : m.r) box *= r;
        if (box <= 200000) CHECK(orbifold_oracle::box_oracle(m).torsion_order == pic.torsion_order());
        // every generator has degree zero and its order kills it
        for (std::size_t k = 0; k < pic.torsion_generators().size(); ++k) {
            auto c = pic.torsion_generators()[k];
            CHECK(scaled_degree(m, c) == 0);
            CHECK_FALSE(pic.is_zero(c));
            for (auto& v : c) v *= static_cast<long>(pic.torsion_orders()[k]);
            CHECK(pic.is_zero(c));
        }
    }
}

TEST_CASE("residual characters") {
    auto m = p1_model({3, 3});
    CHECK(residual_character(m, n_class(m, {0, 0}), 0) == std::vector<long>{0});
    CHECK(residual_character(m, n_class(m, {1, 0}), 0) == std::vector<long>{1});
    CHECK(residual_character(m, n_class(m, {1, -1}), 0) == std::vector<long>{1});
    CHECK(residual_character(m, n_class(m, {1, -1}), 1) == std::vector<long>{2});
    // relations restrict trivially
    auto rel = n_class(m, {3, 0});
    rel[0] = -1;
    CHECK(residual_character(m, rel, 0) == std::vector<long>{0});
    CHECK(scaled_degree(m, rel) == 0);
    auto node = abstract_model(4, 1, {{1, 0}, {2, 1}}, {{{0, 1}}}, {2, 3});
    CHECK(residual_character(node, n_class(node, {5, -1}), 0) == std::vector<long>{1, 2});
}

TEST_CASE("weights side: classical examples") {
    for (std::uint32_t r : {2u, 3u, 4u, 7u}) {
        auto v = weights_side(p1_model({r}));
        CHECK_FALSE(v.exists);
        CHECK(v.certificate == "no torsion class with residual character 1");
        CHECK(v.failing_point == 0u);

        auto f = weights_side(p1_model({r, r}));
        CHECK(f.exists);
        CHECK(f.torsion_order == r);
        CHECK(f.witnesses.size() == 2 * r);
        for (const auto& w : f.witnesses) CHECK(scaled_degree(p1_model({r, r}), w.coords) == 0);
    }
    CHECK(weights_side(p1_model({1})).exists);
    auto sp = weights_side(p1_model({2, 3}));
    CHECK_FALSE(sp.exists);
    CHECK(sp.torsion_order == 1);
    auto k4 = weights_side(p1_model({2, 2, 2}));
    CHECK(k4.exists);
    CHECK(k4.torsion_order == 4);
    CHECK_FALSE(weights_side(p1_model({2, 3, 5})).exists);
    CHECK(weights_side(p1_model({2, 3, 6})).exists);
    CHECK_THROWS_AS(weights_side(p1_model({8, 8, 8, 8, 8}), 100), BudgetExceeded);
}

TEST_CASE("torsor side: classical examples") {
    CHECK_FALSE(torsor_side(p1_model({3})).exists);
    CHECK_FALSE(torsor_side(p1_model({2, 3})).exists);

    auto fm = p1_model({2, 2});
    fm.p = 3;
    auto f = torsor_side(fm);
    REQUIRE(f.exists);
    const auto& d = *f.description;
    CHECK(d.A.size() == 2);
    CHECK(d.cover.rank() == 2);
    // uniform cyclic double cover: w^2 = s1 s2
    auto w = d.cover.basis_element(1);
    auto sq = d.cover.multiply(w, w);
    CHECK(sq[0] == MultiPoly::variable(d.cover.base(), 0) * MultiPoly::variable(d.cover.base(), 1));
    CHECK(d.charts.size() == 2);

    auto k = torsor_side(p1_model({2, 2, 2}));
    REQUIRE(k.exists);
    CHECK(k.description->cover.rank() == 4);
    CHECK(k.description->A.orders() == std::vector<std::uint64_t>{2, 2});
    CHECK(k.description->cover.check_cocycle() == 64);

    auto bad = p1_model({2, 2});
    bad.p = 2;
    CHECK_THROWS_AS(torsor_side(bad), InputError);
}

TEST_CASE("check_theorem: examples") {
    auto tear = check_theorem(p1_model({3}));
    CHECK(tear.pass);
    CHECK_FALSE(tear.weights_verdict);
    CHECK_FALSE(tear.torsor_verdict);

    auto fm = p1_model({3, 3});
    fm.p = 5;
    auto foot = check_theorem(fm);
    CHECK(foot.pass);
    CHECK(foot.torsor_verdict);
    REQUIRE(foot.charts.size() == 2);
    for (const auto& c : foot.charts) {
        CHECK(c.unit_rescaling);
        CHECK(c.graded_isomorphic);
        CHECK(c.refines_grading);
        CHECK(c.free_away);
    }
    CHECK(foot.cocycle_triples == 27);

    auto node = abstract_model(2, 1, {{1, 0}, {1, 1}, {2, 0}}, {{{0, 1}}, {{2}}}, {2, 2, 4});
    auto rep = check_theorem(node);
    CHECK(rep.pass);
}

TEST_CASE("model validation") {
    auto m = p1_model({2, 2});
    m.points = {{{0, 1}}};
    CHECK_THROWS_AS(m.validate(), InputError);
    m = p1_model({2, 2});
    m.classes[0] = {2};
    CHECK_THROWS_AS(m.validate(), InputError);
    m = p1_model({2, 0});
    CHECK_THROWS_AS(m.validate(), InputError);
    m = p1_model({2});
    m.p = 4;
    CHECK_THROWS_AS(m.validate(), InputError);
    m = p1_model({});
    CHECK_THROWS_AS(m.validate(), InputError);
    auto a = abstract_model(3, 1, {{0, 1}}, {{{0}}}, {2});
    CHECK_THROWS_AS(a.validate(), InputError);  // degree zero divisor
    CHECK(p1_model({2, 3, 7}).characteristic() == 5);
    CHECK(p1_model({2}).characteristic() == 3);
}

TEST_CASE("model JSON round trip and parse errors") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        auto m = random_model(seed);
        auto text = model_to_json(m);
        CHECK(model_from_json(text) == m);
        CHECK(model_to_json(model_from_json(text)) == text);
    }
    auto tear = model_from_json(R"({"curve":"P1","points":[{"branches":[0]}],"classes":[1],"r":[3]})");
    CHECK(tear == p1_model({3}));
    try {
        model_from_json(R"({"curve":"P1", "points": [)");
        FAIL("expected a parse error");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("at byte") != std::string::npos);
    }
    CHECK_THROWS_AS(model_from_json(R"({"curve":"P2","points":[],"classes":[],"r":[]})"), InputError);
    CHECK_THROWS_AS(model_from_json(R"({"curve":"P1","points":[{"branches":[0]}],"classes":[1],"r":["x"]})"), InputError);
    auto mod = module_from_json(R"({"summands":[{"e":1,"d":[0,3]}]})");
    REQUIRE(mod.summands.size() == 1);
    CHECK(mod.summands[0].d == std::vector<long>{0, 3});
    CHECK(module_to_json(mod) == R"({"summands":[{"e":1,"d":[0,3]}]})");
}

TEST_CASE("random models: determinism and ranges") {
    std::mt19937_64 rng(3);
    for (int k = 0; k < 1000; ++k) CHECK(bounded_draw(rng, 7) < 7);
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        auto m = random_model(seed);
        CHECK(m == random_model(seed));
        CHECK(m.points.size() >= 1);
        CHECK(m.points.size() <= 5);
        for (auto r : m.r) {
            CHECK(r >= 1);
            CHECK(r <= 8);
        }
        if (!m.curve.p1) CHECK(m.curve.torsion[0] <= 12);
        m.validate();
    }
}

TEST_CASE("verdicts agree with the enumeration oracle and the classical criterion") {
    std::size_t compared = 0, p1 = 0;
    for (std::uint64_t seed = 1000; seed < 1400; ++seed) {
        auto m = random_model(seed);
        auto w = weights_side(m);
        auto t = torsor_side(m);
        CHECK(w.exists == t.exists);
        std::uint64_t box = 1;
        for (auto r : m.r) box *= r;
        if (box <= 200000) {
            auto o = orbifold_oracle::box_oracle(m);
            CHECK(o.exists == w.exists);
            ++compared;
        }
        if (m.curve.p1) {
            CHECK(orbifold_oracle::classical_p1_abelian(m.r) == w.exists);
            ++p1;
        }
    }
    CHECK(compared > 300);
    CHECK(p1 > 150);
    // exhaustive P1 models with up to three points, r_i <= 6
    for (std::uint32_t a = 1; a <= 6; ++a)
        for (std::uint32_t b = 1; b <= 6; ++b)
            for (std::uint32_t c = 1; c <= 6; ++c) {
                auto m = p1_model({a, b, c});
                CHECK(weights_side(m).exists == orbifold_oracle::classical_p1_abelian(m.r));
            }
}

TEST_CASE("campaign: deterministic merge, zero discrepancies") {
    auto a = run_campaign(7, 150, 1);
    auto b = run_campaign(7, 150, 4);
    CHECK(a.discrepancies == 0);
    CHECK(a.budget_skipped == 0);
    CHECK(a.passed == 150);
    CHECK(a.with_cover == b.with_cover);
    CHECK(a.charts_checked == b.charts_checked);
    CHECK(a.with_cover > 10);
    CHECK(a.with_cover < 150);
}
