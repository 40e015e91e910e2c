#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "appendix_oracles.hpp"
#include "tamer/appendix.hpp"
#include "tamer/error.hpp"
#include "tamer/poly.hpp"

using namespace tamer;

namespace {

std::string failing(const AppendixReport& r) {
    std::string s;
    for (const auto& c : r.checks)
        if (!c.pass) s += c.name + ": " + c.detail + "\n";
    return s;
}

}  // namespace

TEST_CASE("first family passes for small primes") {
    for (std::uint64_t p : {2u, 3u, 5u, 7u}) {
        auto r = family1_verify({p, 12, false, 1});
        INFO(failing(r));
        CHECK(r.pass);
        CHECK(r.nontrivial);
        CHECK(r.checks.size() == 7);
        CHECK(r.scope.find("12") != std::string::npos);
    }
}

TEST_CASE("first family: zero probe is trivial") {
    auto r = family1_verify({3, 12, true, 1});
    CHECK(r.pass);
    CHECK_FALSE(r.nontrivial);
}

TEST_CASE("second family passes for odd primes") {
    for (std::uint64_t p : {3u, 5u, 7u}) {
        auto r = family2_verify({p, 12, false, 1});
        INFO(failing(r));
        CHECK(r.pass);
        CHECK(r.nontrivial);
        CHECK(r.square_root == appendix_oracle::square_root(p, 12).to_string());
    }
    auto r5 = family2_verify({5, 10, false, 2});
    CHECK(r5.pass);
}

TEST_CASE("second family: the square root in characteristic 3") {
    auto r = family2_verify({3, 12, false, 1});
    // 1 + (1/2) u v^2 - (1/8) u^2 v^4 + ...: 1/2 = 2 and -1/8 = 1 in F_3
    auto R = make_ring(3, {"u", "v"});
    auto a = appendix_oracle::square_root(3, 12);
    CHECK(a.coefficient({0, 0}) == 1);
    CHECK(a.coefficient({1, 2}) == 2);
    CHECK(a.coefficient({2, 4}) == 1);
    CHECK(r.square_root == a.to_string());
}

TEST_CASE("second family: zero probe gives the identity") {
    auto r = family2_verify({5, 12, true, 1});
    CHECK(r.pass);
    CHECK_FALSE(r.nontrivial);
    CHECK(r.square_root == "1");
}

TEST_CASE("appendix input validation") {
    CHECK_THROWS_AS(family2_verify({2, 12, false, 1}), InputError);
    CHECK_THROWS_AS(family1_verify({4, 12, false, 1}), InputError);
    CHECK_THROWS_AS(family1_verify({3, 100, false, 1}), BudgetExceeded);
}

TEST_CASE("reports are deterministic") {
    auto a = family2_verify({7, 12, false, 9});
    auto b = family2_verify({7, 12, false, 9});
    REQUIRE(a.checks.size() == b.checks.size());
    for (std::size_t k = 0; k < a.checks.size(); ++k) CHECK(a.checks[k].detail == b.checks[k].detail);
}
