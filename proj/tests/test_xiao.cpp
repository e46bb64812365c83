#include <catch2/catch_amalgamated.hpp>

#include "g2fib/ruled_surface.hpp"
#include "g2fib/xiao.hpp"

#include <random>

using namespace g2fib;

TEST_CASE("relative invariants", "[xiao]") {
    CHECK(relative_invariants({10, 0}) == RelativeInvariants{2, 1, 1});
    CHECK(relative_invariants({0, 0}) == RelativeInvariants{0, 0, 0});
    CHECK(relative_invariants({120, 0}) == RelativeInvariants{24, 12, 12});
    CHECK(relative_invariants({8, 1}) == RelativeInvariants{3, 1, 2});
    CHECK_THROWS_AS(relative_invariants({3, 1}), NonIntegral);
    CHECK_THROWS_AS(relative_invariants({5, 0}), NonIntegral);
    CHECK_THROWS_AS(relative_invariants({-10, 0}), BadParameter);
}

TEST_CASE("global invariants", "[xiao]") {
    CHECK(global_invariants({120, 0}, 0).ksq == 16);
    CHECK(global_invariants({70, 0}, 1).ksq == 14);
    CHECK(global_invariants({0, 0}, 3).ksq == 16);
    CHECK(global_invariants({0, 0}, 3).chi == 2);
    CHECK(global_invariants({120, 0}, 0).chi == 11);
    CHECK_THROWS_AS(global_invariants({10, 0}, -1), BadParameter);
    CHECK_THROWS_AS(global_invariants({1, 0}, 2), NonIntegral);
}

TEST_CASE("budget validation", "[xiao]") {
    CHECK(validate_budget({10, 0}));
    CHECK_FALSE(validate_budget({3, 1}));
    CHECK(validate_budget({8, 1}));
    CHECK(validate_budget({0, 0}));
    CHECK_FALSE(validate_budget({-10, 0}));
}

TEST_CASE("identities over random budgets", "[xiao][property]") {
    std::mt19937_64 rng(1729);
    std::uniform_int_distribution<long long> dist(0, 1'000'000);
    int valid = 0;
    for (int i = 0; i < 10000; ++i) {
        const SingularityBudget b{dist(rng), dist(rng) % 5000};
        const bool ok = (b.s2_total + 2 * b.s3_total) % 10 == 0;
        REQUIRE(validate_budget(b) == ok);
        if (!ok) {
            REQUIRE_THROWS_AS(relative_invariants(b), NonIntegral);
            continue;
        }
        ++valid;
        const auto r = relative_invariants(b);
        REQUIRE(5 * r.ksq_rel == b.s2_total + 7 * b.s3_total);
        REQUIRE(10 * r.chi_f == b.s2_total + 2 * b.s3_total);
        REQUIRE(r.ksq_rel == 2 * r.n - b.s3_total);
        REQUIRE(r.chi_f == r.n - b.s3_total);
        REQUIRE(r.ksq_rel >= 0);
        REQUIRE((r.ksq_rel == 0) == is_locally_trivial(b));
    }
    CHECK(valid > 500);
}

TEST_CASE("forced valid budgets", "[xiao][property]") {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<long long> dist(0, 100'000);
    for (int i = 0; i < 10000; ++i) {
        const long long s3 = dist(rng);
        long long s2 = dist(rng);
        s2 -= ((s2 + 2 * s3) % 10);
        if (s2 < 0) s2 += 10;
        const SingularityBudget b{s2, s3};
        REQUIRE(validate_budget(b));
        const auto r = relative_invariants(b);
        REQUIRE(5 * r.ksq_rel == b.s2_total + 7 * b.s3_total);
        REQUIRE(10 * r.chi_f == b.s2_total + 2 * b.s3_total);
        const auto g = global_invariants(b, i % 7);
        REQUIRE(g.ksq == r.ksq_rel + 8 * (i % 7 - 1));
        REQUIRE(g.chi == r.chi_f + (i % 7 - 1));
    }
}

TEST_CASE("fiber budgets agree with the double cover", "[xiao]") {
    // m full fibers in the branch locus plus six sections on P1 x P1
    for (int m = 1; m <= 20; ++m) {
        const auto ksq = global_invariants({10 * m, 0}, 0).ksq;
        CHECK(ksq == double_cover_ksq(RuledSurfaceModel::product(0), DivisorClass{6, m}));
    }
}
