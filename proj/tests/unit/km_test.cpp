#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "extropy/km.hpp"
#include "extropy/rng.hpp"
#include "extropy/sample.hpp"
#include "test_support.hpp"

using namespace extropy;

namespace {

CensoredSample make(std::vector<double> t, std::vector<int> s) { return CensoredSample::from_columns(t, s); }

}  // namespace

TEST_CASE("reverse KM on a single censoring", "[km]") {
    const auto k = km_censoring_survival(make({1, 2, 3}, {1, 0, 1}));
    CHECK(k(1.5) == 1.0);
    CHECK(k(2.0) == 0.5);
    CHECK(k(2.5) == 0.5);
    CHECK(k.left_limit(1.0) == 1.0);
    CHECK(k.left_limit(2.0) == 1.0);
    CHECK(k.left_limit(3.0) == 0.5);
    CHECK(k.left_limit(0.1) == 1.0);
}

TEST_CASE("reverse KM without censoring is constant one", "[km]") {
    const auto k = km_censoring_survival(make({1, 2, 3}, {1, 1, 1}));
    CHECK(k.jump_times().empty());
    for (double t : {0.5, 1.0, 2.0, 3.0, 10.0}) {
        CHECK(k(t) == 1.0);
        CHECK(k.left_limit(t) == 1.0);
    }
}

TEST_CASE("reverse KM when every observation is censored", "[km]") {
    const auto k = km_censoring_survival(make({1, 2, 4}, {0, 0, 0}));
    CHECK(k(1.0) == Catch::Approx(2.0 / 3.0));
    CHECK(k(2.0) == Catch::Approx(1.0 / 3.0));
    CHECK(k(4.0) == 0.0);
}

TEST_CASE("events precede censorings at tied times", "[km]") {
    // at t = 2 the event leaves first, so the censoring sees a risk set of 2
    const auto k = km_censoring_survival(make({2, 2, 3}, {1, 0, 1}));
    CHECK(k(2.0) == 0.5);
    CHECK(k.left_limit(2.0) == 1.0);
}

TEST_CASE("duplicate censoring times share one step", "[km]") {
    const auto k = km_censoring_survival(make({1, 1, 2, 3}, {0, 0, 1, 0}));
    REQUIRE(k.jump_times().size() == 2);
    CHECK(k(1.0) == 0.5);
    CHECK(k(3.0) == 0.0);
}

TEST_CASE("product-limit hand table and reverse duality", "[km]") {
    // risk sets 6, 4, 3, 1 at the event times 2, 5, 7, 10
    const auto cs = make({2, 3, 5, 7, 8, 10}, {1, 0, 1, 1, 0, 1});
    const std::vector<std::pair<double, double>> expected{{2, 5.0 / 6.0}, {5, 5.0 / 8.0}, {7, 5.0 / 12.0}, {10, 0.0}};
    const auto s = kaplan_meier(cs);
    const auto k = km_censoring_survival(cs.flipped());
    REQUIRE(s.jump_times().size() == expected.size());
    REQUIRE(k.jump_times().size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
        CHECK(s.jump_times()[i] == expected[i].first);
        CHECK(s.values_after()[i] == Catch::Approx(expected[i].second).margin(1e-15));
        CHECK(k.jump_times()[i] == expected[i].first);
        CHECK(k.values_after()[i] == Catch::Approx(expected[i].second).margin(1e-15));
    }
}

TEST_CASE("reverse KM properties on random censored samples", "[km]") {
    RandomStream rng(2024);
    for (int rep = 0; rep < 100; ++rep) {
        const auto& fam = testing::standard_families()[static_cast<std::size_t>(rep % 4)];
        const std::size_t n = 2 + static_cast<std::size_t>(rng.below(80));
        const auto cs = testing::random_censored(rng, fam, 0.3 + 0.1 * (rep % 5), n);
        const auto k = km_censoring_survival(cs);
        double prev = 1.0;
        for (double v : k.values_after()) {
            CHECK(v <= prev);
            CHECK(v >= 0.0);
            prev = v;
        }
        // tie-free continuous data: reverse KM equals standard KM of the flipped sample
        const auto dual = kaplan_meier(cs.flipped());
        REQUIRE(dual.values_after().size() == k.values_after().size());
        for (std::size_t i = 0; i < k.values_after().size(); ++i) {
            CHECK(std::abs(dual.values_after()[i] - k.values_after()[i]) < 1e-12);
        }
    }
}
