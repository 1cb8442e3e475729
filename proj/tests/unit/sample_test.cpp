#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <set>
#include <vector>

#include "extropy/distributions.hpp"
#include "extropy/error.hpp"
#include "extropy/rng.hpp"
#include "extropy/sample.hpp"
#include "test_support.hpp"

using namespace extropy;

namespace {

std::vector<double> as_vector(std::span<const double> s) { return {s.begin(), s.end()}; }

}  // namespace

TEST_CASE("sort_sample orders values", "[sample]") {
    CHECK(as_vector(sort_sample(Sample({3.0, 1.0, 2.0})).ordered()) == std::vector<double>{1.0, 2.0, 3.0});
    CHECK(as_vector(sort_sample(Sample({2.0, 2.0, 2.0})).ordered()) == std::vector<double>{2.0, 2.0, 2.0});
}

TEST_CASE("sort_sample agrees with a multiset on random draws", "[sample]") {
    RandomStream rng(17);
    const auto s = sample_distribution(Distribution::exponential(1.0), 1000, rng);
    const auto sorted = sort_sample(s);
    const std::multiset<double> ref(s.values().begin(), s.values().end());
    CHECK(as_vector(sorted.ordered()) == std::vector<double>(ref.begin(), ref.end()));
    for (std::size_t i = 1; i < sorted.size(); ++i) CHECK(sorted[i - 1] <= sorted[i]);
}

TEST_CASE("sample validation rejects bad lifetimes", "[sample]") {
    CHECK_THROWS_AS(Sample({}), InvalidSample);
    CHECK_THROWS_AS(Sample({1.0, 0.0}), InvalidSample);
    CHECK_THROWS_AS(Sample({-1.0}), InvalidSample);
    CHECK_THROWS_AS(Sample({std::numeric_limits<double>::quiet_NaN()}), InvalidSample);
    CHECK_THROWS_AS(Sample({std::numeric_limits<double>::infinity()}), InvalidSample);
    CHECK_NOTHROW(Sample({0.5}));
}

TEST_CASE("censored sample validation", "[sample]") {
    const std::vector<double> t{1.0, 2.0};
    CHECK_THROWS_AS(CensoredSample::from_columns(t, std::vector<int>{1, 2}), InvalidSample);
    CHECK_THROWS_AS(CensoredSample::from_columns(t, std::vector<int>{1}), InvalidSample);
    CHECK_THROWS_AS(CensoredSample::from_columns(std::vector<double>{1.0, -2.0}, std::vector<int>{1, 0}),
                    InvalidSample);
    CHECK_THROWS_AS(CensoredSample({}), InvalidSample);
    const auto cs = CensoredSample::from_columns(std::vector<double>{1.0, 2.0, 3.0}, std::vector<int>{1, 0, 1});
    CHECK(cs.event_count() == 2);
    CHECK(cs.censored_count() == 1);
    CHECK(cs.flipped().event_count() == 1);
}

TEST_CASE("empirical cdf and survival", "[sample]") {
    const auto s = sort_sample(Sample({1.0, 2.0, 3.0}));
    CHECK(empirical_cdf(s, 2.0) == Catch::Approx(2.0 / 3.0));
    CHECK(empirical_cdf(s, 0.5) == 0.0);
    CHECK(empirical_cdf(s, 3.0) == 1.0);
    const EmpiricalDistribution surv(s, EmpiricalDistribution::Direction::Survival);
    CHECK(surv(2.0) == Catch::Approx(1.0 / 3.0));
    CHECK(surv(0.5) == 1.0);

    const auto tied = sort_sample(Sample({1.0, 2.0, 2.0, 5.0}));
    CHECK(empirical_cdf(tied, 1.999) == 0.25);
    CHECK(empirical_cdf(tied, 2.0) == 0.75);
}

TEST_CASE("empirical cdf and survival sum to one", "[sample]") {
    RandomStream rng(3);
    for (int rep = 0; rep < 50; ++rep) {
        const auto s = sort_sample(testing::random_sample(rng, 1, 60));
        const EmpiricalDistribution cdf(s, EmpiricalDistribution::Direction::Cdf);
        const EmpiricalDistribution surv(s, EmpiricalDistribution::Direction::Survival);
        const double n = static_cast<double>(s.size());
        double prev = 0.0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            const double x = s[i];
            CHECK(std::abs(cdf(x) + surv(x) - 1.0) < 1e-15);
            // jumps are multiples of 1/n
            const double steps = (cdf(x) - prev) * n;
            CHECK(std::abs(steps - std::round(steps)) < 1e-9);
            prev = cdf(x);
        }
        CHECK(cdf(s[s.size() - 1]) == 1.0);
    }
}
