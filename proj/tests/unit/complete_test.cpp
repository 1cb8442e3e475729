#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <functional>
#include <vector>

#include "extropy/complete.hpp"
#include "extropy/distributions.hpp"
#include "extropy/error.hpp"
#include "extropy/oracles.hpp"
#include "extropy/rng.hpp"
#include "test_support.hpp"

using namespace extropy;
using Catch::Approx;

namespace {

const Sample k123({1.0, 2.0, 3.0});

// Brute-force mean of g over unordered pairs accepted by keep.
double pair_mean(const Sample& s, const std::function<bool(double, double)>& keep,
                 const std::function<double(double, double)>& g) {
    const auto x = s.values();
    double acc = 0.0;
    double count = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = i + 1; j < x.size(); ++j) {
            if (!keep(x[i], x[j])) continue;
            acc += g(x[i], x[j]);
            count += 1.0;
        }
    }
    return acc / count;
}

double brute_plugin(const Sample& s, bool cumulative) {
    const auto sorted = sort_sample(s);
    const auto x = sorted.ordered();
    const double n = static_cast<double>(x.size());
    double acc = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) {
        const double p = static_cast<double>(i) / n;
        const double w = cumulative ? 1.0 - p * p : (1.0 - p) * (1.0 - p);
        acc += w * (x[i] - x[i - 1]);
    }
    return cumulative ? 0.5 * acc : -0.5 * acc;
}

}  // namespace

TEST_CASE("U-statistic estimators on a small sample", "[complete]") {
    CHECK(estimate_cre(k123).value == Approx(-2.0 / 3.0).epsilon(1e-15));
    CHECK(estimate_ce(k123).value == Approx(4.0 / 3.0).epsilon(1e-15));
    CHECK(estimate_cre(Sample({1.0, 1.0})).value == -0.5);
    CHECK(estimate_ce(Sample({1.0, 1.0})).value == 0.5);
    for (double c : {0.25, 1.0, 7.5}) {
        const Sample s(std::vector<double>(6, c));
        CHECK(estimate_cre(s).value == Approx(-c / 2.0));
        CHECK(estimate_ce(s).value == Approx(c / 2.0));
    }
    const auto r = estimate_cre(k123);
    CHECK(r.n_used == 3);
    CHECK(r.n_events == 3);
    CHECK_FALSE(r.threshold.has_value());
}

TEST_CASE("plug-in estimators on a small sample", "[complete]") {
    // only the spacings X(i+1) - X(i) enter, weighted by the empirical survival or cdf
    CHECK(estimate_cre_plugin(k123).value == Approx(-5.0 / 18.0).epsilon(1e-15));
    CHECK(estimate_ce_plugin(k123).value == Approx(13.0 / 18.0).epsilon(1e-15));
    const Sample flat(std::vector<double>(5, 2.5));
    CHECK(estimate_cre_plugin(flat).value == 0.0);
    CHECK(estimate_ce_plugin(flat).value == 0.0);
}

TEST_CASE("too few observations", "[complete]") {
    const Sample one({2.0});
    CHECK_THROWS_AS(estimate_cre(one), InsufficientData);
    CHECK_THROWS_AS(estimate_ce(one), InsufficientData);
    CHECK_THROWS_AS(estimate_cre_plugin(one), InsufficientData);
    CHECK_THROWS_AS(estimate_ce_plugin(one), InsufficientData);
    CHECK_THROWS_AS(estimate_weighted_survival_extropy(one), InsufficientData);
    CHECK_THROWS_AS(estimate_weighted_cumulative_extropy(one), InsufficientData);
    try {
        estimate_cre(one);
    } catch (const InsufficientData& e) {
        CHECK(e.required() == 2);
        CHECK(e.available() == 1);
    }
}

TEST_CASE("dynamic survival extropy", "[complete][dynamic]") {
    CHECK(estimate_dynamic_survival_extropy(k123, 1.5).value == Approx(-0.25));
    CHECK(estimate_dynamic_survival_extropy(k123, 1.5).n_used == 2);
    CHECK(estimate_dynamic_survival_extropy(k123, 0.0).value == estimate_cre(k123).value);
    const Sample flat(std::vector<double>(4, 3.0));
    CHECK(estimate_dynamic_survival_extropy(flat, 1.0).value == Approx(-1.0));
    try {
        estimate_dynamic_survival_extropy(k123, 2.0);
        FAIL("expected InsufficientTail");
    } catch (const InsufficientTail& e) {
        CHECK(e.available() == 1);
        CHECK(e.threshold() == 2.0);
    }
    CHECK_THROWS_AS(estimate_dynamic_survival_extropy(k123, -1.0), InvalidArgument);
    CHECK_THROWS_AS(estimate_dynamic_survival_extropy(k123, std::nan("")), InvalidArgument);
}

TEST_CASE("dynamic cumulative extropy", "[complete][dynamic]") {
    CHECK(estimate_dynamic_cumulative_extropy(k123, 2.5).value == Approx(-0.25));
    for (double t : {3.0, 4.0, 10.0}) {
        CHECK(estimate_dynamic_cumulative_extropy(k123, t).value ==
              Approx(estimate_ce(k123).value - t / 2.0).epsilon(1e-14));
    }
    const Sample flat(std::vector<double>(4, 3.0));
    CHECK(estimate_dynamic_cumulative_extropy(flat, 5.0).value == Approx(-1.0));
    try {
        estimate_dynamic_cumulative_extropy(k123, 1.5);
        FAIL("expected InsufficientHead");
    } catch (const InsufficientHead& e) {
        CHECK(e.available() == 1);
    }
}

TEST_CASE("weighted measures", "[complete][weighted]") {
    CHECK(estimate_weighted_survival_extropy(k123).value == Approx(-0.5));
    CHECK(estimate_weighted_cumulative_extropy(k123).value == Approx(-11.0 / 6.0));
    const Sample flat(std::vector<double>(3, 2.0));
    CHECK(estimate_weighted_survival_extropy(flat).value == Approx(-1.0));
    CHECK(estimate_weighted_cumulative_extropy(flat).value == Approx(-1.0));
    CHECK(estimate_weighted_dynamic_survival_extropy(k123, 1.5).value == Approx(-(4.0 - 2.25) / 4.0));
    CHECK(estimate_weighted_dynamic_cumulative_extropy(k123, 2.5).value == Approx(-(6.25 - 4.0) / 4.0));
    CHECK(estimate_weighted_dynamic_survival_extropy(k123, 0.0).value ==
          estimate_weighted_survival_extropy(k123).value);
}

TEST_CASE("weighted survival extropy of a large exponential sample", "[complete][weighted]") {
    // E min^2 for two exp(1) lifetimes is 1/2, so the measure is -1/8
    RandomStream rng(99);
    const auto s = sample_distribution(Distribution::exponential(1.0), 20000, rng);
    CHECK(std::abs(estimate_weighted_survival_extropy(s).value + 0.125) < 0.015);
}

TEST_CASE("estimate dispatch", "[complete]") {
    const auto sorted = sort_sample(k123);
    CHECK(estimate(Measure::Cre, sorted).value == estimate_cre(sorted).value);
    CHECK(estimate(Measure::WDynCumExtropy, sorted, 2.5).value ==
          estimate_weighted_dynamic_cumulative_extropy(sorted, 2.5).value);
    CHECK_THROWS_AS(estimate(Measure::DynSurvExtropy, sorted), InvalidArgument);
    for (auto m : {Measure::Cre, Measure::Ce, Measure::CrePlugin, Measure::CePlugin, Measure::DynSurvExtropy,
                   Measure::DynCumExtropy, Measure::WSurvExtropy, Measure::WCumExtropy, Measure::WDynSurvExtropy,
                   Measure::WDynCumExtropy}) {
        CHECK(parse_measure(to_string(m)) == m);
    }
    CHECK_FALSE(parse_measure("entropy").has_value());
}

TEST_CASE("order-statistic forms match pairwise enumeration", "[complete][property]") {
    RandomStream rng(7);
    for (int rep = 0; rep < 200; ++rep) {
        const Sample s = testing::random_sample(rng, 2, 200);
        const auto sorted = sort_sample(s);
        const double mean_min = naive_pairwise_oracle(s, PairKernel::Min);
        const double mean_max = naive_pairwise_oracle(s, PairKernel::Max);
        CHECK(testing::rel_diff(estimate_cre(sorted).value, -0.5 * mean_min) < 1e-12);
        CHECK(testing::rel_diff(estimate_ce(sorted).value, 0.5 * mean_max) < 1e-12);
        CHECK(testing::rel_diff(estimate_weighted_survival_extropy(sorted).value,
                                -0.25 * naive_pairwise_oracle(s, PairKernel::MinSquared)) < 1e-12);
        CHECK(testing::rel_diff(estimate_weighted_cumulative_extropy(sorted).value,
                                -0.25 * naive_pairwise_oracle(s, PairKernel::MaxSquared)) < 1e-12);
        CHECK(testing::rel_diff(estimate_cre_plugin(sorted).value, brute_plugin(s, false)) < 1e-12);
        CHECK(testing::rel_diff(estimate_ce_plugin(sorted).value, brute_plugin(s, true)) < 1e-12);

        // identity: CE - CRE equals the sample mean
        CHECK(std::abs(estimate_ce(sorted).value - estimate_cre(sorted).value - s.mean()) <=
              1e-12 * std::max(1.0, s.mean()));
        CHECK(estimate_cre(sorted).value < 0.0);
        CHECK(estimate_ce(sorted).value > 0.0);

        // thresholds at the lower quartile and the median
        const double t = sorted[sorted.size() / 4];
        const double t_hi = sorted[sorted.size() / 2];
        if (sorted.size() - static_cast<std::size_t>(std::upper_bound(sorted.ordered().begin(),
                                                                      sorted.ordered().end(), t) -
                                                     sorted.ordered().begin()) >= 2) {
            const double dyn = pair_mean(s, [t](double a, double b) { return std::min(a, b) > t; },
                                         [t](double a, double b) { return std::min(a, b) - t; });
            CHECK(testing::rel_diff(estimate_dynamic_survival_extropy(sorted, t).value, -0.5 * dyn) < 1e-12);
            const double wdyn = pair_mean(s, [t](double a, double b) { return std::min(a, b) > t; },
                                          [t](double a, double b) { return std::min(a, b) * std::min(a, b) - t * t; });
            CHECK(testing::rel_diff(estimate_weighted_dynamic_survival_extropy(sorted, t).value, -0.25 * wdyn) <
                  1e-12);
        }
        const auto head = std::upper_bound(sorted.ordered().begin(), sorted.ordered().end(), t_hi) -
                          sorted.ordered().begin();
        if (head >= 2) {
            const double dyn = pair_mean(s, [t_hi](double a, double b) { return std::max(a, b) <= t_hi; },
                                         [t_hi](double a, double b) { return t_hi - std::max(a, b); });
            CHECK(testing::rel_diff(estimate_dynamic_cumulative_extropy(sorted, t_hi).value, -0.5 * dyn) < 1e-12);
            const double wdyn =
                pair_mean(s, [t_hi](double a, double b) { return std::max(a, b) <= t_hi; },
                          [t_hi](double a, double b) { return t_hi * t_hi - std::max(a, b) * std::max(a, b); });
            CHECK(testing::rel_diff(estimate_weighted_dynamic_cumulative_extropy(sorted, t_hi).value, -0.25 * wdyn) <
                  1e-12);
        }
        CHECK(estimate_dynamic_survival_extropy(sorted, 0.0).value == estimate_cre(sorted).value);
    }
}

TEST_CASE("weighted sum identity", "[complete][property]") {
    // min^2 + max^2 = a^2 + b^2, so the two weighted measures add to -(1/2) mean X^2
    RandomStream rng(8);
    for (int rep = 0; rep < 100; ++rep) {
        const Sample s = testing::random_sample(rng, 2, 150);
        double sq = 0.0;
        for (double v : s.values()) sq += v * v;
        sq /= static_cast<double>(s.size());
        const double total = estimate_weighted_survival_extropy(s).value + estimate_weighted_cumulative_extropy(s).value;
        CHECK(testing::rel_diff(total, -0.5 * sq) < 1e-12);
    }
}

TEST_CASE("scale equivariance", "[complete][property]") {
    RandomStream rng(9);
    for (int rep = 0; rep < 100; ++rep) {
        const Sample s = testing::random_sample(rng, 2, 100);
        const double c = 0.1 + 10.0 * rng.uniform_open();
        std::vector<double> scaled;
        for (double v : s.values()) scaled.push_back(c * v);
        const Sample cs(scaled);
        CHECK(testing::rel_diff(estimate_cre(cs).value, c * estimate_cre(s).value) < 1e-12);
        CHECK(testing::rel_diff(estimate_ce(cs).value, c * estimate_ce(s).value) < 1e-12);
        CHECK(testing::rel_diff(estimate_cre_plugin(cs).value, c * estimate_cre_plugin(s).value) < 1e-12);
        CHECK(testing::rel_diff(estimate_ce_plugin(cs).value, c * estimate_ce_plugin(s).value) < 1e-12);
    }
}

TEST_CASE("U-statistics are unbiased for exponential data", "[complete][statistical]") {
    // 5000 replicates of n = 20; each mean must sit within 3 Monte Carlo standard errors
    constexpr int reps = 5000;
    RandomStream rng(20240601);
    const auto d = Distribution::exponential(1.0);
    std::vector<double> t1(reps), t2(reps);
    for (int r = 0; r < reps; ++r) {
        const auto sorted = sort_sample(sample_distribution(d, 20, rng));
        t1[r] = estimate_cre(sorted).value;
        t2[r] = estimate_ce(sorted).value;
    }
    auto check_unbiased = [](const std::vector<double>& v, double truth) {
        double m = 0.0;
        for (double x : v) m += x;
        m /= static_cast<double>(v.size());
        double ss = 0.0;
        for (double x : v) ss += (x - m) * (x - m);
        const double se = std::sqrt(ss / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
        INFO("mean " << m << " truth " << truth << " se " << se);
        CHECK(std::abs(m - truth) < 3.0 * se);
    };
    check_unbiased(t1, -0.25);
    check_unbiased(t2, 0.75);
}
