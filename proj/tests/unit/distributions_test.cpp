#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "extropy/distributions.hpp"
#include "extropy/error.hpp"
#include "extropy/rng.hpp"
#include "test_support.hpp"

using namespace extropy;
using Catch::Approx;

TEST_CASE("stream seeds depend on every path element", "[rng]") {
    const auto a = derive_stream_seed(1, {10, 0, 7});
    CHECK(a == derive_stream_seed(1, {10, 0, 7}));
    CHECK(a != derive_stream_seed(2, {10, 0, 7}));
    CHECK(a != derive_stream_seed(1, {10, 1, 7}));
    CHECK(a != derive_stream_seed(1, {7, 0, 10}));
    RandomStream r1(5, {1, 2});
    RandomStream r2(5, {1, 2});
    for (int i = 0; i < 10; ++i) CHECK(r1.uniform_open() == r2.uniform_open());
}

TEST_CASE("uniform and bounded draws stay in range", "[rng]") {
    RandomStream rng(77);
    std::vector<int> counts(7, 0);
    for (int i = 0; i < 70000; ++i) {
        const double u = rng.uniform_open();
        REQUIRE(u > 0.0);
        REQUIRE(u < 1.0);
        ++counts[rng.below(7)];
    }
    for (int c : counts) CHECK(std::abs(c - 10000) < 500);
}

TEST_CASE("distribution functions are consistent", "[distributions]") {
    for (const auto& d : testing::standard_families()) {
        INFO(d.name());
        for (double p : {1e-6, 0.01, 0.1, 0.5, 0.9, 0.99}) {
            const double x = d.quantile(p);
            CHECK(d.cdf(x) == Approx(p).epsilon(1e-8));
            CHECK(d.survival(x) + d.cdf(x) == Approx(1.0).epsilon(1e-12));
            CHECK(d.survival_quantile(1.0 - p) == Approx(x).epsilon(1e-8));
        }
        CHECK(d.survival(d.survival_quantile(1e-12)) == Approx(1e-12).epsilon(1e-6));
        CHECK(d.survival(0.0) == 1.0);
    }
    CHECK(Distribution::exponential(1.0).name() == "Exponential(1)");
    CHECK(Distribution::gamma(2.0, 1.0).name() == "Gamma(2,1)");
    CHECK(Distribution::weibull(2.0, 1.0).name() == "Weibull(2,1)");
    CHECK(Distribution::lognormal(0.0, 1.0).name() == "Lognormal(0,1)");
    CHECK_THROWS_AS(Distribution::exponential(0.0), InvalidArgument);
    CHECK_THROWS_AS(Distribution::gamma(-1.0, 1.0), InvalidArgument);
    CHECK_THROWS_AS(Distribution::lognormal(0.0, 0.0), InvalidArgument);
}

TEST_CASE("density integrates the cdf", "[distributions]") {
    for (const auto& d : testing::standard_families()) {
        const double x = d.quantile(0.4);
        const double h = 1e-5 * x;
        CHECK((d.cdf(x + h) - d.cdf(x - h)) / (2.0 * h) == Approx(d.density(x)).epsilon(1e-6));
    }
}

TEST_CASE("samplers reproduce the first two moments", "[distributions][statistical]") {
    std::vector<Distribution> all = testing::standard_families();
    all.push_back(Distribution::gamma(2.5, 2.0));
    all.push_back(Distribution::gamma(0.7, 1.0));
    for (const auto& d : all) {
        INFO(d.name());
        RandomStream rng(31);
        const std::size_t n = 400000;
        double m = 0.0;
        double sq = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double x = d.draw(rng);
            m += x;
            sq += x * x;
        }
        m /= static_cast<double>(n);
        const double var = sq / static_cast<double>(n) - m * m;
        CHECK(std::abs(m - d.mean()) < 4.0 * std::sqrt(d.variance() / static_cast<double>(n)));
        CHECK(std::abs(var / d.variance() - 1.0) < 0.05);
    }
}

TEST_CASE("sample_distribution is deterministic", "[distributions]") {
    RandomStream a(8);
    RandomStream b(8);
    const auto sa = sample_distribution(Distribution::lognormal(0.0, 1.0), 100, a);
    const auto sb = sample_distribution(Distribution::lognormal(0.0, 1.0), 100, b);
    CHECK(std::equal(sa.values().begin(), sa.values().end(), sb.values().begin()));
}
