#pragma once

// Ground truth for the simulation study and the test suites:
//  * population CRE / CE from closed forms or adaptive quadrature,
//  * O(n^2) pair enumeration as the reference for the fast estimators,
//  * moments of the pair kernels (zeta_1, zeta_2) for exact U-statistic variances,
//  * the exponential censoring rate giving a requested censored fraction.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <string_view>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "extropy/distributions.hpp"
#include "extropy/error.hpp"
#include "extropy/kernel.hpp"
#include "extropy/sample.hpp"
#include "extropy/summation.hpp"

namespace extropy {

enum class TruthSource { ClosedForm, Quadrature };

inline constexpr std::string_view to_string(TruthSource s) noexcept {
    return s == TruthSource::ClosedForm ? "closed-form" : "quadrature";
}

struct Truth {
    double value;
    TruthSource source;
};

namespace detail {

inline constexpr double kQuadratureRelTol = 1e-10;

template <class F>
double integrate_segment(F&& f, double a, double b) {
    double error = 0.0;
    double l1 = 0.0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        f, a, b, 15, kQuadratureRelTol, &error, &l1);
    if (!std::isfinite(v) || error > 100.0 * kQuadratureRelTol * std::max(l1, 1e-300)) {
        std::ostringstream os;
        os << "quadrature on [" << a << ", " << b << "] did not converge (error estimate " << error << ")";
        throw NumericError(os.str());
    }
    return v;
}

// Integral over (0, inf) of a function that decays like a power of the
// survival function, split at a few survival quantiles.
template <class F>
double integrate_over_support(const Distribution& d, F&& f) {
    const double q50 = d.survival_quantile(0.5);
    const double q99 = d.survival_quantile(1e-2);
    const double q6 = d.survival_quantile(1e-6);
    const double upper = d.survival_quantile(1e-12);
    CompensatedSum acc;
    acc += integrate_segment(f, 0.0, q50);
    acc += integrate_segment(f, q50, q99);
    acc += integrate_segment(f, q99, q6);
    acc += integrate_segment(f, q6, upper);
    acc += integrate_segment(f, upper, std::numeric_limits<double>::infinity());
    return acc.value();
}

}  // namespace detail

/// -(1/2) int_0^inf S(x)^2 dx by adaptive Gauss-Kronrod quadrature.
inline double quadrature_cre(const Distribution& d) {
    return -0.5 * detail::integrate_over_support(d, [&](double x) {
        const double s = d.survival(x);
        return s * s;
    });
}

/// (1/2) int_0^inf (1 - F(x)^2) dx; the integrand is evaluated as S (1 + F).
inline double quadrature_ce(const Distribution& d) {
    return 0.5 * detail::integrate_over_support(d, [&](double x) {
        return d.survival(x) * (1.0 + d.cdf(x));
    });
}

inline Truth cre_truth(const Distribution& d) {
    const auto p = d.parameters();
    switch (d.family()) {
        case Family::Exponential: return {-0.25 / p[0], TruthSource::ClosedForm};
        case Family::Weibull:
            // int exp(-2 (x/scale)^k) dx = scale Gamma(1 + 1/k) 2^(-1/k)
            return {-0.5 * p[1] * std::tgamma(1.0 + 1.0 / p[0]) * std::pow(2.0, -1.0 / p[0]),
                    TruthSource::ClosedForm};
        default: return {quadrature_cre(d), TruthSource::Quadrature};
    }
}

inline Truth ce_truth(const Distribution& d) {
    const auto p = d.parameters();
    switch (d.family()) {
        case Family::Exponential: return {0.75 / p[0], TruthSource::ClosedForm};
        case Family::Weibull: {
            // E max = 2 mu - E min
            const double e_min = p[1] * std::tgamma(1.0 + 1.0 / p[0]) * std::pow(2.0, -1.0 / p[0]);
            return {0.5 * (2.0 * d.mean() - e_min), TruthSource::ClosedForm};
        }
        default: return {quadrature_ce(d), TruthSource::Quadrature};
    }
}

inline double true_cre(const Distribution& d) { return cre_truth(d).value; }
inline double true_ce(const Distribution& d) { return ce_truth(d).value; }

/// Mean of kernel over all unordered pairs, by direct enumeration.
inline double naive_pairwise_oracle(const Sample& s, PairKernel kernel) {
    const auto x = s.values();
    if (x.size() < 2) throw InsufficientData(2, x.size(), "pairwise oracle");
    CompensatedSum acc;
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = i + 1; j < x.size(); ++j) acc += apply_kernel(kernel, x[i], x[j]);
    }
    const double pairs = 0.5 * static_cast<double>(x.size()) * static_cast<double>(x.size() - 1);
    return acc.value() / pairs;
}

/// Moments of the min or max pair kernel under d.
struct KernelMoments {
    double mean;   // E h(X1, X2)
    double zeta1;  // Var E[h(X1, X2) | X1]
    double zeta2;  // Var h(X1, X2)
};

inline KernelMoments kernel_moments(const Distribution& d, PairKernel kernel) {
    if (kernel != PairKernel::Min && kernel != PairKernel::Max) {
        throw InvalidArgument("kernel moments are available for min and max only");
    }
    // h1_min(x) = int_0^x S(y) dy, h1_max(x) = x + mu - h1_min(x).
    auto h1_min = [&](double x) {
        return x <= 0.0 ? 0.0 : detail::integrate_segment([&](double y) { return d.survival(y); }, 0.0, x);
    };
    auto s2 = [&](double x) {
        const double s = d.survival(x);
        return s * s;
    };
    const double mu = d.mean();
    const double e_min = detail::integrate_over_support(d, s2);
    const double e_min2 = detail::integrate_over_support(d, [&](double x) { return 2.0 * x * s2(x); });
    // E g(X) = g(0) + int g'(x) S(x) dx with g = h1_min^2 and g = x h1_min.
    const double e_h1_sq = detail::integrate_over_support(d, [&](double x) { return 2.0 * h1_min(x) * s2(x); });
    const double zeta1_min = e_h1_sq - e_min * e_min;
    if (kernel == PairKernel::Min) {
        return {e_min, zeta1_min, e_min2 - e_min * e_min};
    }
    const double e_x_h1 = detail::integrate_over_support(
        d, [&](double x) { return (h1_min(x) + x * d.survival(x)) * d.survival(x); });
    const double cov = e_x_h1 - mu * e_min;
    const double e_max = 2.0 * mu - e_min;
    const double e_x2 = d.variance() + mu * mu;
    const double e_max2 = 2.0 * e_x2 - e_min2;
    return {e_max, d.variance() + zeta1_min - 2.0 * cov, e_max2 - e_max * e_max};
}

/// Finite-sample variance of T1 (min) or T2 (max):
/// (1/4) * 2 [2 (n - 2) zeta1 + zeta2] / (n (n - 1)).
inline double exact_estimator_variance(const KernelMoments& m, std::size_t n) {
    if (n < 2) throw InsufficientData(2, n, "estimator variance");
    const double nn = static_cast<double>(n);
    return 0.25 * 2.0 * (2.0 * (nn - 2.0) * m.zeta1 + m.zeta2) / (nn * (nn - 1.0));
}

/// P(T > C) for lifetime T ~ d and independent C ~ Exponential(rate).
inline double censoring_probability(const Distribution& d, double rate) {
    if (!(rate > 0.0) || !std::isfinite(rate)) throw InvalidArgument("censoring rate must be positive");
    // substitute u = rate * c: int_0^inf S(u / rate) e^{-u} du
    auto f = [&](double u) { return d.survival(u / rate) * std::exp(-u); };
    CompensatedSum acc;
    acc += detail::integrate_segment(f, 0.0, 1.0);
    acc += detail::integrate_segment(f, 1.0, 10.0);
    acc += detail::integrate_segment(f, 10.0, 60.0);
    return acc.value();
}

/// Exponential censoring rate with P(T > C) = target, by bisection on log(rate).
inline double calibrate_censoring_rate(const Distribution& d, double target) {
    if (!(target > 0.0 && target < 1.0)) throw InvalidArgument("censoring target must lie in (0, 1)");
    double lo = std::log(1e-8);
    double hi = std::log(1e8);
    const double p_lo = censoring_probability(d, std::exp(lo));
    const double p_hi = censoring_probability(d, std::exp(hi));
    if (!(p_lo < target && target < p_hi)) {
        throw CalibrationError("no censoring rate in [1e-8, 1e8] brackets target " + std::to_string(target));
    }
    for (int iter = 0; iter < 300; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double p = censoring_probability(d, std::exp(mid));
        if (std::abs(p - target) < 1e-8) return std::exp(mid);
        (p < target ? lo : hi) = mid;
    }
    throw CalibrationError("censoring-rate bisection did not reach tolerance");
}

}  // namespace extropy
