#pragma once

// Standard errors and confidence intervals.
//
// Complete data: Hajek projection. For T = -(1/2) U_min (or +(1/2) U_max) the
// U-statistic CLT gives n Var(U) -> 4 zeta1 and the kernel's factor 1/2 squares
// to 1/4, so n Var(T) -> zeta1 = Var h1(X). zeta1 is estimated by the sample
// variance of the empirical projections h1_hat(Xi) = mean_{j != i} h(Xi, Xj).
// For exp(1) data this gives n Var(T1) -> Var(1 - e^{-X}) = 1/12.
//
// Censored data: percentile bootstrap over (time, status) pairs.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string_view>
#include <thread>
#include <vector>

#include <boost/math/distributions/normal.hpp>

#include "extropy/censored.hpp"
#include "extropy/complete.hpp"
#include "extropy/error.hpp"
#include "extropy/kernel.hpp"
#include "extropy/rng.hpp"
#include "extropy/sample.hpp"
#include "extropy/summation.hpp"

namespace extropy {

enum class InferenceMethod { Projection, Bootstrap };

inline constexpr std::string_view to_string(InferenceMethod m) noexcept {
    return m == InferenceMethod::Projection ? "projection" : "bootstrap";
}

struct InferenceResult {
    double estimate;
    double std_error;
    double ci_lower;
    double ci_upper;
    double level;
    InferenceMethod method;
    std::optional<std::size_t> n_boot;   // bootstrap only
    std::size_t n_skipped = 0;           // degenerate bootstrap replicates
};

/// h1_hat(Xi) = (1/(n-1)) sum_{j != i} kernel(Xi, Xj), in input order.
/// Only the Min and Max kernels are supported.
inline std::vector<double> projection_values(const Sample& s, PairKernel kernel) {
    if (kernel != PairKernel::Min && kernel != PairKernel::Max) {
        throw InvalidArgument("projection values are defined for the min and max kernels");
    }
    const auto x = s.values();
    const std::size_t n = x.size();
    if (n < 2) throw InsufficientData(2, n, "projection values");
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });

    // Accumulate sum of (x(l) - x(k)) over the partners that contribute their own
    // value; differences between tied values are exactly zero.
    std::vector<double> out(n);
    const double denom = static_cast<double>(n - 1);
    if (kernel == PairKernel::Min) {
        // D_k = sum_{l<k} (x(l) - x(k)) <= 0
        CompensatedSum d;
        for (std::size_t k = 0; k < n; ++k) {
            if (k > 0) d += static_cast<double>(k) * (x[order[k - 1]] - x[order[k]]);
            out[order[k]] = x[order[k]] + d.value() / denom;
        }
    } else {
        // E_k = sum_{l>k} (x(l) - x(k)) >= 0
        CompensatedSum e;
        for (std::size_t r = 0; r < n; ++r) {
            const std::size_t k = n - 1 - r;
            if (r > 0) e += static_cast<double>(r) * (x[order[k + 1]] - x[order[k]]);
            out[order[k]] = x[order[k]] + e.value() / denom;
        }
    }
    return out;
}

namespace detail {

inline void require_level(double level) {
    if (!(level > 0.0 && level < 1.0)) throw InvalidArgument("confidence level must lie in (0, 1)");
}

inline double normal_critical_value(double level) {
    return boost::math::quantile(boost::math::normal_distribution<double>(), 0.5 + 0.5 * level);
}

inline double sample_variance(std::span<const double> v) {
    const double m = mean_of(v);
    CompensatedSum acc;
    for (double x : v) acc += (x - m) * (x - m);
    return acc.value() / static_cast<double>(v.size() - 1);
}

// Linear interpolation between order statistics (Hyndman-Fan type 7).
inline double sorted_quantile(std::span<const double> sorted, double p) {
    const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace detail

/// Estimate, projection standard error and normal interval for T1 (Cre) or T2 (Ce).
inline InferenceResult variance_complete(const Sample& s, Measure measure, double level = 0.95) {
    if (measure != Measure::Cre && measure != Measure::Ce) {
        throw InvalidArgument("projection variance is available for cre and ce");
    }
    detail::require_level(level);
    if (s.size() < 3) throw InsufficientData(3, s.size(), "projection variance");
    const auto sorted = sort_sample(s);
    const double est = measure == Measure::Cre ? estimate_cre(sorted).value : estimate_ce(sorted).value;
    const auto h1 = projection_values(s, measure == Measure::Cre ? PairKernel::Min : PairKernel::Max);
    const double se = std::sqrt(detail::sample_variance(h1) / static_cast<double>(s.size()));
    const double z = detail::normal_critical_value(level);
    return {est, se, est - z * se, est + z * se, level, InferenceMethod::Projection, std::nullopt, 0};
}

struct BootstrapOptions {
    std::size_t n_boot = 1000;
    double level = 0.95;
    std::uint64_t seed = 0;
    unsigned threads = 1;  // results do not depend on this
};

/// Percentile bootstrap for the censored CRE / CE estimators. Replicate b draws
/// from the stream (seed, b); replicates with fewer than two events are skipped.
inline InferenceResult bootstrap_censored(const CensoredSample& cs, Measure measure,
                                          const BootstrapOptions& opt = {}) {
    if (measure != Measure::Cre && measure != Measure::Ce) {
        throw InvalidArgument("bootstrap is available for cre and ce");
    }
    detail::require_level(opt.level);
    if (opt.n_boot < 100) throw InvalidArgument("bootstrap needs at least 100 replicates");
    auto estimate_on = [measure](const CensoredSample& c) {
        return measure == Measure::Cre ? estimate_cre_censored(c) : estimate_ce_censored(c);
    };
    const double point = estimate_on(cs).value;

    const std::size_t n = cs.size();
    std::vector<double> reps(opt.n_boot, std::numeric_limits<double>::quiet_NaN());
    auto run_range = [&](std::size_t begin, std::size_t end) {
        std::vector<Observation> buf(n);
        for (std::size_t b = begin; b < end; ++b) {
            RandomStream rng(opt.seed, {static_cast<std::uint64_t>(StreamPurpose::Bootstrap), b});
            for (auto& o : buf) o = cs[static_cast<std::size_t>(rng.below(n))];
            const CensoredSample resampled(buf);
            if (resampled.event_count() < 2) continue;
            try {
                reps[b] = estimate_on(resampled).value;
            } catch (const IpcwDegenerate&) {
            }
        }
    };
    const unsigned workers = std::max(1u, std::min<unsigned>(opt.threads, static_cast<unsigned>(opt.n_boot)));
    if (workers == 1) {
        run_range(0, opt.n_boot);
    } else {
        std::vector<std::jthread> pool;
        const std::size_t chunk = (opt.n_boot + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::size_t b0 = w * chunk;
            const std::size_t b1 = std::min(opt.n_boot, b0 + chunk);
            if (b0 < b1) pool.emplace_back(run_range, b0, b1);
        }
    }

    std::vector<double> ok;
    ok.reserve(reps.size());
    for (double v : reps) {
        if (!std::isnan(v)) ok.push_back(v);
    }
    const std::size_t skipped = reps.size() - ok.size();
    if (5 * skipped > reps.size()) throw UnstableBootstrap(skipped, reps.size());
    const double se = std::sqrt(detail::sample_variance(ok));
    std::sort(ok.begin(), ok.end());
    const double alpha = 1.0 - opt.level;
    return {point,
            se,
            detail::sorted_quantile(ok, 0.5 * alpha),
            detail::sorted_quantile(ok, 1.0 - 0.5 * alpha),
            opt.level,
            InferenceMethod::Bootstrap,
            opt.n_boot,
            skipped};
}

}  // namespace extropy
