#pragma once

// Complete-data extropy estimators.
//
// Every measure here is an average of a pair kernel built from min(Xi, Xj)
// or max(Xi, Xj). Sorting turns the O(n^2) pair averages into linear
// combinations of order statistics:
//
//   sum_{i<j} min(Xi, Xj) = sum_k (n - k) X(k)
//   sum_{i<j} max(Xi, Xj) = sum_k (k - 1) X(k)      (k = 1..n)
//
// The dynamic variants condition on the pairs whose min exceeds t (residual
// life of a series system) or whose max is at most t (past life of a
// parallel system); they reduce to the same sums over the tail or head of the
// ordered sample.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include "extropy/error.hpp"
#include "extropy/sample.hpp"
#include "extropy/summation.hpp"

namespace extropy {

enum class Measure {
    Cre,
    Ce,
    CrePlugin,
    CePlugin,
    DynSurvExtropy,
    DynCumExtropy,
    WSurvExtropy,
    WCumExtropy,
    WDynSurvExtropy,
    WDynCumExtropy,
};

inline constexpr std::string_view to_string(Measure m) {
    switch (m) {
        case Measure::Cre: return "cre";
        case Measure::Ce: return "ce";
        case Measure::CrePlugin: return "cre-plugin";
        case Measure::CePlugin: return "ce-plugin";
        case Measure::DynSurvExtropy: return "dyn-surv";
        case Measure::DynCumExtropy: return "dyn-cum";
        case Measure::WSurvExtropy: return "w-surv";
        case Measure::WCumExtropy: return "w-cum";
        case Measure::WDynSurvExtropy: return "w-dyn-surv";
        case Measure::WDynCumExtropy: return "w-dyn-cum";
    }
    return "unknown";
}

inline std::optional<Measure> parse_measure(std::string_view name) {
    for (auto m : {Measure::Cre, Measure::Ce, Measure::CrePlugin, Measure::CePlugin,
                   Measure::DynSurvExtropy, Measure::DynCumExtropy, Measure::WSurvExtropy,
                   Measure::WCumExtropy, Measure::WDynSurvExtropy, Measure::WDynCumExtropy}) {
        if (to_string(m) == name) return m;
    }
    return std::nullopt;
}

inline constexpr bool is_dynamic(Measure m) {
    return m == Measure::DynSurvExtropy || m == Measure::DynCumExtropy ||
           m == Measure::WDynSurvExtropy || m == Measure::WDynCumExtropy;
}

struct EstimateResult {
    Measure measure;
    double value;
    std::size_t n_used;     // observations in the sample (censored ones included)
    std::size_t n_events;   // uncensored observations; equals n_used for complete data
    std::optional<double> threshold;  // dynamic measures only
};

namespace detail {

inline void require_pairs(std::size_t n, const char* what) {
    if (n < 2) throw InsufficientData(2, n, what);
}

inline void require_threshold(double t) {
    if (!std::isfinite(t) || t < 0.0) {
        throw InvalidArgument("threshold t must be finite and nonnegative, got " + std::to_string(t));
    }
}

inline double pair_count(std::size_t n) {
    return static_cast<double>(n) * static_cast<double>(n - 1);
}

// sum_{i<j} g(min(xi, xj)) over an ascending range, g applied by the caller.
template <class F>
double sum_over_pair_minima(std::span<const double> asc, F&& g) {
    const std::size_t n = asc.size();
    CompensatedSum acc;
    for (std::size_t k = 0; k < n; ++k) acc += static_cast<double>(n - 1 - k) * g(asc[k]);
    return acc.value();
}

template <class F>
double sum_over_pair_maxima(std::span<const double> asc, F&& g) {
    CompensatedSum acc;
    for (std::size_t k = 1; k < asc.size(); ++k) acc += static_cast<double>(k) * g(asc[k]);
    return acc.value();
}

inline double identity(double x) { return x; }
inline double square(double x) { return x * x; }

}  // namespace detail

/// T1 = -(1/(n(n-1))) sum_k (n-k) X(k): unbiased U-statistic for -E[min(X1,X2)]/2.
inline EstimateResult estimate_cre(const SortedSample& s) {
    detail::require_pairs(s.size(), "cre");
    const double sum = detail::sum_over_pair_minima(s.ordered(), detail::identity);
    return {Measure::Cre, -sum / detail::pair_count(s.size()), s.size(), s.size(), std::nullopt};
}

/// T2 = (1/(n(n-1))) sum_k (k-1) X(k): unbiased U-statistic for E[max(X1,X2)]/2.
inline EstimateResult estimate_ce(const SortedSample& s) {
    detail::require_pairs(s.size(), "ce");
    const double sum = detail::sum_over_pair_maxima(s.ordered(), detail::identity);
    return {Measure::Ce, sum / detail::pair_count(s.size()), s.size(), s.size(), std::nullopt};
}

/// Plug-in -(1/2) sum_{i=1}^{n-1} (1 - i/n)^2 (X(i+1) - X(i)). The interval
/// [0, X(1)] is not integrated.
inline EstimateResult estimate_cre_plugin(const SortedSample& s) {
    detail::require_pairs(s.size(), "cre-plugin");
    const auto x = s.ordered();
    const double n = static_cast<double>(x.size());
    CompensatedSum acc;
    for (std::size_t i = 1; i < x.size(); ++i) {
        const double surv = 1.0 - static_cast<double>(i) / n;
        acc += surv * surv * (x[i] - x[i - 1]);
    }
    return {Measure::CrePlugin, -0.5 * acc.value(), x.size(), x.size(), std::nullopt};
}

/// Plug-in (1/2) sum_{i=1}^{n-1} (1 - (i/n)^2) (X(i+1) - X(i)), the same
/// spacing form as the CRE plug-in.
inline EstimateResult estimate_ce_plugin(const SortedSample& s) {
    detail::require_pairs(s.size(), "ce-plugin");
    const auto x = s.ordered();
    const double n = static_cast<double>(x.size());
    CompensatedSum acc;
    for (std::size_t i = 1; i < x.size(); ++i) {
        const double cdf = static_cast<double>(i) / n;
        acc += (1.0 - cdf * cdf) * (x[i] - x[i - 1]);
    }
    return {Measure::CePlugin, 0.5 * acc.value(), x.size(), x.size(), std::nullopt};
}

/// -(1/2) mean over pairs with min > t of (min - t).
inline EstimateResult estimate_dynamic_survival_extropy(const SortedSample& s, double t) {
    detail::require_threshold(t);
    const auto x = s.ordered();
    const auto tail = x.subspan(static_cast<std::size_t>(std::upper_bound(x.begin(), x.end(), t) - x.begin()));
    if (tail.size() < 2) throw InsufficientTail(tail.size(), t);
    const double sum = detail::sum_over_pair_minima(tail, [t](double v) { return v - t; });
    return {Measure::DynSurvExtropy, -sum / detail::pair_count(tail.size()), tail.size(), tail.size(), t};
}

/// -(1/2) mean over pairs with max <= t of (t - max).
inline EstimateResult estimate_dynamic_cumulative_extropy(const SortedSample& s, double t) {
    detail::require_threshold(t);
    const auto x = s.ordered();
    const auto head = x.first(static_cast<std::size_t>(std::upper_bound(x.begin(), x.end(), t) - x.begin()));
    if (head.size() < 2) throw InsufficientHead(head.size(), t);
    const double sum = detail::sum_over_pair_maxima(head, [t](double v) { return t - v; });
    return {Measure::DynCumExtropy, -sum / detail::pair_count(head.size()), head.size(), head.size(), t};
}

/// -(1/4) mean over pairs of min^2.
inline EstimateResult estimate_weighted_survival_extropy(const SortedSample& s) {
    detail::require_pairs(s.size(), "w-surv");
    const double sum = detail::sum_over_pair_minima(s.ordered(), detail::square);
    return {Measure::WSurvExtropy, -0.5 * sum / detail::pair_count(s.size()), s.size(), s.size(), std::nullopt};
}

/// -(1/4) mean over pairs of max^2.
inline EstimateResult estimate_weighted_cumulative_extropy(const SortedSample& s) {
    detail::require_pairs(s.size(), "w-cum");
    const double sum = detail::sum_over_pair_maxima(s.ordered(), detail::square);
    return {Measure::WCumExtropy, -0.5 * sum / detail::pair_count(s.size()), s.size(), s.size(), std::nullopt};
}

/// -(1/4) mean over pairs with min > t of (min^2 - t^2).
inline EstimateResult estimate_weighted_dynamic_survival_extropy(const SortedSample& s, double t) {
    detail::require_threshold(t);
    const auto x = s.ordered();
    const auto tail = x.subspan(static_cast<std::size_t>(std::upper_bound(x.begin(), x.end(), t) - x.begin()));
    if (tail.size() < 2) throw InsufficientTail(tail.size(), t);
    const double t2 = t * t;
    const double sum = detail::sum_over_pair_minima(tail, [t2](double v) { return v * v - t2; });
    return {Measure::WDynSurvExtropy, -0.5 * sum / detail::pair_count(tail.size()), tail.size(), tail.size(), t};
}

/// -(1/4) mean over pairs with max <= t of (t^2 - max^2).
inline EstimateResult estimate_weighted_dynamic_cumulative_extropy(const SortedSample& s, double t) {
    detail::require_threshold(t);
    const auto x = s.ordered();
    const auto head = x.first(static_cast<std::size_t>(std::upper_bound(x.begin(), x.end(), t) - x.begin()));
    if (head.size() < 2) throw InsufficientHead(head.size(), t);
    const double t2 = t * t;
    const double sum = detail::sum_over_pair_maxima(head, [t2](double v) { return t2 - v * v; });
    return {Measure::WDynCumExtropy, -0.5 * sum / detail::pair_count(head.size()), head.size(), head.size(), t};
}

inline EstimateResult estimate_cre(const Sample& s) { return estimate_cre(sort_sample(s)); }
inline EstimateResult estimate_ce(const Sample& s) { return estimate_ce(sort_sample(s)); }
inline EstimateResult estimate_cre_plugin(const Sample& s) { return estimate_cre_plugin(sort_sample(s)); }
inline EstimateResult estimate_ce_plugin(const Sample& s) { return estimate_ce_plugin(sort_sample(s)); }
inline EstimateResult estimate_dynamic_survival_extropy(const Sample& s, double t) {
    return estimate_dynamic_survival_extropy(sort_sample(s), t);
}
inline EstimateResult estimate_dynamic_cumulative_extropy(const Sample& s, double t) {
    return estimate_dynamic_cumulative_extropy(sort_sample(s), t);
}
inline EstimateResult estimate_weighted_survival_extropy(const Sample& s) {
    return estimate_weighted_survival_extropy(sort_sample(s));
}
inline EstimateResult estimate_weighted_cumulative_extropy(const Sample& s) {
    return estimate_weighted_cumulative_extropy(sort_sample(s));
}
inline EstimateResult estimate_weighted_dynamic_survival_extropy(const Sample& s, double t) {
    return estimate_weighted_dynamic_survival_extropy(sort_sample(s), t);
}
inline EstimateResult estimate_weighted_dynamic_cumulative_extropy(const Sample& s, double t) {
    return estimate_weighted_dynamic_cumulative_extropy(sort_sample(s), t);
}

/// Dispatch by measure. Dynamic measures require a threshold.
inline EstimateResult estimate(Measure m, const SortedSample& s, std::optional<double> t = std::nullopt) {
    auto need_t = [&]() {
        if (!t) throw InvalidArgument(std::string(to_string(m)) + " requires a threshold t");
        return *t;
    };
    switch (m) {
        case Measure::Cre: return estimate_cre(s);
        case Measure::Ce: return estimate_ce(s);
        case Measure::CrePlugin: return estimate_cre_plugin(s);
        case Measure::CePlugin: return estimate_ce_plugin(s);
        case Measure::DynSurvExtropy: return estimate_dynamic_survival_extropy(s, need_t());
        case Measure::DynCumExtropy: return estimate_dynamic_cumulative_extropy(s, need_t());
        case Measure::WSurvExtropy: return estimate_weighted_survival_extropy(s);
        case Measure::WCumExtropy: return estimate_weighted_cumulative_extropy(s);
        case Measure::WDynSurvExtropy: return estimate_weighted_dynamic_survival_extropy(s, need_t());
        case Measure::WDynCumExtropy: return estimate_weighted_dynamic_cumulative_extropy(s, need_t());
    }
    throw InvalidArgument("unknown measure");
}

}  // namespace extropy
