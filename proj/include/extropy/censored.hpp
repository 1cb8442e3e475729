#pragma once

// Inverse-probability-of-censoring weighted U-statistics for right-censored
// samples. An uncensored observation i carries weight 1/K(Yi-), where K is the
// censoring survival function; censored observations carry weight 0. The pair
// sum runs over unordered pairs of events and is normalised by n(n-1) with n
// the full sample size.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <type_traits>
#include <vector>

#include "extropy/complete.hpp"
#include "extropy/error.hpp"
#include "extropy/kernel.hpp"
#include "extropy/km.hpp"
#include "extropy/sample.hpp"
#include "extropy/summation.hpp"

namespace extropy {

struct IpcwWeights {
    std::vector<double> weights;   // delta_i / K(Y_i-); +inf where degenerate
    std::vector<bool> degenerate;  // event with K(Y_i-) == 0

    bool any_degenerate() const {
        return std::find(degenerate.begin(), degenerate.end(), true) != degenerate.end();
    }
};

enum class DegeneratePolicy { Throw, Flag };

/// Weights from an arbitrary censoring survival function evaluated at Y_i-.
/// Pass the true K here to run the estimators in oracle-weight mode.
template <class LeftLimitFn>
    requires std::is_invocable_r_v<double, LeftLimitFn, double>
IpcwWeights ipcw_weights(const CensoredSample& cs, LeftLimitFn&& k_left,
                         DegeneratePolicy policy = DegeneratePolicy::Throw) {
    IpcwWeights w;
    w.weights.assign(cs.size(), 0.0);
    w.degenerate.assign(cs.size(), false);
    for (std::size_t i = 0; i < cs.size(); ++i) {
        if (!cs[i].event) continue;
        const double k = k_left(cs[i].time);
        if (!(k > 0.0)) {
            if (policy == DegeneratePolicy::Throw) throw IpcwDegenerate(cs[i].time);
            w.weights[i] = std::numeric_limits<double>::infinity();
            w.degenerate[i] = true;
        } else {
            w.weights[i] = 1.0 / k;
        }
    }
    return w;
}

/// Weights from the reverse Kaplan-Meier estimate of K.
inline IpcwWeights ipcw_weights(const CensoredSample& cs,
                                DegeneratePolicy policy = DegeneratePolicy::Throw) {
    const StepSurvival k = km_censoring_survival(cs);
    return ipcw_weights(cs, [&k](double t) { return k.left_limit(t); }, policy);
}

namespace detail {

// sum over unordered event pairs of kernel(Yi, Yj) * wi * wj.
inline double weighted_pair_sum(const CensoredSample& cs, const IpcwWeights& w, PairKernel kernel) {
    std::vector<std::size_t> idx;
    idx.reserve(cs.event_count());
    for (std::size_t i = 0; i < cs.size(); ++i) {
        if (cs[i].event) idx.push_back(i);
    }
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return cs[a].time < cs[b].time; });
    CompensatedSum total;
    CompensatedSum partner;  // weight mass of the partners seen so far
    if (kernel == PairKernel::Min) {
        // min pairs: each event times the weight of every later event
        for (auto it = idx.rbegin(); it != idx.rend(); ++it) {
            total += cs[*it].time * w.weights[*it] * partner.value();
            partner += w.weights[*it];
        }
    } else {
        for (auto i : idx) {
            total += cs[i].time * w.weights[i] * partner.value();
            partner += w.weights[i];
        }
    }
    return total.value();
}

inline EstimateResult censored_estimate(const CensoredSample& cs, const IpcwWeights& w, Measure m) {
    if (cs.event_count() < 2) throw InsufficientEvents(cs.event_count());
    const bool is_cre = m == Measure::Cre;
    const double sum = weighted_pair_sum(cs, w, is_cre ? PairKernel::Min : PairKernel::Max);
    const double value = (is_cre ? -sum : sum) / pair_count(cs.size());
    return {m, value, cs.size(), cs.event_count(), std::nullopt};
}

}  // namespace detail

/// IPCW estimate of CRE with Kaplan-Meier censoring weights.
inline EstimateResult estimate_cre_censored(const CensoredSample& cs) {
    if (cs.event_count() < 2) throw InsufficientEvents(cs.event_count());
    return detail::censored_estimate(cs, ipcw_weights(cs), Measure::Cre);
}

/// IPCW estimate of CE with Kaplan-Meier censoring weights.
inline EstimateResult estimate_ce_censored(const CensoredSample& cs) {
    if (cs.event_count() < 2) throw InsufficientEvents(cs.event_count());
    return detail::censored_estimate(cs, ipcw_weights(cs), Measure::Ce);
}

/// Oracle-weight mode: k_left(t) supplies K(t-) in place of the Kaplan-Meier estimate.
template <class LeftLimitFn>
EstimateResult estimate_cre_censored(const CensoredSample& cs, LeftLimitFn&& k_left) {
    if (cs.event_count() < 2) throw InsufficientEvents(cs.event_count());
    return detail::censored_estimate(cs, ipcw_weights(cs, k_left), Measure::Cre);
}

template <class LeftLimitFn>
EstimateResult estimate_ce_censored(const CensoredSample& cs, LeftLimitFn&& k_left) {
    if (cs.event_count() < 2) throw InsufficientEvents(cs.event_count());
    return detail::censored_estimate(cs, ipcw_weights(cs, k_left), Measure::Ce);
}

}  // namespace extropy
