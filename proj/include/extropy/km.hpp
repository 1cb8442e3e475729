#pragma once

// Product-limit survival curves. The censoring-survival curve K-hat feeds the
// inverse-probability-of-censoring weights of the censored estimators.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "extropy/error.hpp"
#include "extropy/sample.hpp"

namespace extropy {

/// Right-continuous nonincreasing step function starting at 1.
class StepSurvival {
public:
    /// The constant curve S = 1.
    StepSurvival() = default;

    StepSurvival(std::vector<double> jump_times, std::vector<double> values_after)
        : jump_times_(std::move(jump_times)), values_after_(std::move(values_after)) {
        if (jump_times_.size() != values_after_.size()) {
            throw InvalidArgument("step survival: jump times and values differ in length");
        }
        double prev_v = 1.0;
        for (std::size_t i = 0; i < jump_times_.size(); ++i) {
            if (i > 0 && !(jump_times_[i] > jump_times_[i - 1])) {
                throw InvalidArgument("step survival: jump times must be strictly increasing");
            }
            if (!(values_after_[i] >= 0.0 && values_after_[i] <= prev_v)) {
                throw InvalidArgument("step survival: values must be nonincreasing in [0, 1]");
            }
            prev_v = values_after_[i];
        }
    }

    /// S(t): includes a jump located exactly at t.
    double operator()(double t) const {
        const auto it = std::upper_bound(jump_times_.begin(), jump_times_.end(), t);
        return it == jump_times_.begin() ? 1.0 : values_after_[static_cast<std::size_t>(it - jump_times_.begin()) - 1];
    }

    /// S(t-): excludes a jump located exactly at t.
    double left_limit(double t) const {
        const auto it = std::lower_bound(jump_times_.begin(), jump_times_.end(), t);
        return it == jump_times_.begin() ? 1.0 : values_after_[static_cast<std::size_t>(it - jump_times_.begin()) - 1];
    }

    std::span<const double> jump_times() const noexcept { return jump_times_; }
    std::span<const double> values_after() const noexcept { return values_after_; }
    static constexpr double value_before_first() noexcept { return 1.0; }

private:
    std::vector<double> jump_times_;
    std::vector<double> values_after_;
};

inline double left_limit(const StepSurvival& k, double t) { return k.left_limit(t); }

namespace detail {

struct TimeGroup {
    double time;
    std::size_t events;
    std::size_t censored;
};

inline std::vector<TimeGroup> group_by_time(const CensoredSample& cs) {
    std::vector<std::size_t> idx(cs.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return cs[a].time < cs[b].time; });
    std::vector<TimeGroup> groups;
    for (std::size_t k = 0; k < idx.size();) {
        TimeGroup g{cs[idx[k]].time, 0, 0};
        while (k < idx.size() && cs[idx[k]].time == g.time) {
            (cs[idx[k]].event ? g.events : g.censored) += 1;
            ++k;
        }
        groups.push_back(g);
    }
    return groups;
}

}  // namespace detail

/// Reverse Kaplan-Meier: product-limit estimate of the censoring survival
/// function K, with status 0 as the event of interest. At tied times events
/// precede censorings, so an event at t is never discounted by a censoring at t.
inline StepSurvival km_censoring_survival(const CensoredSample& cs) {
    std::vector<double> times;
    std::vector<double> values;
    double s = 1.0;
    std::size_t at_risk = cs.size();
    for (const auto& g : detail::group_by_time(cs)) {
        const std::size_t risk_for_censoring = at_risk - g.events;
        if (g.censored > 0) {
            s *= 1.0 - static_cast<double>(g.censored) / static_cast<double>(risk_for_censoring);
            times.push_back(g.time);
            values.push_back(s);
        }
        at_risk -= g.events + g.censored;
    }
    return StepSurvival(std::move(times), std::move(values));
}

/// Standard Kaplan-Meier estimate of the lifetime survival function. Censorings
/// at an event time remain in that event's risk set.
inline StepSurvival kaplan_meier(const CensoredSample& cs) {
    std::vector<double> times;
    std::vector<double> values;
    double s = 1.0;
    std::size_t at_risk = cs.size();
    for (const auto& g : detail::group_by_time(cs)) {
        if (g.events > 0) {
            s *= 1.0 - static_cast<double>(g.events) / static_cast<double>(at_risk);
            times.push_back(g.time);
            values.push_back(s);
        }
        at_risk -= g.events + g.censored;
    }
    return StepSurvival(std::move(times), std::move(values));
}

}  // namespace extropy
