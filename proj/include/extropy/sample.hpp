#pragma once

// Data model for complete and right-censored lifetime samples.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "extropy/error.hpp"
#include "extropy/summation.hpp"

namespace extropy {

namespace detail {

inline void require_lifetime(double v, std::size_t index) {
    if (!std::isfinite(v) || v <= 0.0) {
        throw InvalidSample("lifetime at index " + std::to_string(index) +
                            " must be positive and finite, got " + std::to_string(v));
    }
}

inline double mean_of(std::span<const double> xs) {
    CompensatedSum acc;
    for (double x : xs) acc += x;
    return acc.value() / static_cast<double>(xs.size());
}

}  // namespace detail

/// Complete sample of strictly positive, finite lifetimes.
class Sample {
public:
    explicit Sample(std::vector<double> values) : values_(std::move(values)) {
        if (values_.empty()) throw InvalidSample("sample is empty");
        for (std::size_t i = 0; i < values_.size(); ++i) detail::require_lifetime(values_[i], i);
    }

    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    double mean() const { return detail::mean_of(values_); }

private:
    std::vector<double> values_;
};

/// Order statistics of a Sample: ordered()[i] is the (i+1)-th smallest value.
class SortedSample {
public:
    std::span<const double> ordered() const noexcept { return ordered_; }
    std::size_t size() const noexcept { return ordered_.size(); }
    double operator[](std::size_t i) const { return ordered_[i]; }
    double mean() const { return detail::mean_of(ordered_); }

private:
    friend SortedSample sort_sample(const Sample& s);
    explicit SortedSample(std::vector<double> ordered) : ordered_(std::move(ordered)) {}

    std::vector<double> ordered_;
};

inline SortedSample sort_sample(const Sample& s) {
    std::vector<double> v(s.values().begin(), s.values().end());
    std::stable_sort(v.begin(), v.end());
    return SortedSample(std::move(v));
}

/// One right-censored observation: time = min(lifetime, censoring time).
struct Observation {
    double time;
    bool event;  // true: lifetime observed (status 1); false: censored (status 0)

    friend bool operator==(const Observation&, const Observation&) = default;
};

class CensoredSample {
public:
    explicit CensoredSample(std::vector<Observation> observations)
        : observations_(std::move(observations)) {
        if (observations_.empty()) throw InvalidSample("censored sample is empty");
        for (std::size_t i = 0; i < observations_.size(); ++i) {
            detail::require_lifetime(observations_[i].time, i);
            if (observations_[i].event) ++events_;
        }
    }

    /// Build from parallel time and 0/1 status columns.
    static CensoredSample from_columns(std::span<const double> times, std::span<const int> status) {
        if (times.size() != status.size()) {
            throw InvalidSample("time and status columns differ in length");
        }
        std::vector<Observation> obs;
        obs.reserve(times.size());
        for (std::size_t i = 0; i < times.size(); ++i) {
            if (status[i] != 0 && status[i] != 1) {
                throw InvalidSample("status at index " + std::to_string(i) + " must be 0 or 1");
            }
            obs.push_back({times[i], status[i] == 1});
        }
        return CensoredSample(std::move(obs));
    }

    /// Every lifetime observed.
    static CensoredSample uncensored(const Sample& s) {
        std::vector<Observation> obs;
        obs.reserve(s.size());
        for (double v : s.values()) obs.push_back({v, true});
        return CensoredSample(std::move(obs));
    }

    std::span<const Observation> observations() const noexcept { return observations_; }
    std::size_t size() const noexcept { return observations_.size(); }
    std::size_t event_count() const noexcept { return events_; }
    std::size_t censored_count() const noexcept { return observations_.size() - events_; }
    const Observation& operator[](std::size_t i) const { return observations_[i]; }

    /// Same observations with every status flipped.
    CensoredSample flipped() const {
        std::vector<Observation> obs(observations_.begin(), observations_.end());
        for (auto& o : obs) o.event = !o.event;
        return CensoredSample(std::move(obs));
    }

private:
    std::vector<Observation> observations_;
    std::size_t events_ = 0;
};

/// Fraction of the sample at or below x (right-continuous).
inline double empirical_cdf(const SortedSample& s, double x) {
    const auto ord = s.ordered();
    const auto count = std::upper_bound(ord.begin(), ord.end(), x) - ord.begin();
    return static_cast<double>(count) / static_cast<double>(ord.size());
}

/// Empirical distribution or survival function backed by a SortedSample.
class EmpiricalDistribution {
public:
    enum class Direction { Cdf, Survival };

    EmpiricalDistribution(SortedSample backing, Direction direction)
        : backing_(std::move(backing)), direction_(direction) {}

    double operator()(double x) const {
        const auto ord = backing_.ordered();
        const auto n = static_cast<double>(ord.size());
        const auto below = static_cast<double>(std::upper_bound(ord.begin(), ord.end(), x) - ord.begin());
        return direction_ == Direction::Cdf ? below / n : (n - below) / n;
    }

    Direction direction() const noexcept { return direction_; }
    const SortedSample& backing() const noexcept { return backing_; }

private:
    SortedSample backing_;
    Direction direction_;
};

}  // namespace extropy
