#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace extropy {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input data violates a sample invariant (empty, nonpositive or non-finite time, bad status).
class InvalidSample : public Error {
public:
    using Error::Error;
};

/// A scalar argument is out of its domain (level, threshold, replicate count, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Too few observations for a pairwise estimator.
class InsufficientData : public Error {
public:
    InsufficientData(std::size_t required, std::size_t available, const std::string& what)
        : Error(what + ": need at least " + std::to_string(required) + ", have " +
                std::to_string(available)),
          required_(required),
          available_(available) {}

    std::size_t required() const noexcept { return required_; }
    std::size_t available() const noexcept { return available_; }

private:
    std::size_t required_;
    std::size_t available_;
};

/// Fewer than two values strictly above the threshold of a residual (tail) measure.
class InsufficientTail : public InsufficientData {
public:
    InsufficientTail(std::size_t available, double t)
        : InsufficientData(2, available, "values above t=" + std::to_string(t)), threshold_(t) {}
    double threshold() const noexcept { return threshold_; }

private:
    double threshold_;
};

/// Fewer than two values at or below the threshold of a past-life (head) measure.
class InsufficientHead : public InsufficientData {
public:
    InsufficientHead(std::size_t available, double t)
        : InsufficientData(2, available, "values at or below t=" + std::to_string(t)),
          threshold_(t) {}
    double threshold() const noexcept { return threshold_; }

private:
    double threshold_;
};

/// Fewer than two uncensored observations in a censored sample.
class InsufficientEvents : public InsufficientData {
public:
    explicit InsufficientEvents(std::size_t available)
        : InsufficientData(2, available, "uncensored observations") {}
};

/// An event observation has zero estimated probability of remaining uncensored.
class IpcwDegenerate : public Error {
public:
    explicit IpcwDegenerate(double time)
        : Error("censoring survival is 0 just before event time " + std::to_string(time)),
          time_(time) {}
    double time() const noexcept { return time_; }

private:
    double time_;
};

/// Quadrature or root finding failed to reach its tolerance.
class NumericError : public Error {
public:
    using Error::Error;
};

class CalibrationError : public NumericError {
public:
    using NumericError::NumericError;
};

/// Too many bootstrap replicates were degenerate to trust the interval.
class UnstableBootstrap : public Error {
public:
    UnstableBootstrap(std::size_t skipped, std::size_t total)
        : Error("bootstrap unstable: " + std::to_string(skipped) + " of " +
                std::to_string(total) + " replicates skipped"),
          skipped_(skipped),
          total_(total) {}
    std::size_t skipped() const noexcept { return skipped_; }
    std::size_t total() const noexcept { return total_; }

private:
    std::size_t skipped_;
    std::size_t total_;
};

}  // namespace extropy
