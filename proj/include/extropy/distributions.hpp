#pragma once

// Lifetime families used by the simulation study and the analytic oracles.
//
//   Exponential(rate)          S(x) = exp(-rate x)
//   Gamma(shape, rate)         mean shape / rate
//   Weibull(shape, scale)      S(x) = exp(-(x / scale)^shape)
//   Lognormal(mu, sigma)       log X ~ N(mu, sigma^2)

#include <cmath>
#include <cstddef>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "extropy/error.hpp"
#include "extropy/rng.hpp"
#include "extropy/sample.hpp"

namespace extropy {

enum class Family { Exponential, Gamma, Weibull, Lognormal };

class Distribution {
public:
    static Distribution exponential(double rate) {
        require_positive(rate, "exponential rate");
        return Distribution(Family::Exponential, rate, 0.0);
    }
    static Distribution gamma(double shape, double rate) {
        require_positive(shape, "gamma shape");
        require_positive(rate, "gamma rate");
        return Distribution(Family::Gamma, shape, rate);
    }
    static Distribution weibull(double shape, double scale) {
        require_positive(shape, "weibull shape");
        require_positive(scale, "weibull scale");
        return Distribution(Family::Weibull, shape, scale);
    }
    static Distribution lognormal(double mu, double sigma) {
        if (!std::isfinite(mu)) throw InvalidArgument("lognormal mu must be finite");
        require_positive(sigma, "lognormal sigma");
        return Distribution(Family::Lognormal, mu, sigma);
    }

    Family family() const noexcept { return family_; }
    std::vector<double> parameters() const {
        if (family_ == Family::Exponential) return {p1_};
        return {p1_, p2_};
    }

    std::string name() const {
        std::ostringstream os;
        switch (family_) {
            case Family::Exponential: os << "Exponential(" << p1_ << ")"; break;
            case Family::Gamma: os << "Gamma(" << p1_ << "," << p2_ << ")"; break;
            case Family::Weibull: os << "Weibull(" << p1_ << "," << p2_ << ")"; break;
            case Family::Lognormal: os << "Lognormal(" << p1_ << "," << p2_ << ")"; break;
        }
        return os.str();
    }

    double survival(double x) const {
        if (x <= 0.0) return 1.0;
        switch (family_) {
            case Family::Exponential: return std::exp(-p1_ * x);
            case Family::Gamma: return boost::math::gamma_q(p1_, p2_ * x);
            case Family::Weibull: return std::exp(-std::pow(x / p2_, p1_));
            case Family::Lognormal:
                return 0.5 * boost::math::erfc((std::log(x) - p1_) / (p2_ * std::numbers::sqrt2));
        }
        return 1.0;
    }

    double cdf(double x) const {
        if (x <= 0.0) return 0.0;
        switch (family_) {
            case Family::Exponential: return -std::expm1(-p1_ * x);
            case Family::Gamma: return boost::math::gamma_p(p1_, p2_ * x);
            case Family::Weibull: return -std::expm1(-std::pow(x / p2_, p1_));
            case Family::Lognormal:
                return 0.5 * boost::math::erfc(-(std::log(x) - p1_) / (p2_ * std::numbers::sqrt2));
        }
        return 0.0;
    }

    double density(double x) const {
        if (x <= 0.0) return 0.0;
        switch (family_) {
            case Family::Exponential: return p1_ * std::exp(-p1_ * x);
            case Family::Gamma: return p2_ * boost::math::gamma_p_derivative(p1_, p2_ * x);
            case Family::Weibull: {
                const double z = x / p2_;
                return p1_ / p2_ * std::pow(z, p1_ - 1.0) * std::exp(-std::pow(z, p1_));
            }
            case Family::Lognormal: {
                const double z = (std::log(x) - p1_) / p2_;
                return std::exp(-0.5 * z * z) / (x * p2_ * std::sqrt(2.0 * std::numbers::pi));
            }
        }
        return 0.0;
    }

    /// Inverse of cdf on (0, 1).
    double quantile(double p) const {
        if (!(p > 0.0 && p < 1.0)) throw InvalidArgument("quantile probability must lie in (0, 1)");
        return quantile_from_survival(1.0 - p, p);
    }

    /// Inverse of survival on (0, 1); accurate far into the upper tail.
    double survival_quantile(double q) const {
        if (!(q > 0.0 && q < 1.0)) throw InvalidArgument("survival probability must lie in (0, 1)");
        return quantile_from_survival(q, 1.0 - q);
    }

    double mean() const {
        switch (family_) {
            case Family::Exponential: return 1.0 / p1_;
            case Family::Gamma: return p1_ / p2_;
            case Family::Weibull: return p2_ * std::tgamma(1.0 + 1.0 / p1_);
            case Family::Lognormal: return std::exp(p1_ + 0.5 * p2_ * p2_);
        }
        return 0.0;
    }

    double variance() const {
        switch (family_) {
            case Family::Exponential: return 1.0 / (p1_ * p1_);
            case Family::Gamma: return p1_ / (p2_ * p2_);
            case Family::Weibull: {
                const double g1 = std::tgamma(1.0 + 1.0 / p1_);
                return p2_ * p2_ * (std::tgamma(1.0 + 2.0 / p1_) - g1 * g1);
            }
            case Family::Lognormal: {
                const double s2 = p2_ * p2_;
                return std::expm1(s2) * std::exp(2.0 * p1_ + s2);
            }
        }
        return 0.0;
    }

    /// One variate. Inverse-CDF for exponential, Weibull and lognormal; a sum
    /// of exponentials for integer gamma shapes, Marsaglia-Tsang otherwise.
    double draw(RandomStream& rng) const {
        switch (family_) {
            case Family::Exponential: return -std::log(rng.uniform_open()) / p1_;
            case Family::Weibull: return p2_ * std::pow(-std::log(rng.uniform_open()), 1.0 / p1_);
            case Family::Lognormal: return std::exp(p1_ + p2_ * standard_normal(rng));
            case Family::Gamma: return draw_gamma(rng) / p2_;
        }
        return 0.0;
    }

private:
    Distribution(Family f, double p1, double p2) : family_(f), p1_(p1), p2_(p2) {}

    static void require_positive(double v, const char* what) {
        if (!std::isfinite(v) || v <= 0.0) {
            throw InvalidArgument(std::string(what) + " must be positive and finite");
        }
    }

    static double standard_normal(RandomStream& rng) {
        return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * rng.uniform_open());
    }

    // Unit-rate gamma variate.
    double draw_gamma(RandomStream& rng) const {
        const double shape = p1_;
        if (shape == std::floor(shape) && shape <= 32.0) {
            double log_prod = 0.0;
            for (int i = 0; i < static_cast<int>(shape); ++i) log_prod += std::log(rng.uniform_open());
            return -log_prod;
        }
        if (shape < 1.0) {
            const double g = marsaglia_tsang(shape + 1.0, rng);
            return g * std::pow(rng.uniform_open(), 1.0 / shape);
        }
        return marsaglia_tsang(shape, rng);
    }

    static double marsaglia_tsang(double shape, RandomStream& rng) {
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            const double z = standard_normal(rng);
            const double v0 = 1.0 + c * z;
            if (v0 <= 0.0) continue;
            const double v = v0 * v0 * v0;
            const double u = rng.uniform_open();
            if (std::log(u) < 0.5 * z * z + d - d * v + d * std::log(v)) return d * v;
        }
    }

    double quantile_from_survival(double q, double p) const {
        switch (family_) {
            case Family::Exponential: return (p < 0.5 ? -std::log1p(-p) : -std::log(q)) / p1_;
            case Family::Gamma:
                return (p < 0.5 ? boost::math::gamma_p_inv(p1_, p) : boost::math::gamma_q_inv(p1_, q)) / p2_;
            case Family::Weibull:
                return p2_ * std::pow(p < 0.5 ? -std::log1p(-p) : -std::log(q), 1.0 / p1_);
            case Family::Lognormal:
                return std::exp(p1_ + p2_ * std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * q));
        }
        return 0.0;
    }

    Family family_;
    double p1_;
    double p2_;
};

/// n i.i.d. draws from d, deterministic for a given stream state.
inline Sample sample_distribution(const Distribution& d, std::size_t n, RandomStream& rng) {
    if (n == 0) throw InvalidArgument("sample size must be at least 1");
    std::vector<double> v(n);
    for (auto& x : v) x = d.draw(rng);
    return Sample(std::move(v));
}

}  // namespace extropy
