#pragma once

// Monte Carlo bias / MSE harness.
//
// Each (n, replicate) pair draws lifetimes and censoring times from their own
// streams derived from (master_seed, n, replicate, purpose). Replicates write
// into preallocated slots and are reduced in replicate order, so a report is
// bit-identical for any worker count.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "extropy/censored.hpp"
#include "extropy/complete.hpp"
#include "extropy/distributions.hpp"
#include "extropy/error.hpp"
#include "extropy/oracles.hpp"
#include "extropy/rng.hpp"
#include "extropy/summation.hpp"

namespace extropy {

/// Estimators the harness can evaluate.
enum class Estimator { T1, T2, TT1, TT2, T1c, T2c };

inline constexpr std::string_view to_string(Estimator e) noexcept {
    switch (e) {
        case Estimator::T1: return "t1";
        case Estimator::T2: return "t2";
        case Estimator::TT1: return "tt1";
        case Estimator::TT2: return "tt2";
        case Estimator::T1c: return "t1c";
        case Estimator::T2c: return "t2c";
    }
    return "unknown";
}

inline std::optional<Estimator> parse_estimator(std::string_view s) {
    for (auto e : {Estimator::T1, Estimator::T2, Estimator::TT1, Estimator::TT2, Estimator::T1c, Estimator::T2c}) {
        if (to_string(e) == s) return e;
    }
    return std::nullopt;
}

inline constexpr bool targets_cre(Estimator e) noexcept {
    return e == Estimator::T1 || e == Estimator::TT1 || e == Estimator::T1c;
}

inline constexpr bool is_censored(Estimator e) noexcept {
    return e == Estimator::T1c || e == Estimator::T2c;
}

struct ExperimentSpec {
    Distribution distribution;
    std::vector<std::size_t> n_values;
    std::size_t replications = 2000;
    std::vector<Estimator> estimators;
    std::optional<double> censoring_target;  // P(T > C) for exponential censoring
    std::uint64_t master_seed = 0;
};

struct ReportRow {
    Estimator estimator;
    std::size_t n;
    double bias;
    double mse;
    double mc_standard_error_of_bias;
    double mc_standard_error_of_mse;
    std::size_t n_used_replicates;
    std::size_t n_degenerate_replicates;
    bool skip_rate_flagged;  // more than 5% of replicates skipped
    double truth;
    TruthSource truth_source;
};

struct ExperimentReport {
    std::string distribution;
    std::size_t replications;
    std::uint64_t master_seed;
    std::optional<double> censoring_rate;           // calibrated exponential rate
    std::vector<std::pair<std::size_t, double>> censored_fraction;  // realized, per n
    std::vector<ReportRow> rows;

    const ReportRow* find(Estimator e, std::size_t n) const {
        for (const auto& r : rows) {
            if (r.estimator == e && r.n == n) return &r;
        }
        return nullptr;
    }
};

struct RunOptions {
    unsigned threads = 1;
};

inline void validate(const ExperimentSpec& spec) {
    if (spec.replications < 100) throw InvalidArgument("replications must be at least 100");
    if (spec.n_values.empty()) throw InvalidArgument("at least one sample size is required");
    for (auto n : spec.n_values) {
        if (n < 2) throw InvalidArgument("sample sizes must be at least 2");
    }
    if (spec.estimators.empty()) throw InvalidArgument("at least one estimator is required");
    const bool any_censored = std::any_of(spec.estimators.begin(), spec.estimators.end(), is_censored);
    if (any_censored && !spec.censoring_target) {
        throw InvalidArgument("censored estimators need a censoring target fraction");
    }
    if (spec.censoring_target && !(*spec.censoring_target > 0.0 && *spec.censoring_target < 1.0)) {
        throw InvalidArgument("censoring target must lie in (0, 1)");
    }
}

namespace detail {

// Calls body(i) for i in [0, count) on up to `threads` workers, contiguous chunks.
template <class Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    const std::size_t chunk = (count + workers - 1) / workers;
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t b0 = w * chunk;
        const std::size_t b1 = std::min(count, b0 + chunk);
        if (b0 >= b1) break;
        pool.emplace_back([&body, b0, b1] {
            for (std::size_t i = b0; i < b1; ++i) body(i);
        });
    }
}

inline double evaluate(Estimator e, const SortedSample& lifetimes, const std::optional<CensoredSample>& cs) {
    switch (e) {
        case Estimator::T1: return estimate_cre(lifetimes).value;
        case Estimator::T2: return estimate_ce(lifetimes).value;
        case Estimator::TT1: return estimate_cre_plugin(lifetimes).value;
        case Estimator::TT2: return estimate_ce_plugin(lifetimes).value;
        case Estimator::T1c: return estimate_cre_censored(*cs).value;
        case Estimator::T2c: return estimate_ce_censored(*cs).value;
    }
    return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace detail

inline ExperimentReport run_experiment(const ExperimentSpec& spec, const RunOptions& opt = {}) {
    validate(spec);
    const auto& dist = spec.distribution;
    const Truth cre = cre_truth(dist);
    const Truth ce = ce_truth(dist);

    ExperimentReport report{dist.name(), spec.replications, spec.master_seed, std::nullopt, {}, {}};
    std::optional<Distribution> censoring;
    if (spec.censoring_target) {
        report.censoring_rate = calibrate_censoring_rate(dist, *spec.censoring_target);
        censoring = Distribution::exponential(*report.censoring_rate);
    }

    const std::size_t n_est = spec.estimators.size();
    const std::size_t reps = spec.replications;
    for (const std::size_t n : spec.n_values) {
        std::vector<double> values(n_est * reps, std::numeric_limits<double>::quiet_NaN());
        std::vector<std::size_t> censored_counts(reps, 0);

        detail::parallel_for(reps, opt.threads, [&](std::size_t r) {
            RandomStream life_rng(spec.master_seed, {n, r, static_cast<std::uint64_t>(StreamPurpose::Lifetimes)});
            const Sample lifetimes = sample_distribution(dist, n, life_rng);
            std::optional<CensoredSample> cs;
            if (censoring) {
                RandomStream cens_rng(spec.master_seed, {n, r, static_cast<std::uint64_t>(StreamPurpose::Censoring)});
                std::vector<Observation> obs(n);
                for (std::size_t i = 0; i < n; ++i) {
                    const double c = censoring->draw(cens_rng);
                    const double x = lifetimes[i];
                    obs[i] = {std::min(x, c), x <= c};
                }
                cs.emplace(std::move(obs));
                censored_counts[r] = cs->censored_count();
            }
            const SortedSample sorted = sort_sample(lifetimes);
            for (std::size_t k = 0; k < n_est; ++k) {
                try {
                    values[k * reps + r] = detail::evaluate(spec.estimators[k], sorted, cs);
                } catch (const InsufficientData&) {
                } catch (const IpcwDegenerate&) {
                }
            }
        });

        if (censoring) {
            std::size_t total = 0;
            for (auto c : censored_counts) total += c;
            report.censored_fraction.emplace_back(
                n, static_cast<double>(total) / (static_cast<double>(n) * static_cast<double>(reps)));
        }

        for (std::size_t k = 0; k < n_est; ++k) {
            const Estimator e = spec.estimators[k];
            const Truth& truth = targets_cre(e) ? cre : ce;
            CompensatedSum sum_err;
            CompensatedSum sum_sq;
            std::size_t used = 0;
            for (std::size_t r = 0; r < reps; ++r) {
                const double v = values[k * reps + r];
                if (std::isnan(v)) continue;
                const double err = v - truth.value;
                sum_err += err;
                sum_sq += err * err;
                ++used;
            }
            const std::size_t skipped = reps - used;
            ReportRow row{e, n, std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN(),
                          std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN(),
                          used, skipped, 20 * skipped > reps, truth.value, truth.source};
            if (used >= 2) {
                const double u = static_cast<double>(used);
                row.bias = sum_err.value() / u;
                row.mse = sum_sq.value() / u;
                CompensatedSum dev_err;
                CompensatedSum dev_sq;
                for (std::size_t r = 0; r < reps; ++r) {
                    const double v = values[k * reps + r];
                    if (std::isnan(v)) continue;
                    const double err = v - truth.value;
                    dev_err += (err - row.bias) * (err - row.bias);
                    dev_sq += (err * err - row.mse) * (err * err - row.mse);
                }
                row.mc_standard_error_of_bias = std::sqrt(dev_err.value() / (u - 1.0) / u);
                row.mc_standard_error_of_mse = std::sqrt(dev_sq.value() / (u - 1.0) / u);
            }
            report.rows.push_back(row);
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Reference tables

enum class TableId { Table1 = 1, Table2 = 2, Table3 = 3, Table4 = 4 };

struct ReferenceCell {
    double bias;
    double mse;
};

struct TableRow {
    std::string distribution;
    ReportRow reproduced;
    ReferenceCell reference;
    bool bias_agrees;
    bool mse_agrees;
    bool bias_informational;  // reference value known to disagree with theory
    bool mse_informational;
};

struct TableReport {
    TableId id;
    std::size_t replications;
    std::uint64_t master_seed;
    std::vector<ExperimentReport> experiments;  // one per distribution column
    std::vector<TableRow> rows;
};

struct TableColumn {
    Distribution distribution;
    // reference[estimator index][n index]
    std::vector<std::vector<ReferenceCell>> reference;
};

struct TableDefinition {
    TableId id;
    std::vector<std::size_t> n_values;
    std::vector<Estimator> estimators;
    std::optional<double> censoring_target;
    std::vector<TableColumn> columns;
    bool bias_informational;
    bool mse_informational;
};

/// Canonical configurations and reference values of the four simulation tables.
/// Reference biases are unsigned magnitudes.
/// The gamma column of table 4 is Gamma(shape 2, rate 2).
inline TableDefinition table_definition(TableId id) {
    const auto exp1 = Distribution::exponential(1.0);
    const auto gam21 = Distribution::gamma(2.0, 1.0);
    const auto wei21 = Distribution::weibull(2.0, 1.0);
    const auto ln01 = Distribution::lognormal(0.0, 1.0);
    const std::vector<std::size_t> small_n{10, 20, 30, 40, 50};
    const std::vector<std::size_t> censored_n{50, 75, 100, 200};
    switch (id) {
        case TableId::Table1:
            return {id, small_n, {Estimator::T1, Estimator::TT1}, std::nullopt,
                    {{exp1,
                      {{{0.00076, 0.00879}, {0.00074, 0.00416}, {0.00038, 0.00274}, {0.00018, 0.00211}, {0.00004, 0.00164}},
                       {{0.02541, 0.00776}, {0.01283, 0.00398}, {0.00861, 0.00263}, {0.01283, 0.00202}, {0.02541, 0.00160}}}},
                     {gam21,
                      {{{0.00199, 0.02647}, {0.00168, 0.01270}, {0.00124, 0.00851}, {0.00094, 0.00638}, {0.00036, 0.00507}},
                       {{0.19588, 0.05776}, {0.13943, 0.03153}, {0.11270, 0.02151}, {0.09819, 0.01632}, {0.08221, 0.01348}}}},
                     {wei21,
                      {{{0.00078, 0.00431}, {0.00058, 0.00217}, {0.00054, 0.00142}, {0.00017, 0.00104}, {0.00001, 0.00087}},
                       {{0.12641, 0.01951}, {0.09280, 0.01105}, {0.07621, 0.00764}, {0.06703, 0.00600}, {0.05987, 0.00484}}}},
                     {ln01,
                      {{{0.00115, 0.01765}, {0.00098, 0.00844}, {0.00049, 0.00546}, {0.00030, 0.00410}, {0.00024, 0.00325}},
                       {{0.08175, 0.02327}, {0.06710, 0.01264}, {0.05867, 0.00892}, {0.05367, 0.00705}, {0.04867, 0.00572}}}}},
                    false, false};
        case TableId::Table2:
            return {id, censored_n, {Estimator::T1c}, 0.2,
                    {{exp1, {{{0.08418, 0.00830}, {0.08287, 0.00788}, {0.08222, 0.00761}, {0.08199, 0.00741}}}},
                     {gam21, {{{0.17328, 0.04083}, {0.17321, 0.03822}, {0.17318, 0.03735}, {0.17309, 0.03585}}}},
                     {wei21, {{{0.08358, 0.00914}, {0.08128, 0.00852}, {0.07956, 0.00807}, {0.07942, 0.00762}}}},
                     {ln01, {{{0.26264, 0.07059}, {0.26235, 0.06979}, {0.26228, 0.06956}, {0.26189, 0.06895}}}}},
                    true, true};
        case TableId::Table3:
            return {id, small_n, {Estimator::T2, Estimator::TT2}, std::nullopt,
                    {{exp1,
                      {{{0.00118, 0.01473}, {0.00098, 0.00722}, {0.00050, 0.00491}, {0.00038, 0.00356}, {0.00037, 0.00297}},
                       {{0.03877, 0.01455}, {0.01938, 0.00719}, {0.00861, 0.00488}, {0.01283, 0.00357}, {0.02541, 0.00295}}}},
                     {gam21,
                      {{{0.00074, 0.02564}, {0.00052, 0.01243}, {0.00036, 0.00827}, {0.00032, 0.00649}, {0.00028, 0.00493}},
                       {{0.13489, 0.04161}, {0.08878, 0.02026}, {0.06992, 0.01344}, {0.05864, 0.01025}, {0.05128, 0.00783}}}},
                     {wei21,
                      {{{0.00098, 0.00845}, {0.00092, 0.00419}, {0.00031, 0.00281}, {0.00013, 0.00210}, {0.00001, 0.00165}},
                       {{0.15349, 0.03316}, {0.10558, 0.01656}, {0.08592, 0.01120}, {0.07303, 0.00828}, {0.06441, 0.00655}}}},
                     {ln01,
                      {{{0.00764, 0.35391}, {0.00430, 0.18710}, {0.00385, 0.12033}, {0.00064, 0.08892}, {0.00044, 0.07305}},
                       {{0.16508, 0.34391}, {0.10203, 0.18699}, {0.08764, 0.12357}, {0.07814, 0.09248}, {0.06620, 0.07591}}}}},
                    false, true};
        case TableId::Table4:
            return {id, censored_n, {Estimator::T2c}, 0.2,
                    {{exp1, {{{0.19183, 0.04122}, {0.19056, 0.03923}, {0.19048, 0.03834}, {0.18831, 0.03646}}}},
                     {Distribution::gamma(2.0, 2.0),
                      {{{0.28382, 0.09566}, {0.28137, 0.08928}, {0.27948, 0.08552}, {0.27659, 0.08010}}}},
                     {wei21, {{{0.11409, 0.02219}, {0.10925, 0.01876}, {0.10690, 0.01792}, {0.10540, 0.01546}}}},
                     {ln01, {{{0.00712, 0.04865}, {0.00639, 0.03171}, {0.00447, 0.02334}, {0.00227, 0.01142}}}}},
                    true, true};
    }
    throw InvalidArgument("unknown table");
}

struct TableOptions {
    std::size_t replications = 2000;
    std::uint64_t master_seed = 0;
    unsigned threads = 1;
};

/// Bias agrees when |reproduced bias| is within 3 MC standard errors (or 20%)
/// of the reference magnitude; MSE agrees within 3 MC standard errors or 10%.
inline TableReport reproduce_table(TableId id, const TableOptions& opt = {}) {
    const TableDefinition def = table_definition(id);
    TableReport out{id, opt.replications, opt.master_seed, {}, {}};
    for (const auto& col : def.columns) {
        ExperimentSpec spec{col.distribution, def.n_values, opt.replications, def.estimators,
                            def.censoring_target, opt.master_seed};
        ExperimentReport rep = run_experiment(spec, {opt.threads});
        for (std::size_t k = 0; k < def.estimators.size(); ++k) {
            for (std::size_t j = 0; j < def.n_values.size(); ++j) {
                const ReportRow* row = rep.find(def.estimators[k], def.n_values[j]);
                const ReferenceCell p = col.reference[k][j];
                const bool bias_ok = std::abs(std::abs(row->bias) - p.bias) <=
                                     std::max(3.0 * row->mc_standard_error_of_bias, 0.2 * p.bias);
                const bool mse_ok = std::abs(row->mse - p.mse) <=
                                    std::max(3.0 * row->mc_standard_error_of_mse, 0.1 * p.mse);
                out.rows.push_back({rep.distribution, *row, p, bias_ok, mse_ok, def.bias_informational,
                                    def.mse_informational});
            }
        }
        out.experiments.push_back(std::move(rep));
    }
    return out;
}

}  // namespace extropy
