#pragma once

// Serialization of estimates and experiment reports (JSON lines and CSV).

#include <cmath>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "extropy/complete.hpp"
#include "extropy/harness.hpp"
#include "extropy/inference.hpp"
#include "extropy/version.hpp"

namespace extropy {

inline constexpr std::string_view estimator_method(Measure m, bool censored) {
    if (censored) return "ipcw-u-statistic";
    switch (m) {
        case Measure::CrePlugin:
        case Measure::CePlugin: return "plug-in";
        default: return "u-statistic";
    }
}

/// One estimate as a report document:
/// {measure, estimate, std_error?, ci?, level?, method, n, n_events, seed?, t?, tool_version}.
/// Without inference `method` names the point estimator; with inference it is
/// "projection" or "bootstrap".
inline nlohmann::json report_document(const EstimateResult& est, bool censored,
                                      const std::optional<InferenceResult>& inf = std::nullopt,
                                      std::optional<std::uint64_t> seed = std::nullopt) {
    nlohmann::json j;
    j["measure"] = std::string(to_string(est.measure));
    j["estimate"] = est.value;
    if (inf) {
        j["std_error"] = inf->std_error;
        j["ci"] = {inf->ci_lower, inf->ci_upper};
        j["level"] = inf->level;
        j["method"] = std::string(to_string(inf->method));
        if (inf->n_boot) {
            j["n_boot"] = *inf->n_boot;
            j["n_skipped"] = inf->n_skipped;
        }
    } else {
        j["method"] = std::string(estimator_method(est.measure, censored));
    }
    j["n"] = est.n_used;
    j["n_events"] = est.n_events;
    if (seed) j["seed"] = *seed;
    if (est.threshold) j["t"] = *est.threshold;
    j["tool_version"] = kVersion;
    return j;
}

namespace detail {

inline std::string csv_number(double v) {
    if (std::isnan(v)) return "";
    std::ostringstream os;
    os << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
    return os.str();
}

}  // namespace detail

inline nlohmann::json to_json(const ReportRow& r) {
    auto num = [](double v) { return std::isnan(v) ? nlohmann::json(nullptr) : nlohmann::json(v); };
    return {{"estimator", std::string(to_string(r.estimator))},
            {"n", r.n},
            {"bias", num(r.bias)},
            {"mse", num(r.mse)},
            {"mc_se", num(r.mc_standard_error_of_bias)},
            {"mse_mc_se", num(r.mc_standard_error_of_mse)},
            {"used", r.n_used_replicates},
            {"skipped", r.n_degenerate_replicates},
            {"skip_rate_flagged", r.skip_rate_flagged},
            {"truth", r.truth},
            {"truth_source", std::string(to_string(r.truth_source))}};
}

inline nlohmann::json to_json(const ExperimentReport& rep) {
    nlohmann::json j;
    j["distribution"] = rep.distribution;
    j["replications"] = rep.replications;
    j["master_seed"] = rep.master_seed;
    if (rep.censoring_rate) {
        j["censoring_rate"] = *rep.censoring_rate;
        nlohmann::json frac = nlohmann::json::object();
        for (const auto& [n, f] : rep.censored_fraction) frac[std::to_string(n)] = f;
        j["censored_fraction"] = frac;
    }
    j["rows"] = nlohmann::json::array();
    for (const auto& r : rep.rows) j["rows"].push_back(to_json(r));
    j["tool_version"] = kVersion;
    return j;
}

inline nlohmann::json to_json(const TableReport& t) {
    nlohmann::json j;
    j["table"] = static_cast<int>(t.id);
    j["replications"] = t.replications;
    j["master_seed"] = t.master_seed;
    j["experiments"] = nlohmann::json::array();
    for (const auto& e : t.experiments) j["experiments"].push_back(to_json(e));
    j["comparison"] = nlohmann::json::array();
    for (const auto& r : t.rows) {
        auto row = to_json(r.reproduced);
        row["distribution"] = r.distribution;
        row["reference_bias"] = r.reference.bias;
        row["reference_mse"] = r.reference.mse;
        row["bias_agrees"] = r.bias_agrees;
        row["mse_agrees"] = r.mse_agrees;
        row["bias_informational"] = r.bias_informational;
        row["mse_informational"] = r.mse_informational;
        j["comparison"].push_back(row);
    }
    j["tool_version"] = kVersion;
    return j;
}

inline constexpr const char* kExperimentCsvHeader =
    "distribution,estimator,n,bias,mse,mc_se,skipped,censoring_rate,censored_fraction";

inline void write_csv(std::ostream& os, const ExperimentReport& rep, bool header = true) {
    if (header) os << kExperimentCsvHeader << '\n';
    for (const auto& r : rep.rows) {
        std::string frac;
        for (const auto& [n, f] : rep.censored_fraction) {
            if (n == r.n) frac = detail::csv_number(f);
        }
        os << rep.distribution << ',' << to_string(r.estimator) << ',' << r.n << ','
           << detail::csv_number(r.bias) << ',' << detail::csv_number(r.mse) << ','
           << detail::csv_number(r.mc_standard_error_of_bias) << ',' << r.n_degenerate_replicates << ','
           << (rep.censoring_rate ? detail::csv_number(*rep.censoring_rate) : "") << ',' << frac << '\n';
    }
}

inline void write_csv(std::ostream& os, const TableReport& t) {
    os << kExperimentCsvHeader
       << ",reference_bias,reference_mse,bias_agrees,mse_agrees,bias_informational,mse_informational\n";
    for (const auto& row : t.rows) {
        const auto& r = row.reproduced;
        const ExperimentReport* rep = nullptr;
        for (const auto& e : t.experiments) {
            if (e.distribution == row.distribution) rep = &e;
        }
        std::string frac;
        std::string rate;
        if (rep && rep->censoring_rate) {
            rate = detail::csv_number(*rep->censoring_rate);
            for (const auto& [n, f] : rep->censored_fraction) {
                if (n == r.n) frac = detail::csv_number(f);
            }
        }
        os << row.distribution << ',' << to_string(r.estimator) << ',' << r.n << ','
           << detail::csv_number(r.bias) << ',' << detail::csv_number(r.mse) << ','
           << detail::csv_number(r.mc_standard_error_of_bias) << ',' << r.n_degenerate_replicates << ',' << rate
           << ',' << frac << ',' << detail::csv_number(row.reference.bias) << ','
           << detail::csv_number(row.reference.mse) << ',' << (row.bias_agrees ? 1 : 0) << ','
           << (row.mse_agrees ? 1 : 0) << ',' << (row.bias_informational ? 1 : 0) << ','
           << (row.mse_informational ? 1 : 0) << '\n';
    }
}

}  // namespace extropy
