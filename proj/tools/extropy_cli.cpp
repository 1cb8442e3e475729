// extropy: command-line front end.
//
//   extropy estimate  --input FILE | --fixture NAME  [--measures LIST] [--ci ...]
//   extropy simulate  --dist NAME --params LIST --n LIST | --table K
//   extropy fixtures
//
// Exit codes: 0 success, 1 I/O or internal failure, 2 invalid input or
// arguments, 3 estimator failure (too few observations or events, degenerate
// censoring weights, unstable bootstrap, numeric non-convergence).

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <unistd.h>

#include "CLI11.hpp"

#include "extropy/censored.hpp"
#include "extropy/complete.hpp"
#include "extropy/dataset.hpp"
#include "extropy/error.hpp"
#include "extropy/harness.hpp"
#include "extropy/inference.hpp"
#include "extropy/report.hpp"
#include "extropy/version.hpp"

namespace {

using namespace extropy;

constexpr int kExitIo = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitEstimator = 3;

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

template <class T>
std::vector<T> parse_numbers(const std::string& s, const char* what) {
    std::vector<T> out;
    for (const auto& item : split_list(s)) {
        std::size_t pos = 0;
        try {
            if constexpr (std::is_floating_point_v<T>) {
                out.push_back(static_cast<T>(std::stod(item, &pos)));
            } else {
                if (!item.empty() && item[0] == '-') throw std::invalid_argument(item);
                out.push_back(static_cast<T>(std::stoull(item, &pos)));
            }
        } catch (const std::exception&) {
            throw InvalidArgument(std::string("invalid ") + what + ": '" + item + "'");
        }
        if (pos != item.size()) throw InvalidArgument(std::string("invalid ") + what + ": '" + item + "'");
    }
    return out;
}

// --seed wins; otherwise EXTROPY_SEED; otherwise 0.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("EXTROPY_SEED"); env && *env) {
        const auto v = parse_numbers<std::uint64_t>(env, "EXTROPY_SEED");
        if (v.size() != 1) throw InvalidArgument("invalid EXTROPY_SEED");
        return v.front();
    }
    return 0;
}

// Writes to PATH via a temporary file and rename, or to stdout when path is empty.
void emit(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content << std::flush;
        return;
    }
    const std::filesystem::path target(path);
    std::filesystem::path tmp = target;
    tmp += ".tmp" + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
        if (!out.flush()) throw std::runtime_error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, target);
}

unsigned default_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

// ---------------------------------------------------------------------------

struct EstimateArgs {
    std::string input;
    std::string fixture;
    std::string measures = "cre,ce";
    std::optional<double> t;
    bool censored = false;
    std::string ci = "none";
    double level = 0.95;
    std::size_t boot = 1000;
    std::optional<std::uint64_t> seed;
    std::string output;
    unsigned threads = 1;
};

int run_estimate(const EstimateArgs& a) {
    const Dataset ds = a.fixture.empty() ? read_dataset(a.input) : load_fixture(a.fixture);
    if (a.censored && !ds.has_status()) {
        throw InvalidArgument("--censored requires a 'status' column in " + ds.source);
    }
    std::vector<Measure> measures;
    for (const auto& name : split_list(a.measures)) {
        const auto m = parse_measure(name);
        if (!m) throw InvalidArgument("unknown measure '" + name + "'");
        if (is_dynamic(*m) && !a.t) throw InvalidArgument("measure '" + name + "' requires --t");
        measures.push_back(*m);
    }
    if (measures.empty()) throw InvalidArgument("no measures requested");
    if (a.ci != "none" && a.ci != "projection" && a.ci != "bootstrap") {
        throw InvalidArgument("--ci must be none, projection or bootstrap");
    }
    const bool censored = ds.has_status();
    if (censored && a.ci == "projection") {
        throw InvalidArgument("projection intervals need complete data; use --ci bootstrap");
    }
    const std::uint64_t seed = resolve_seed(a.seed);

    std::ostringstream out;
    for (const Measure m : measures) {
        const bool pair_measure = m == Measure::Cre || m == Measure::Ce;
        if (censored && !pair_measure && ds.censored_count() > 0) {
            throw InvalidArgument("measure '" + std::string(to_string(m)) + "' needs complete data");
        }
        EstimateResult est = [&] {
            if (censored && pair_measure) {
                const auto cs = ds.censored();
                return m == Measure::Cre ? estimate_cre_censored(cs) : estimate_ce_censored(cs);
            }
            return estimate(m, sort_sample(ds.complete()), a.t);
        }();
        std::optional<InferenceResult> inf;
        std::optional<std::uint64_t> seed_used;
        if (pair_measure && a.ci == "projection") {
            inf = variance_complete(ds.complete(), m, a.level);
        } else if (pair_measure && a.ci == "bootstrap") {
            inf = bootstrap_censored(ds.censored(), m, {a.boot, a.level, seed, a.threads});
            seed_used = seed;
        }
        out << report_document(est, censored && pair_measure, inf, seed_used).dump() << '\n';
    }
    emit(a.output, out.str());
    return 0;
}

// ---------------------------------------------------------------------------

struct SimulateArgs {
    std::string dist;
    std::string params;
    std::string n_values = "10,20,30,40,50";
    std::size_t reps = 2000;
    bool full = false;
    std::optional<double> censor_frac;
    std::string estimators;
    std::optional<std::uint64_t> seed;
    std::optional<int> table;
    std::string format = "csv";
    std::string output;
    unsigned threads = 0;
};

Distribution make_distribution(const std::string& name, const std::vector<double>& p) {
    auto arg = [&](std::size_t i, double fallback) { return i < p.size() ? p[i] : fallback; };
    std::size_t max_params = 2;
    std::optional<Distribution> d;
    if (name == "exp" || name == "exponential") {
        max_params = 1;
        d = Distribution::exponential(arg(0, 1.0));
    } else if (name == "gamma") {
        d = Distribution::gamma(arg(0, 2.0), arg(1, 1.0));
    } else if (name == "weibull") {
        d = Distribution::weibull(arg(0, 2.0), arg(1, 1.0));
    } else if (name == "lognormal") {
        d = Distribution::lognormal(arg(0, 0.0), arg(1, 1.0));
    } else {
        throw InvalidArgument("unknown distribution '" + name + "' (exp, gamma, weibull, lognormal)");
    }
    if (p.size() > max_params) throw InvalidArgument("too many parameters for " + name);
    return *d;
}

int run_simulate(const SimulateArgs& a) {
    if (a.format != "csv" && a.format != "json") throw InvalidArgument("--format must be csv or json");
    const std::size_t reps = a.full ? 10000 : a.reps;
    const unsigned threads = a.threads == 0 ? default_threads() : a.threads;
    const std::uint64_t seed = resolve_seed(a.seed);
    std::ostringstream out;

    if (a.table) {
        if (*a.table < 1 || *a.table > 4) throw InvalidArgument("--table must be 1, 2, 3 or 4");
        if (reps < 100) throw InvalidArgument("replications must be at least 100");
        const TableReport rep = reproduce_table(static_cast<TableId>(*a.table), {reps, seed, threads});
        if (a.format == "json") {
            out << to_json(rep).dump(2) << '\n';
        } else {
            write_csv(out, rep);
        }
        emit(a.output, out.str());
        return 0;
    }

    if (a.dist.empty()) throw InvalidArgument("--dist or --table is required");
    const Distribution dist = make_distribution(a.dist, parse_numbers<double>(a.params, "parameter"));
    ExperimentSpec spec{dist, parse_numbers<std::size_t>(a.n_values, "sample size"), reps, {}, a.censor_frac, seed};
    std::string est_list = a.estimators;
    if (est_list.empty()) est_list = a.censor_frac ? "t1c,t2c" : "t1,t2";
    for (const auto& name : split_list(est_list)) {
        const auto e = parse_estimator(name);
        if (!e) throw InvalidArgument("unknown estimator '" + name + "' (t1, t2, tt1, tt2, t1c, t2c)");
        spec.estimators.push_back(*e);
    }
    const ExperimentReport rep = run_experiment(spec, {threads});
    if (a.format == "json") {
        out << to_json(rep).dump(2) << '\n';
    } else {
        write_csv(out, rep);
    }
    emit(a.output, out.str());
    return 0;
}

int run_fixtures() {
    for (const auto& name : known_fixtures()) {
        const FixtureInfo info = fixture_info(name);
        std::cout << name << '\t' << info.rows << " rows\t" << info.censored << " censored\t"
                  << (info.vendored ? "vendored" : "not vendored") << '\t' << info.source << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nonparametric estimation of cumulative residual and cumulative extropy"};
    app.set_version_flag("--version", std::string(extropy::kVersion));
    app.require_subcommand(1);

    EstimateArgs est;
    auto* cmd_est = app.add_subcommand("estimate", "Estimate extropy measures for a dataset");
    auto* in_opt = cmd_est->add_option("--input", est.input, "CSV file with a 'time' and optional 'status' column");
    auto* fx_opt = cmd_est->add_option("--fixture", est.fixture, "Vendored dataset name (see 'extropy fixtures')");
    in_opt->excludes(fx_opt);
    cmd_est->add_option("--measures", est.measures,
                        "Comma list: cre, ce, cre-plugin, ce-plugin, dyn-surv, dyn-cum, w-surv, w-cum, "
                        "w-dyn-surv, w-dyn-cum")
        ->capture_default_str();
    cmd_est->add_option("--t", est.t, "Threshold for dynamic measures");
    cmd_est->add_flag("--censored", est.censored, "Require a status column");
    cmd_est->add_option("--ci", est.ci, "Interval: none, projection, bootstrap")->capture_default_str();
    cmd_est->add_option("--level", est.level, "Confidence level")->capture_default_str();
    cmd_est->add_option("--boot", est.boot, "Bootstrap replicates")->capture_default_str();
    cmd_est->add_option("--seed", est.seed, "Bootstrap seed (overrides EXTROPY_SEED)");
    cmd_est->add_option("--output", est.output, "Write JSON lines here instead of stdout");
    cmd_est->add_option("--threads", est.threads, "Bootstrap worker threads")->capture_default_str();

    SimulateArgs sim;
    auto* cmd_sim = app.add_subcommand("simulate", "Monte Carlo bias and MSE study");
    cmd_sim->add_option("--dist", sim.dist, "exp, gamma, weibull, lognormal");
    cmd_sim->add_option("--params", sim.params, "Comma list of distribution parameters");
    cmd_sim->add_option("--n", sim.n_values, "Comma list of sample sizes")->capture_default_str();
    cmd_sim->add_option("--reps", sim.reps, "Replications (minimum 100)")->capture_default_str();
    cmd_sim->add_flag("--full", sim.full, "Use 10000 replications");
    cmd_sim->add_option("--censor-frac", sim.censor_frac, "Target censored fraction P(T > C)");
    cmd_sim->add_option("--estimators", sim.estimators, "Comma list: t1, t2, tt1, tt2, t1c, t2c");
    cmd_sim->add_option("--seed", sim.seed, "Master seed (overrides EXTROPY_SEED)");
    cmd_sim->add_option("--table", sim.table, "Reproduce reference table 1-4");
    cmd_sim->add_option("--format", sim.format, "csv or json")->capture_default_str();
    cmd_sim->add_option("--output", sim.output, "Write report here instead of stdout");
    cmd_sim->add_option("--threads", sim.threads, "Worker threads (0 = all cores)")->capture_default_str();

    app.add_subcommand("fixtures", "List vendored datasets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalid;
    }

    try {
        if (cmd_est->parsed()) {
            if (est.input.empty() && est.fixture.empty()) throw InvalidArgument("--input or --fixture is required");
            return run_estimate(est);
        }
        if (cmd_sim->parsed()) return run_simulate(sim);
        return run_fixtures();
    } catch (const InvalidSample& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitEstimator;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    }
}
