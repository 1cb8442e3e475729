#pragma once

// CSV lifetime datasets and the vendored real-data fixtures.
//
// Format: header row, comma separated, LF or CRLF line endings. Column `time`
// is required (positive decimal); column `status` is optional (1 = event,
// 0 = censored). Other columns are ignored.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <nlohmann/json.hpp>

#include "extropy/error.hpp"
#include "extropy/sample.hpp"

#ifndef EXTROPY_FIXTURE_DIR
#define EXTROPY_FIXTURE_DIR "data/fixtures"
#endif

namespace extropy {

/// Parse failure located at a 1-based file line and a column name.
class DatasetError : public InvalidSample {
public:
    DatasetError(std::string source, std::size_t line, std::string column, const std::string& message)
        : InvalidSample(source + ": line " + std::to_string(line) + ", column '" + column + "': " + message),
          line_(line),
          column_(std::move(column)) {}

    std::size_t line() const noexcept { return line_; }
    const std::string& column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::string column_;
};

struct Dataset {
    std::string source;
    std::vector<double> times;
    std::optional<std::vector<int>> status;

    bool has_status() const noexcept { return status.has_value(); }
    std::size_t size() const noexcept { return times.size(); }

    std::size_t censored_count() const {
        if (!status) return 0;
        std::size_t c = 0;
        for (int s : *status) c += s == 0 ? 1 : 0;
        return c;
    }

    Sample complete() const { return Sample(times); }

    CensoredSample censored() const {
        if (!status) return CensoredSample::uncensored(complete());
        return CensoredSample::from_columns(times, *status);
    }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline std::vector<std::string_view> split_commas(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = line.find(',', start);
        out.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

}  // namespace detail

inline Dataset parse_dataset(std::istream& in, const std::string& source = "<input>") {
    Dataset ds;
    ds.source = source;
    std::string line;
    std::size_t line_no = 0;
    std::optional<std::size_t> time_col;
    std::optional<std::size_t> status_col;
    std::size_t n_cols = 0;

    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = detail::trim(line);
        if (line_no == 1 && view.starts_with("\xEF\xBB\xBF")) view.remove_prefix(3);
        if (view.empty()) continue;
        const auto fields = detail::split_commas(view);
        if (!time_col) {
            n_cols = fields.size();
            for (std::size_t c = 0; c < fields.size(); ++c) {
                if (fields[c] == "time") time_col = c;
                if (fields[c] == "status") status_col = c;
            }
            if (!time_col) throw DatasetError(source, line_no, "time", "header has no 'time' column");
            if (status_col) ds.status.emplace();
            continue;
        }
        if (fields.size() != n_cols) {
            throw DatasetError(source, line_no, "*",
                               "expected " + std::to_string(n_cols) + " fields, found " + std::to_string(fields.size()));
        }
        const auto tf = fields[*time_col];
        double t = 0.0;
        const auto [tp, tec] = std::from_chars(tf.data(), tf.data() + tf.size(), t);
        if (tec != std::errc{} || tp != tf.data() + tf.size()) {
            throw DatasetError(source, line_no, "time", "not a decimal number: '" + std::string(tf) + "'");
        }
        if (!std::isfinite(t) || t <= 0.0) {
            throw DatasetError(source, line_no, "time", "time must be positive and finite");
        }
        ds.times.push_back(t);
        if (status_col) {
            const auto sf = fields[*status_col];
            if (sf != "0" && sf != "1") {
                throw DatasetError(source, line_no, "status", "status must be 0 or 1, got '" + std::string(sf) + "'");
            }
            ds.status->push_back(sf == "1" ? 1 : 0);
        }
    }
    if (!time_col) throw DatasetError(source, line_no == 0 ? 1 : line_no, "time", "missing header row");
    if (ds.times.empty()) throw DatasetError(source, line_no, "time", "no data rows");
    return ds;
}

inline Dataset read_dataset(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidSample("cannot open dataset file " + path.string());
    return parse_dataset(in, path.string());
}

// ---------------------------------------------------------------------------
// Fixtures

/// Metadata sidecar `<name>.json` shipped next to each fixture.
struct FixtureInfo {
    std::string name;
    bool vendored = false;
    std::size_t rows = 0;
    std::size_t censored = 0;
    double tolerance = 0.0;
    std::map<std::string, double> expected;  // measure name -> reference estimate
    std::string source;
    std::string note;
};

/// Fixture cannot be used: unknown name or data not vendored.
class FixtureUnavailable : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

inline const std::vector<std::string>& known_fixtures() {
    static const std::vector<std::string> names{"ball-bearings", "aircraft-repair", "mechanical-components",
                                                "hodgkin", "brake-pads"};
    return names;
}

/// $EXTROPY_FIXTURE_DIR if set, otherwise the directory configured at build time.
inline std::filesystem::path default_fixture_dir() {
    if (const char* env = std::getenv("EXTROPY_FIXTURE_DIR"); env && *env) return env;
    return EXTROPY_FIXTURE_DIR;
}

inline FixtureInfo fixture_info(const std::string& name, const std::filesystem::path& dir = default_fixture_dir()) {
    if (std::find(known_fixtures().begin(), known_fixtures().end(), name) == known_fixtures().end()) {
        throw FixtureUnavailable("unknown fixture '" + name + "'");
    }
    std::ifstream in(dir / (name + ".json"));
    if (!in) throw FixtureUnavailable("fixture metadata missing: " + (dir / (name + ".json")).string());
    const auto j = nlohmann::json::parse(in);
    FixtureInfo info;
    info.name = name;
    info.vendored = j.value("vendored", false);
    info.rows = j.value("rows", std::size_t{0});
    info.censored = j.value("censored", std::size_t{0});
    info.tolerance = j.value("tolerance", 0.0);
    info.source = j.value("source", std::string{});
    info.note = j.value("note", std::string{});
    if (j.contains("expected")) {
        for (const auto& [k, v] : j.at("expected").items()) info.expected[k] = v.get<double>();
    }
    return info;
}

inline Dataset load_fixture(const std::string& name, const std::filesystem::path& dir = default_fixture_dir()) {
    const FixtureInfo info = fixture_info(name, dir);
    if (!info.vendored) {
        throw FixtureUnavailable("fixture '" + name + "' is not vendored: " + info.note);
    }
    Dataset ds = read_dataset(dir / (name + ".csv"));
    if (ds.size() != info.rows || ds.censored_count() != info.censored) {
        throw FixtureUnavailable("fixture '" + name + "' does not match its metadata row counts");
    }
    ds.source = name;
    return ds;
}

}  // namespace extropy
