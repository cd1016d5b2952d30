#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "ucw/harness/config.hpp"

namespace ucw {

/// One (formula, eps) evaluation with its empirical check.
struct ReportRow {
    std::string formula;
    double epsilon = 0.0;
    Index bound = 0;
    std::string guarantee;   ///< "for_all" or "exists"
    std::string branch;      ///< "main", "otherwise" or "boundary_max"
    std::string diagnostic;  ///< residual the guarantee speaks about
    Index k = 0;
    std::optional<Index> inner;
    std::optional<Index> first_hit;  ///< first n >= k with the diagnostic below eps
    std::optional<bool> tail_ok;     ///< for_all only: every n in [bound, horizon] below eps
    std::optional<double> margin;    ///< first_hit / bound, recorded and never asserted
    bool passed = false;
    Json inputs = Json::object();

    friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

struct ValidationSummary {
    std::size_t nonexpansive_trials = 0;
    std::size_t nonexpansive_violations = 0;
    double max_excess = 0.0;
    std::size_t domain_escapes = 0;
    std::optional<double> fixed_point_residual;
    std::size_t modulus_trials = 0;
    std::size_t modulus_violations = 0;
    double modulus_worst_margin = 0.0;
    std::vector<std::string> problems;
    bool ok = true;

    friend bool operator==(const ValidationSummary&, const ValidationSummary&) = default;
};

struct OrbitSummary {
    Index steps = 0;
    double initial_residual = 0.0;
    double final_residual = 0.0;
    double min_residual = 0.0;
    double max_distance_from_x0 = 0.0;
    std::optional<double> final_distance_to_p;
    std::size_t lemma41_violations = 0;
    Json lemma41_breakdown = Json::object();
    std::size_t descent_checks = 0;

    friend bool operator==(const OrbitSummary&, const OrbitSummary&) = default;
};

struct ExperimentReport {
    std::string experiment_id;
    std::string space;
    std::string mapping;
    std::string schedule;
    std::string modulus;
    double b = 0.0;
    std::string b_source;
    Index horizon = 0;
    std::uint64_t seed = 0;
    ValidationSummary validation;
    OrbitSummary orbit;
    std::vector<ReportRow> rows;
    bool passed = false;
    double wallclock_ms = 0.0;

    friend bool operator==(const ExperimentReport&, const ExperimentReport&) = default;
};

namespace detail {

template <class T>
Json opt_json(const std::optional<T>& v) {
    return v ? Json(*v) : Json(nullptr);
}

template <class T>
std::optional<T> json_opt(const Json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<T>();
}

inline std::string fmt_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

} // namespace detail

inline Json to_json(const ReportRow& r) {
    Json j;
    j["formula"] = r.formula;
    j["epsilon"] = r.epsilon;
    j["bound"] = r.bound;
    j["guarantee"] = r.guarantee;
    j["branch"] = r.branch;
    j["diagnostic"] = r.diagnostic;
    j["k"] = r.k;
    j["inner"] = detail::opt_json(r.inner);
    j["first_hit"] = detail::opt_json(r.first_hit);
    j["tail_ok"] = detail::opt_json(r.tail_ok);
    j["margin"] = detail::opt_json(r.margin);
    j["passed"] = r.passed;
    j["inputs"] = r.inputs;
    return j;
}

inline ReportRow row_from_json(const Json& j) {
    ReportRow r;
    r.formula = j.at("formula").get<std::string>();
    r.epsilon = j.at("epsilon").get<double>();
    r.bound = j.at("bound").get<Index>();
    r.guarantee = j.at("guarantee").get<std::string>();
    r.branch = j.at("branch").get<std::string>();
    r.diagnostic = j.at("diagnostic").get<std::string>();
    r.k = j.at("k").get<Index>();
    r.inner = detail::json_opt<Index>(j, "inner");
    r.first_hit = detail::json_opt<Index>(j, "first_hit");
    r.tail_ok = detail::json_opt<bool>(j, "tail_ok");
    r.margin = detail::json_opt<double>(j, "margin");
    r.passed = j.at("passed").get<bool>();
    r.inputs = j.at("inputs");
    return r;
}

inline Json to_json(const ExperimentReport& r) {
    Json j;
    j["experiment_id"] = r.experiment_id;
    j["space"] = r.space;
    j["mapping"] = r.mapping;
    j["schedule"] = r.schedule;
    j["modulus"] = r.modulus;
    j["b"] = r.b;
    j["b_source"] = r.b_source;
    j["horizon"] = r.horizon;
    j["seed"] = r.seed;
    const auto& v = r.validation;
    j["validation"] = {{"nonexpansive_trials", v.nonexpansive_trials},
                       {"nonexpansive_violations", v.nonexpansive_violations},
                       {"max_excess", v.max_excess},
                       {"domain_escapes", v.domain_escapes},
                       {"fixed_point_residual", detail::opt_json(v.fixed_point_residual)},
                       {"modulus_trials", v.modulus_trials},
                       {"modulus_violations", v.modulus_violations},
                       {"modulus_worst_margin", v.modulus_worst_margin},
                       {"problems", v.problems},
                       {"ok", v.ok}};
    const auto& o = r.orbit;
    j["orbit"] = {{"steps", o.steps},
                  {"initial_residual", o.initial_residual},
                  {"final_residual", o.final_residual},
                  {"min_residual", o.min_residual},
                  {"max_distance_from_x0", o.max_distance_from_x0},
                  {"final_distance_to_p", detail::opt_json(o.final_distance_to_p)},
                  {"lemma41_violations", o.lemma41_violations},
                  {"lemma41_breakdown", o.lemma41_breakdown},
                  {"descent_checks", o.descent_checks}};
    j["rows"] = Json::array();
    for (const auto& row : r.rows) j["rows"].push_back(to_json(row));
    j["passed"] = r.passed;
    j["wallclock_ms"] = r.wallclock_ms;
    return j;
}

inline ExperimentReport report_from_json(const Json& j) {
    ExperimentReport r;
    r.experiment_id = j.at("experiment_id").get<std::string>();
    r.space = j.at("space").get<std::string>();
    r.mapping = j.at("mapping").get<std::string>();
    r.schedule = j.at("schedule").get<std::string>();
    r.modulus = j.at("modulus").get<std::string>();
    r.b = j.at("b").get<double>();
    r.b_source = j.at("b_source").get<std::string>();
    r.horizon = j.at("horizon").get<Index>();
    r.seed = j.at("seed").get<std::uint64_t>();
    const Json& v = j.at("validation");
    r.validation.nonexpansive_trials = v.at("nonexpansive_trials").get<std::size_t>();
    r.validation.nonexpansive_violations = v.at("nonexpansive_violations").get<std::size_t>();
    r.validation.max_excess = v.at("max_excess").get<double>();
    r.validation.domain_escapes = v.at("domain_escapes").get<std::size_t>();
    r.validation.fixed_point_residual = detail::json_opt<double>(v, "fixed_point_residual");
    r.validation.modulus_trials = v.at("modulus_trials").get<std::size_t>();
    r.validation.modulus_violations = v.at("modulus_violations").get<std::size_t>();
    r.validation.modulus_worst_margin = v.at("modulus_worst_margin").get<double>();
    r.validation.problems = v.at("problems").get<std::vector<std::string>>();
    r.validation.ok = v.at("ok").get<bool>();
    const Json& o = j.at("orbit");
    r.orbit.steps = o.at("steps").get<Index>();
    r.orbit.initial_residual = o.at("initial_residual").get<double>();
    r.orbit.final_residual = o.at("final_residual").get<double>();
    r.orbit.min_residual = o.at("min_residual").get<double>();
    r.orbit.max_distance_from_x0 = o.at("max_distance_from_x0").get<double>();
    r.orbit.final_distance_to_p = detail::json_opt<double>(o, "final_distance_to_p");
    r.orbit.lemma41_violations = o.at("lemma41_violations").get<std::size_t>();
    r.orbit.lemma41_breakdown = o.at("lemma41_breakdown");
    r.orbit.descent_checks = o.at("descent_checks").get<std::size_t>();
    for (const auto& row : j.at("rows")) r.rows.push_back(row_from_json(row));
    r.passed = j.at("passed").get<bool>();
    r.wallclock_ms = j.at("wallclock_ms").get<double>();
    return r;
}

inline constexpr const char* csv_header =
    "experiment_id,formula,epsilon,bound,guarantee_kind,first_hit,tail_ok,lemma41_violations,wallclock_ms";

/// One line per (eps, formula) row, without the header.
inline void write_csv_rows(std::ostream& os, const ExperimentReport& r) {
    for (const auto& row : r.rows) {
        os << r.experiment_id << ',' << row.formula << ',' << detail::fmt_double(row.epsilon) << ',' << row.bound << ','
           << row.guarantee << ',';
        if (row.first_hit) os << *row.first_hit;
        os << ',';
        if (row.tail_ok) os << (*row.tail_ok ? "true" : "false");
        os << ',' << r.orbit.lemma41_violations << ',' << detail::fmt_double(r.wallclock_ms) << '\n';
    }
}

inline std::string report_csv(const ExperimentReport& r) {
    std::ostringstream os;
    os << csv_header << '\n';
    write_csv_rows(os, r);
    return os.str();
}

inline std::string report_json_text(const ExperimentReport& r) { return to_json(r).dump(2) + "\n"; }

enum class ReportFormat { csv, json };

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << text;
    if (!out) throw IoError("write failed for " + path);
}

inline void emit_report(const ExperimentReport& r, ReportFormat format, const std::string& path) {
    write_text_file(path, format == ReportFormat::csv ? report_csv(r) : report_json_text(r));
}

} // namespace ucw
