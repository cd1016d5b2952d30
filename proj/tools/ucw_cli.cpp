#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ucw/harness.hpp"

namespace {

constexpr int exit_failed = 1;
constexpr int exit_usage = 2;

struct Flags {
    std::optional<std::uint64_t> seed;
    std::optional<ucw::Index> horizon;
    std::string format = "csv";
    std::string out;
    std::string plot;
    bool no_timing = false;
};

ucw::RunOptions options(const Flags& f) {
    ucw::RunOptions o;
    o.seed = f.seed;
    o.horizon = f.horizon;
    o.timing = !f.no_timing;
    if (!f.plot.empty()) o.plot_path = f.plot;
    return o;
}

void write_out(const std::string& path, const std::string& text) {
    if (path.empty()) std::cout << text;
    else ucw::write_text_file(path, text);
}

void add_run_flags(CLI::App* cmd, Flags& f) {
    cmd->add_option("--seed", f.seed, "override the config seed");
    cmd->add_option("--horizon", f.horizon, "override the iteration horizon");
    cmd->add_option("--format", f.format, "report format")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", f.out, "write the report here instead of stdout");
    cmd->add_flag("--no-timing", f.no_timing, "report wallclock_ms as 0 (byte-identical reruns)");
}

int cmd_run(const std::string& path, const Flags& f) {
    const auto rep = ucw::run_experiment(ucw::load_config(path), options(f));
    write_out(f.out, f.format == "json" ? ucw::report_json_text(rep) : ucw::report_csv(rep));
    if (!rep.passed) {
        std::cerr << rep.experiment_id << ": FAILED";
        for (const auto& p : rep.validation.problems) std::cerr << "; " << p;
        std::cerr << '\n';
    }
    return rep.passed ? 0 : exit_failed;
}

int cmd_suite(const std::string& dir, const Flags& f) {
    const auto summary = ucw::run_suite(dir, options(f));
    std::string text;
    if (f.format == "json") {
        ucw::Json j = ucw::Json::array();
        for (const auto& e : summary.entries) {
            if (e.report) j.push_back(ucw::to_json(*e.report));
            else j.push_back({{"path", e.path}, {"error", e.error}});
        }
        text = j.dump(2) + "\n";
    } else {
        std::ostringstream os;
        os << ucw::csv_header << '\n';
        for (const auto& e : summary.entries)
            if (e.report) ucw::write_csv_rows(os, *e.report);
        text = os.str();
    }
    write_out(f.out, text);
    for (const auto& e : summary.entries) {
        if (!e.error.empty()) std::cerr << e.path << ": ERROR " << e.error << '\n';
        else std::cerr << e.path << ": " << (e.report->passed ? "pass" : "FAIL") << '\n';
    }
    std::cerr << summary.passed() << "/" << summary.entries.size() << " experiments passed\n";
    return summary.all_passed() ? 0 : exit_failed;
}

int cmd_validate(const std::string& path, const Flags& f) {
    const auto v = ucw::validate_experiment(ucw::load_config(path), options(f));
    std::cout << "experiment " << v.experiment_id << ": b=" << v.b << " (" << v.b_source << "), horizon=" << v.horizon
              << '\n';
    std::cout << "formula,epsilon,bound,guarantee,branch\n";
    for (std::size_t i = 0; i < v.certificates.size(); ++i) {
        const auto& c = v.certificates[i];
        std::cout << ucw::to_string(c.formula) << ',' << v.cert_eps[i] << ',' << c.bound << ','
                  << ucw::to_string(c.guarantee) << ',' << ucw::to_string(c.branch) << '\n';
    }
    std::cout << "nonexpansive: " << v.empirical.nonexpansive_violations << " violations in "
              << v.empirical.nonexpansive_trials << " trials; modulus: " << v.empirical.modulus_violations
              << " violations in " << v.empirical.modulus_trials << " trials\n";
    for (const auto& p : v.empirical.problems) std::cout << "problem: " << p << '\n';
    std::cout << (v.empirical.ok ? "hypotheses ok" : "hypotheses FAILED") << '\n';
    return v.empirical.ok ? 0 : exit_failed;
}

int cmd_orbit(const std::string& path, ucw::Index steps, const Flags& f) {
    const auto cfg = ucw::load_config(path);
    const auto dump = ucw::dump_orbit(cfg, steps, options(f));
    write_out(f.out, dump.csv);
    if (!f.out.empty()) ucw::write_text_file(f.out + ".meta.json", dump.meta.dump(2) + "\n");
    else std::cerr << dump.meta.dump() << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fixed-point iterations on uniformly convex geodesic spaces and their rate certificates"};
    app.require_subcommand(1);
    Flags flags;
    std::string target;
    ucw::Index steps = 1000;
    bool dump = false;

    auto* run = app.add_subcommand("run", "run one experiment config");
    run->add_option("config", target, "experiment config (JSON)")->required();
    add_run_flags(run, flags);
    run->add_option("--plot", flags.plot, "write n,d(x_n,Tx_n) plot data here");

    auto* suite = app.add_subcommand("suite", "run every config in a directory");
    suite->add_option("dir", target, "directory of experiment configs")->required();
    add_run_flags(suite, flags);

    auto* validate = app.add_subcommand("validate", "hypothesis checks only");
    validate->add_option("config", target, "experiment config (JSON)")->required();
    validate->add_option("--horizon", flags.horizon, "override the iteration horizon");
    validate->add_option("--seed", flags.seed, "override the config seed");

    auto* orbit = app.add_subcommand("orbit", "dump an orbit as CSV");
    orbit->add_option("config", target, "experiment config (JSON)")->required();
    orbit->add_flag("--dump", dump, "write the orbit CSV")->required();
    orbit->add_option("--steps", steps, "number of steps");
    orbit->add_option("--out", flags.out, "CSV path; metadata goes to <path>.meta.json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_usage;
    }
    try {
        if (*run) return cmd_run(target, flags);
        if (*suite) return cmd_suite(target, flags);
        if (*validate) return cmd_validate(target, flags);
        if (*orbit) return cmd_orbit(target, steps, flags);
    } catch (const ucw::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_usage;
    } catch (const ucw::InputError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const ucw::IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_failed;
    }
    return exit_usage;
}
