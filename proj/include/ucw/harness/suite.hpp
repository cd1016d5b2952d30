#pragma once

#include <algorithm>
#include <filesystem>
#include <string>
#include <vector>

#include "ucw/harness/experiment.hpp"

namespace ucw {

struct SuiteEntry {
    std::string path;
    std::optional<ExperimentReport> report;
    std::string error;  ///< set when the config could not be loaded or run
};

struct SuiteSummary {
    std::vector<SuiteEntry> entries;

    std::size_t passed() const {
        return static_cast<std::size_t>(
            std::count_if(entries.begin(), entries.end(), [](const auto& e) { return e.report && e.report->passed; }));
    }
    bool all_passed() const { return !entries.empty() && passed() == entries.size(); }
};

/// Every *.json file of `dir`, sorted by name.
inline std::vector<std::string> suite_configs(const std::string& dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) throw InputError("not a directory: " + dir);
    std::vector<std::string> out;
    for (const auto& ent : fs::directory_iterator(dir))
        if (ent.is_regular_file() && ent.path().extension() == ".json") out.push_back(ent.path().string());
    std::sort(out.begin(), out.end());
    return out;
}

/// Runs every config; a config that fails to load or run is recorded and the
/// suite continues.
inline SuiteSummary run_suite(const std::string& dir, const RunOptions& opt = {}) {
    const auto files = suite_configs(dir);
    if (files.empty()) throw InputError("suite directory contains no .json configs: " + dir);
    SuiteSummary s;
    for (const auto& f : files) {
        SuiteEntry e;
        e.path = f;
        try {
            e.report = run_experiment(load_config(f), opt);
        } catch (const std::exception& ex) {
            e.error = ex.what();
        }
        s.entries.push_back(std::move(e));
    }
    return s;
}

} // namespace ucw
