#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qmem/harness/config.hpp"
#include "qmem/harness/io.hpp"

namespace qmem::harness {

/// One verdict. criterion 0 marks an informational check that no acceptance
/// criterion depends on.
struct Check {
    int criterion = 0;
    std::string name;
    bool passed = false;
    std::string detail;
};

struct Figure {
    std::string name;  // file stem
    std::string svg;
};

struct ExperimentResult {
    std::vector<Table> tables;
    Json metrics = Json::object();
    std::vector<Check> checks;
    std::vector<Figure> figures;
    Json timings = Json::object();
    double wallclock_s = 0.0;

    bool passed() const;
};

using Runner = std::function<ExperimentResult(const ExperimentConfig&)>;

struct ExperimentInfo {
    std::string id;
    std::string title;
    std::vector<int> criteria;
    Json defaults = Json::object();
    Json full_overrides = Json::object();
    Runner run;
};

const std::vector<ExperimentInfo>& registry();
/// Throws InvalidArgument listing the known ids.
const ExperimentInfo& find_experiment(std::string_view id);

/// Acceptance criteria: description and runtime budget (seconds, if any).
struct CriterionInfo {
    int number = 0;
    std::string description;
    std::optional<double> budget_s;
};
const std::vector<CriterionInfo>& criteria();

ExperimentConfig make_config(std::string_view id, const Json& overrides = Json::object(), bool full = false,
                             int workers = 1);

/// Runs in memory and appends runtime-budget checks.
ExperimentResult run_experiment(const ExperimentConfig& config);

struct RunRecord {
    ExperimentResult result;
    Json manifest;
    std::filesystem::path dir;
};

/// Runs and writes <out_root>/<id>/{*.csv, manifest.json, *.svg}.
RunRecord execute(const ExperimentConfig& config, const std::filesystem::path& out_root, bool svg);

/// Hash of everything that determines the outputs.
std::string input_hash(const ExperimentConfig& config);

// ---- report -----------------------------------------------------------------

struct ReportRow {
    int criterion = 0;
    std::string description;
    std::vector<std::string> experiments;
    std::string status;  // PASS, FAIL, MISSING
    std::string detail;
};

struct Report {
    std::vector<ReportRow> rows;                 // criteria with at least one run present
    std::vector<std::string> missing;            // registered ids without a manifest
    std::vector<std::string> experiments_found;
    Json metrics = Json::object();               // id -> metrics
};

Report build_report(const std::filesystem::path& dir);
Table report_table(const Report& report);

}  // namespace qmem::harness
