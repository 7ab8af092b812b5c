#include <algorithm>
#include <map>
#include <set>

#include "qmem/error.hpp"
#include "qmem/harness/registry.hpp"

namespace qmem::harness {

Report build_report(const std::filesystem::path& dir) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) throw IoError("not a directory: " + dir.string());

    std::map<std::string, Json> manifests;
    for (const ExperimentInfo& e : registry()) {
        const fs::path m = dir / e.id / "manifest.json";
        if (fs::is_regular_file(m)) manifests[e.id] = Json::parse(read_text(m));
    }

    Report report;
    std::map<int, std::vector<Json>> checks_by_criterion;
    std::map<int, std::set<std::string>> runs_by_criterion;
    for (const ExperimentInfo& e : registry()) {
        auto it = manifests.find(e.id);
        if (it == manifests.end()) {
            report.missing.push_back(e.id);
            continue;
        }
        report.experiments_found.push_back(e.id);
        report.metrics[e.id] = it->second.value("metrics", Json::object());
        for (const Json& c : it->second.value("checks", Json::array())) {
            const int crit = c.value("criterion", 0);
            if (crit == 0) continue;
            checks_by_criterion[crit].push_back(c);
            runs_by_criterion[crit].insert(e.id);
        }
        for (int crit : e.criteria) runs_by_criterion[crit].insert(e.id);
    }

    for (const CriterionInfo& info : criteria()) {
        auto runs = runs_by_criterion.find(info.number);
        if (runs == runs_by_criterion.end()) continue;
        ReportRow row;
        row.criterion = info.number;
        row.description = info.description;
        row.experiments.assign(runs->second.begin(), runs->second.end());
        const auto& checks = checks_by_criterion[info.number];
        bool ok = !checks.empty();
        for (const Json& c : checks) {
            if (c.value("passed", false)) continue;
            ok = false;
            if (!row.detail.empty()) row.detail += "; ";
            row.detail += c.value("name", std::string()) + ": " + c.value("detail", std::string());
        }
        std::vector<std::string> expected;
        for (const ExperimentInfo& e : registry()) {
            if (std::find(e.criteria.begin(), e.criteria.end(), info.number) != e.criteria.end()) expected.push_back(e.id);
        }
        const bool partial = std::any_of(expected.begin(), expected.end(),
                                         [&](const std::string& id) { return !manifests.count(id); });
        row.status = ok ? (partial ? "PARTIAL" : "PASS") : "FAIL";
        if (partial) {
            if (!row.detail.empty()) row.detail += "; ";
            row.detail += "not all contributing runs present";
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

Table report_table(const Report& report) {
    Table t{"report", {"criterion", "status", "experiments", "description", "detail"}, {}};
    for (const ReportRow& r : report.rows) {
        std::string runs;
        for (const auto& e : r.experiments) runs += (runs.empty() ? "" : " ") + e;
        t.add({num(r.criterion), r.status, runs, r.description, r.detail});
    }
    return t;
}

}  // namespace qmem::harness
