#include <cstdio>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "qmem/error.hpp"
#include "qmem/harness/registry.hpp"

using namespace qmem::harness;

namespace {

int cmd_list() {
    for (const ExperimentInfo& e : registry()) {
        std::string crit;
        for (int c : e.criteria) crit += (crit.empty() ? "" : ",") + std::to_string(c);
        std::printf("%-20s %-8s %s\n", e.id.c_str(), crit.empty() ? "-" : crit.c_str(), e.title.c_str());
    }
    return 0;
}

struct RunArgs {
    std::string id;
    std::optional<int> seeds;
    bool full = false;
    bool check = false;
    bool svg = false;
    std::string out;
    int workers = 0;
    std::vector<std::string> sets;
    std::string config_file;
};

int cmd_run(const RunArgs& a) {
    const ExperimentInfo& info = find_experiment(a.id);
    Json overrides = a.config_file.empty() ? Json::object() : load_overrides(a.config_file);
    for (const std::string& s : a.sets) overrides.update(parse_assignment(s));
    if (a.seeds) {
        if (!info.defaults.contains("seeds")) {
            throw qmem::InvalidArgument(a.id + " has no 'seeds' setting");
        }
        overrides["seeds"] = *a.seeds;
    }
    int workers = a.workers;
    if (workers <= 0) workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    const ExperimentConfig config = make_config(a.id, overrides, a.full, workers);
    const std::filesystem::path out = a.out.empty() ? default_output_dir() : std::filesystem::path(a.out);

    const RunRecord rec = execute(config, out, a.svg);
    for (const Check& c : rec.result.checks) {
        std::printf("%s  [%s] %s  %s\n", c.passed ? "PASS" : "FAIL",
                    c.criterion ? std::to_string(c.criterion).c_str() : "info", c.name.c_str(), c.detail.c_str());
    }
    std::printf("wrote %s (%.2f s)\n", rec.dir.string().c_str(), rec.result.wallclock_s);
    if (!a.check) return 0;
    for (const Check& c : rec.result.checks) {
        if (c.criterion != 0 && !c.passed) return 1;
    }
    return 0;
}

int cmd_report(const std::string& dir) {
    const Report r = build_report(dir);
    const Table t = report_table(r);
    std::cout << to_csv(t);
    if (!r.missing.empty()) {
        std::cout << "# missing:";
        for (const auto& id : r.missing) std::cout << ' ' << id;
        std::cout << '\n';
    }
    write_text(std::filesystem::path(dir) / "report.csv", to_csv(t));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Parity-switch grammar memory lab"};
    app.require_subcommand(1);

    app.add_subcommand("list", "List registered experiments");

    RunArgs ra;
    auto* run = app.add_subcommand("run", "Run one experiment");
    run->add_option("id", ra.id, "Experiment id")->required();
    run->add_option("--seeds", ra.seeds, "Number of seeds");
    run->add_flag("--full", ra.full, "Full-scale settings");
    run->add_flag("--check", ra.check, "Exit 1 when an acceptance check fails");
    run->add_option("--out", ra.out, "Output root (default $QMEM_OUT or ./results)");
    run->add_option("--workers", ra.workers, "Worker threads (default: all cores)");
    run->add_flag("--svg", ra.svg, "Also write SVG figures");
    run->add_option("--set", ra.sets, "Config override key=value (repeatable)");
    run->add_option("--config", ra.config_file, "JSON file of config overrides");

    std::string report_dir;
    auto* report = app.add_subcommand("report", "Summarize a results directory");
    report->add_option("dir", report_dir, "Results directory")->required();

    CLI11_PARSE(app, argc, argv);
    try {
        if (app.got_subcommand("list")) return cmd_list();
        if (app.got_subcommand("run")) return cmd_run(ra);
        return cmd_report(report_dir);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
