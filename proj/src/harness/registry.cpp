#include "qmem/harness/registry.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>

#include "experiments.hpp"
#include "qmem/error.hpp"
#include "qmem/simd/kernels.hpp"

namespace qmem::harness {

bool ExperimentResult::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const std::vector<ExperimentInfo>& registry() {
    static const std::vector<ExperimentInfo> r = builtin_experiments();
    return r;
}

const ExperimentInfo& find_experiment(std::string_view id) {
    for (const ExperimentInfo& e : registry()) {
        if (e.id == id) return e;
    }
    std::string known;
    for (const ExperimentInfo& e : registry()) known += (known.empty() ? "" : ", ") + e.id;
    throw InvalidArgument("unknown experiment '" + std::string(id) + "' (known: " + known + ")");
}

const std::vector<CriterionInfo>& criteria() {
    static const std::vector<CriterionInfo> c{
        {1, "quantum and SO(3) Bloch trajectories agree within 1e-10", 5.0},
        {2, "distractor z-invariance exactly at theta2 = 0, broken otherwise", 1.0},
        {3, "single-qubit rows: Decoupled/SO(3) 100%, Minimal 76 +- 8 pp, dz 1.36 +- 0.15", 120.0},
        {4, "z-preservation over 0..100 distractors: dz 1.50 / 1.71 +- 0.15, no hemisphere flip", 10.0},
        {5, "two-qubit rows: CNOT >= 90%, no-CNOT 100%, SWAP >= 90% with zero entropy divergence", 300.0},
        {6, "CNOT ablation effect: p < 0.05 (10 seeds); t 4.88 +- 1.0, d 0.89 +- 0.25 (30 seeds); all seeds entangling", std::nullopt},
        {7, "noise: CNOT <= 60% at p = 0.06, Z-preservation models 100%; no-CNOT 100% at p = 0.12", 180.0},
        {8, "phase: 100% up to 0.8 rad, <= 60% within [0.9, 1.1], >= 90% at pi", 60.0},
        {9, "interchange: donor context carried at 11/11 timesteps", 10.0},
        {10, "encoding: 100% at 0.5x/1x/2x, 50% at 3x on every seed", 60.0},
        {11, "classical control: Adam RNN4 100% on >= 18/20 seeds, SPSA RNN4 50 +- 10 pp", 180.0},
        {12, "3-4 qubits: 100% with/without CNOT; divergence 0.159/0.119 +- 0.08 with CNOT, 0 without", 600.0},
        {13, "property suites: unitarity, density matrices, entropy bounds, closed-form z, SPSA bias, t CDF", std::nullopt},
    };
    return c;
}

ExperimentConfig make_config(std::string_view id, const Json& overrides, bool full, int workers) {
    const ExperimentInfo& info = find_experiment(id);
    return resolve_config(info.id, info.defaults, info.full_overrides, overrides, full, workers);
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    const ExperimentInfo& info = find_experiment(config.experiment_id);
    const auto start = std::chrono::steady_clock::now();
    ExperimentResult r = info.run(config);
    r.wallclock_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    for (int c : info.criteria) {
        const auto& ci = criteria()[static_cast<std::size_t>(c - 1)];
        if (ci.budget_s) {
            r.checks.push_back({c, "runtime < " + num(*ci.budget_s) + " s", r.wallclock_s < *ci.budget_s,
                                num(r.wallclock_s) + " s"});
        }
    }
    return r;
}

std::string input_hash(const ExperimentConfig& config) {
    Json j;
    j["experiment"] = config.experiment_id;
    j["config"] = config.values;
    j["version"] = QMEM_VERSION;
    return sha256_hex(j.dump());
}

namespace {

std::string utc_now() {
    const std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

RunRecord execute(const ExperimentConfig& config, const std::filesystem::path& out_root, bool svg) {
    const ExperimentInfo& info = find_experiment(config.experiment_id);
    const std::string started = utc_now();
    RunRecord rec{run_experiment(config), Json::object(), out_root / config.experiment_id};

    Json outputs = Json::array();
    auto emit = [&](const std::string& file, const std::string& text) {
        write_text(rec.dir / file, text);
        outputs.push_back({{"file", file}, {"sha256", sha256_hex(text)}, {"bytes", text.size()}});
    };
    for (const Table& t : rec.result.tables) emit(t.name + ".csv", to_csv(t));
    if (svg) {
        for (const Figure& f : rec.result.figures) emit(f.name + ".svg", f.svg);
    }

    Json checks = Json::array();
    for (const Check& c : rec.result.checks) {
        checks.push_back({{"criterion", c.criterion}, {"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    }
    Json& m = rec.manifest;
    m["experiment"] = info.id;
    m["title"] = info.title;
    m["criteria"] = info.criteria;
    m["version"] = QMEM_VERSION;
    m["kernels"] = std::string(simd::isa_name(simd::kernels().isa));
    m["config"] = config.values;
    m["full"] = config.full;
    m["workers"] = config.workers;
    m["input_hash"] = input_hash(config);
    m["started_utc"] = started;
    m["wallclock_s"] = rec.result.wallclock_s;
    m["timings"] = rec.result.timings;
    m["outputs"] = outputs;
    m["metrics"] = rec.result.metrics;
    m["checks"] = checks;
    m["passed"] = rec.result.passed();
    write_text(rec.dir / "manifest.json", m.dump(2) + "\n");
    return rec;
}

}  // namespace qmem::harness
