// One PASS/FAIL line per acceptance criterion. Exit status 1 if any fails.

#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "qmem/harness/registry.hpp"
#include "qmem/optim.hpp"
#include "qmem/qcore/channels.hpp"
#include "qmem/qcore/density_matrix.hpp"
#include "qmem/qcore/state_vector.hpp"
#include "qmem/qcore/unitary.hpp"
#include "qmem/stats.hpp"

using namespace qmem;
using namespace qmem::harness;
using std::numbers::pi;

namespace {

struct Verdict {
    bool passed = true;
    std::vector<std::string> notes;

    void add(bool ok, const std::string& note) {
        passed &= ok;
        if (!ok || notes.empty()) notes.push_back(note);
    }
};

int workers() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

void collect(std::map<int, Verdict>& verdicts, const ExperimentResult& r, const std::string& tag = "") {
    for (const Check& c : r.checks) {
        if (c.criterion == 0) continue;
        Verdict& v = verdicts[c.criterion];
        const std::string note = tag + c.name + " [" + c.detail + "]";
        if (!c.passed) {
            if (v.passed) v.notes.clear();
            v.passed = false;
            v.notes.push_back(note);
        } else if (v.passed && v.notes.empty()) {
            v.notes.push_back(note);
        }
    }
}

Unitary2 random_unitary(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> ang(-pi, pi);
    return make_rotation(ang(rng), ang(rng), ang(rng));
}

StateVector random_state(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    std::vector<Complex> a(std::size_t{1} << n);
    double norm = 0.0;
    for (auto& x : a) {
        x = {g(rng), g(rng)};
        norm += std::norm(x);
    }
    for (auto& x : a) x /= std::sqrt(norm);
    return StateVector(n, std::move(a));
}

Verdict property_suites() {
    Verdict v;
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> ang(-pi, pi), prob(0.0, 1.0);

    double norm_err = 0.0;
    for (int n = 1; n <= 4; ++n) {
        StateVector s(n);
        for (int step = 0; step < 500; ++step) {
            const int q = static_cast<int>(rng() % static_cast<unsigned>(n));
            s.apply(random_unitary(rng), q);
            if (n > 1) s.cnot(q, (q + 1) % n);
            norm_err = std::max(norm_err, std::abs(s.norm_squared() - 1.0));
        }
    }
    v.add(norm_err < 1e-9, "unitarity: max |norm - 1| " + num(norm_err));

    bool dm_ok = true;
    for (int trial = 0; trial < 200; ++trial) {
        DensityMatrix rho = DensityMatrix::from_state(random_state(2, rng));
        rho.apply(random_unitary(rng), 0);
        rho.cnot(0, 1);
        const int both[2] = {0, 1};
        rho = apply_depolarizing(rho, prob(rng), 1);
        rho = apply_depolarizing(rho, prob(rng), both);
        rho = apply_amplitude_damping(rho, prob(rng), 0);
        dm_ok &= rho.is_valid() && std::abs(rho.trace() - 1.0) < 1e-10;
    }
    v.add(dm_ok, "density matrices stay valid under gates and channels");

    double ent_lo = 1.0, ent_hi = 0.0;
    for (int trial = 0; trial < 500; ++trial) {
        const double s = von_neumann_entropy(partial_trace_to_qubit0(random_state(3, rng)));
        ent_lo = std::min(ent_lo, s);
        ent_hi = std::max(ent_hi, s);
    }
    v.add(ent_lo >= 0.0 && ent_hi <= 1.0 + 1e-12, "entropy in [" + num(ent_lo) + ", " + num(ent_hi) + "]");

    double closed_err = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const double t1 = ang(rng), t2 = ang(rng), t3 = ang(rng);
        const StateVector psi = random_state(1, rng);
        const BlochVector r = bloch_of_qubit(psi, 0);
        StateVector out = psi;
        out.apply(make_rotation(t1, t2, t3), 0);
        const double want = -std::sin(t2) * (r.x * std::cos(t1) + r.y * std::sin(t1)) + std::cos(t2) * r.z;
        closed_err = std::max(closed_err, std::abs(bloch_of_qubit(out, 0).z - want));
    }
    v.add(closed_err < 1e-10, "closed-form z: max error " + num(closed_err));

    const std::vector<double> theta{0.8, -1.3, 0.4, 2.0, -0.6, 1.1};
    const Objective f = [](std::span<const double> x) {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) s += (i + 1.0) * x[i] * x[i] + std::sin(x[i]);
        return s;
    };
    Rng srng(7);
    std::vector<double> mean(theta.size(), 0.0);
    const int draws = 10000;
    for (int i = 0; i < draws; ++i) {
        const auto g = spsa_gradient(f, theta, 0.01, srng);
        for (std::size_t j = 0; j < g.size(); ++j) mean[j] += g[j] / draws;
    }
    double err2 = 0.0, truth2 = 0.0;
    for (std::size_t j = 0; j < theta.size(); ++j) {
        const double truth = 2.0 * (j + 1.0) * theta[j] + std::cos(theta[j]);
        err2 += (mean[j] - truth) * (mean[j] - truth);
        truth2 += truth * truth;
    }
    const double rel = std::sqrt(err2 / truth2);
    v.add(rel < 0.05, "SPSA mean gradient relative error " + num(rel));

    std::mt19937_64 gen(97);
    double t_err = 0.0;
    for (double df : {5.0, 29.0, 60.0}) {
        std::student_t_distribution<double> dist(df);
        const double q = student_t_quantile(0.975, df);
        const int n = 1000000;
        int below = 0;
        for (int i = 0; i < n; ++i) below += dist(gen) <= q;
        t_err = std::max(t_err, std::abs(static_cast<double>(below) / n - student_t_cdf(q, df)));
    }
    v.add(t_err < 1e-3, "t CDF vs Monte Carlo: max gap " + num(t_err));
    return v;
}

}  // namespace

int main() {
    std::map<int, Verdict> verdicts;
    const int w = workers();
    for (const char* id : {"cor1-dequant", "thm1-witness", "table3-main", "fig2-zpreservation", "appC-swap",
                           "table5-noise", "fig3-phase", "appF-interchange", "appB2-encoding", "appD-classical",
                           "appG-scaling"}) {
        collect(verdicts, run_experiment(make_config(id, Json::object(), false, w)));
    }
    collect(verdicts, run_experiment(make_config("appC-ablation", Json::object(), false, w)), "10 seeds: ");
    collect(verdicts, run_experiment(make_config("appC-ablation", Json::object(), true, w)), "30 seeds: ");
    verdicts[13] = property_suites();

    int failed = 0;
    for (const CriterionInfo& c : criteria()) {
        const auto it = verdicts.find(c.number);
        const bool ok = it != verdicts.end() && it->second.passed;
        failed += !ok;
        std::string detail = it == verdicts.end() ? "no checks ran" : "";
        if (it != verdicts.end()) {
            for (const auto& n : it->second.notes) detail += (detail.empty() ? "" : "; ") + n;
        }
        std::printf("%s  criterion %2d: %s -- %s\n", ok ? "PASS" : "FAIL", c.number, c.description.c_str(),
                    detail.c_str());
    }
    std::printf("%d/%zu criteria pass\n", static_cast<int>(criteria().size()) - failed, criteria().size());
    return failed ? 1 : 0;
}
