#include "qmem/interp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qmem/error.hpp"
#include "qmem/parallel.hpp"
#include "qmem/qcore/unitary.hpp"

namespace qmem {
namespace {

void require_multi_qubit(const ParamVector& params, const char* who) {
    const ModelSpec& spec = params.spec();
    if (!spec.is_quantum() || spec.n_qubits < 2) {
        throw InvalidArgument(std::string(who) + ": needs a multi-qubit quantum model, got " + spec.label());
    }
}

std::size_t max_length(const Dataset& data) {
    std::size_t n = 0;
    for (const SequenceSample& s : data.samples) n = std::max(n, s.tokens.size());
    return n;
}

double variance(const std::vector<double>& xs) {
    return xs.empty() ? 0.0 : std::pow(summarize(xs).std, 2);
}

}  // namespace

AblationPair ablate_cnot(const ParamVector& params, const Dataset& eval, const std::vector<int>& timesteps) {
    if (params.spec().entangler != Entangler::cnot) {
        throw InvalidArgument("ablate_cnot: model " + params.spec().label() + " has no CNOT");
    }
    RunOptions ablated;
    if (timesteps.empty()) {
        ablated = RunOptions::without_entangler();
    } else {
        ablated.entangler_mask.assign(max_length(eval), true);
        for (int t : timesteps) {
            if (t < 0) {
                throw InvalidArgument("ablate_cnot: negative timestep " + std::to_string(t));
            }
            if (static_cast<std::size_t>(t) < ablated.entangler_mask.size()) {
                ablated.entangler_mask[static_cast<std::size_t>(t)] = false;
            }
        }
    }
    ablated.snapshots = false;
    return {accuracy(params, eval), accuracy(params, eval, ablated)};
}

AblationReport summarize_ablation(std::vector<AblationRow> rows) {
    AblationReport report;
    report.rows = std::move(rows);
    std::vector<double> deltas;
    for (const AblationRow& r : report.rows) deltas.push_back(r.delta_pp);
    const Summary s = summarize(deltas);
    report.mean_delta = s.mean;
    report.std_delta = s.std;
    if (deltas.size() >= 2 && sample_variance(deltas) > 0.0) {
        report.test = one_sample_ttest(deltas, 0.0);
    }
    return report;
}

EntropyDivergence entropy_divergence(const ParamVector& params, int n_distractors, const RunOptions& options) {
    require_multi_qubit(params, "entropy_divergence");
    RunOptions o = options;
    o.snapshots = false;
    const TrajectoryRecord a = run_quantum(params, make_sample(Context::A, n_distractors), o);
    const TrajectoryRecord b = run_quantum(params, make_sample(Context::B, n_distractors), o);
    EntropyDivergence d;
    double acc = 0.0;
    for (std::size_t t = 0; t < a.steps.size(); ++t) {
        const double sa = a.steps[t].entropy_q0.value_or(0.0);
        const double sb = b.steps[t].entropy_q0.value_or(0.0);
        d.s_a.push_back(sa);
        d.s_b.push_back(sb);
        d.abs_diff.push_back(std::abs(sa - sb));
        acc += d.abs_diff.back();
    }
    d.mean_abs_divergence = acc / static_cast<double>(a.steps.size());
    d.entangling = d.mean_abs_divergence > kEntropyThreshold;
    return d;
}

int InterchangeResult::carried() const {
    return static_cast<int>(std::count_if(steps.begin(), steps.end(), [](const InterchangeStep& s) {
        return s.donor_carried;
    }));
}

InterchangeResult interchange_intervention(const ParamVector& params, int n_distractors, const RunOptions& options) {
    require_multi_qubit(params, "interchange_intervention");
    if (options.noise || options.backend != Backend::statevector) {
        throw InvalidArgument("interchange_intervention: splicing is defined on noiseless statevectors only");
    }
    const SequenceSample sa = make_sample(Context::A, n_distractors);
    const SequenceSample sb = make_sample(Context::B, n_distractors);
    const int length = static_cast<int>(sa.tokens.size());
    const int n = params.spec().n_qubits;

    InterchangeResult result;
    for (int t = 1; t <= length; ++t) {
        StateVector a(n);
        StateVector b(n);
        for (int k = 0; k < t; ++k) {
            apply_timestep(params, sa.tokens[static_cast<std::size_t>(k)], k, a, options);
            apply_timestep(params, sb.tokens[static_cast<std::size_t>(k)], k, b, options);
        }
        InterchangeStep step;
        step.t = t;
        step.s_a = von_neumann_entropy(reduced_qubit(a, 0));
        step.s_b = von_neumann_entropy(reduced_qubit(b, 0));
        // a now continues on B's tokens and vice versa.
        for (int k = t; k < length; ++k) {
            apply_timestep(params, sb.tokens[static_cast<std::size_t>(k)], k, a, options);
            apply_timestep(params, sa.tokens[static_cast<std::size_t>(k)], k, b, options);
        }
        step.pred_a_to_b = predict(readout_p1(a));
        step.pred_b_to_a = predict(readout_p1(b));
        step.donor_carried = step.pred_a_to_b == sa.label && step.pred_b_to_a == sb.label;
        result.steps.push_back(step);
    }
    return result;
}

SensitivityResult weight_sensitivity(const ParamVector& params, std::size_t index, Perturbation mode,
                                     const Dataset& eval) {
    if (index >= params.size()) {
        throw InvalidArgument("weight_sensitivity: index " + std::to_string(index) + " out of range");
    }
    const double v = mode == Perturbation::zero ? 0.0 : -params[index];
    return {index, accuracy(params, eval), accuracy(params.with(index, v), eval)};
}

std::vector<SweepPoint> sweep_parameter(const ParamVector& params, std::size_t index, const std::vector<double>& grid,
                                        const Dataset& eval) {
    if (index >= params.size()) {
        throw InvalidArgument("sweep_parameter: index " + std::to_string(index) + " out of range");
    }
    std::vector<SweepPoint> out;
    out.reserve(grid.size());
    for (double v : grid) out.push_back({v, accuracy(params.with(index, v), eval)});
    return out;
}

std::vector<double> linspace(double lo, double hi, int n) {
    if (n < 2) {
        return n == 1 ? std::vector<double>{lo} : std::vector<double>{};
    }
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] = i == n - 1 ? hi : lo + (hi - lo) * i / (n - 1);
    }
    return out;
}

std::vector<PhasePoint> phase_sweep(const ParamVector& params, const std::vector<double>& grid, int n_distractors) {
    const ModelSpec& spec = params.spec();
    if (spec.family != Family::DecoupledQLM && !(spec.family == Family::ClassicalSO3 && !spec.shared_roles())) {
        throw InvalidArgument("phase_sweep: needs a decoupled single-qubit model, got " + spec.label());
    }
    const std::size_t idx = param_index(spec, Role::distractor, 0, Layer::pre, Angle::theta2);
    const SequenceSample sa = make_sample(Context::A, n_distractors);
    const SequenceSample sb = make_sample(Context::B, n_distractors);
    RunOptions o;
    o.snapshots = false;

    std::vector<PhasePoint> out;
    for (double th : grid) {
        const ParamVector p = params.with(idx, th);
        const TrajectoryRecord a = run_model(p, sa, o);
        const TrajectoryRecord b = run_model(p, sb, o);
        PhasePoint pt;
        pt.theta2_dist = th;
        pt.accuracy = ((a.prediction == sa.label) + (b.prediction == sb.label)) / 2.0;
        for (const TimestepProbe& s : a.steps) pt.z_a.push_back(s.bloch[0].z);
        for (const TimestepProbe& s : b.steps) pt.z_b.push_back(s.bloch[0].z);
        const std::vector<double> da(pt.z_a.begin() + 1, pt.z_a.end());
        const std::vector<double> db(pt.z_b.begin() + 1, pt.z_b.end());
        pt.z_variance = 0.5 * (variance(da) + variance(db));
        if (std::abs(th) > 1e-12) {
            pt.period = 2.0 * std::numbers::pi / std::abs(th);
        }
        out.push_back(std::move(pt));
    }
    return out;
}

double recurrence_error(const ParamVector& params, int period, int cycles) {
    if (period < 1 || cycles < 1) {
        throw InvalidArgument("recurrence_error: period and cycles must be positive");
    }
    const ModelSpec& spec = params.spec();
    const std::size_t idx = param_index(spec, Role::distractor, 0, Layer::pre, Angle::theta2);
    const ParamVector p = params.with(idx, 2.0 * std::numbers::pi / period);
    const TrajectoryRecord a = run_model(p, make_sample(Context::A, period * (cycles + 1)));
    double worst = 0.0;
    for (std::size_t k = 1; k + static_cast<std::size_t>(period) < a.steps.size(); ++k) {
        worst = std::max(worst, std::abs(a.steps[k + static_cast<std::size_t>(period)].bloch[0].z - a.steps[k].bloch[0].z));
    }
    return worst;
}

std::vector<NoiseRow> noise_sweep(const std::vector<ParamVector>& models, const std::vector<double>& ps,
                                  const Dataset& eval) {
    std::vector<NoiseRow> rows;
    for (const ParamVector& m : models) {
        for (double p : ps) {
            RunOptions o = RunOptions::noisy({p, 0.0});
            o.snapshots = false;
            rows.push_back({m.spec().label(), p, accuracy(m, eval, o)});
        }
    }
    return rows;
}

std::vector<SeedOutcome> train_seeds(const ModelSpec& spec, const std::vector<std::uint64_t>& seeds, int restarts,
                                     const Dataset& train, const Dataset& eval, int workers) {
    std::vector<std::optional<SeedOutcome>> slots(seeds.size());
    parallel_for(seeds.size(), workers, [&](std::size_t i) {
        const SpsaConfig c = SpsaConfig::for_model(spec, seeds[i]);
        SeedOutcome o{seeds[i], train_with_restarts(spec, c, train, eval, restarts), std::nullopt};
        if (spec.is_quantum() && spec.n_qubits >= 2) {
            o.divergence = entropy_divergence(o.result.final_params);
        }
        slots[i] = std::move(o);
    });
    std::vector<SeedOutcome> out;
    out.reserve(slots.size());
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

std::vector<EncodingRow> encoding_sweep(const std::vector<double>& multipliers, const std::vector<std::uint64_t>& seeds,
                                        int restarts, int workers) {
    std::vector<EncodingRow> rows;
    for (double m : multipliers) {
        const Dataset train = build_train_set(m);
        const Dataset eval = build_eval_set(kDefaultEvalSeed, m);
        EncodingRow row;
        row.multiplier = m;
        for (const SeedOutcome& o : train_seeds(ModelSpec::decoupled(), seeds, restarts, train, eval, workers)) {
            row.accuracies.push_back(o.result.eval_accuracy);
        }
        const Summary s = summarize(row.accuracies);
        row.mean = s.mean;
        row.std = s.std;
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<ScalingRow> scaling_experiment(const std::vector<int>& n_qubits, const std::vector<Entangler>& entanglers,
                                           const std::vector<std::uint64_t>& seeds, int restarts, int workers) {
    const Dataset train = build_train_set();
    const Dataset eval = build_eval_set();
    std::vector<ScalingRow> rows;
    for (int n : n_qubits) {
        for (Entangler e : entanglers) {
            ScalingRow row;
            row.n_qubits = n;
            row.entangler = e;
            row.seeds = train_seeds(ModelSpec::n_qubit(n, e), seeds, restarts, train, eval, workers);
            std::vector<double> acc, div;
            for (const SeedOutcome& o : row.seeds) {
                acc.push_back(o.result.eval_accuracy);
                div.push_back(o.divergence->mean_abs_divergence);
            }
            row.accuracy = summarize(acc);
            row.divergence = summarize(div);
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

double distractor_z_drift(double theta1, double theta2, double theta3, const std::vector<BlochVector>& states) {
    const Rotation3 r = su2_to_so3(make_rotation(theta1, theta2, theta3));
    double worst = 0.0;
    for (const BlochVector& v : states) {
        worst = std::max(worst, std::abs(r.apply(v).z - v.z));
    }
    return worst;
}

std::vector<BlochVector> sphere_points(int count) {
    std::vector<BlochVector> out;
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < count; ++i) {
        const double z = count == 1 ? 1.0 : 1.0 - 2.0 * i / (count - 1);
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        out.push_back({r * std::cos(golden * i), r * std::sin(golden * i), z});
    }
    return out;
}

DequantizationCheck dequantization_check(int sequences, int max_length, std::uint64_t seed) {
    if (sequences < 0 || max_length < 1) {
        throw InvalidArgument("dequantization_check: need sequences >= 0 and max_length >= 1");
    }
    Rng rng(mix_seed(seed, 0xDE0));
    DequantizationCheck check;
    check.sequences = sequences;
    for (int s = 0; s < sequences; ++s) {
        const int len = static_cast<int>(rng.uniform_int(1, max_length));
        StateVector psi(1);
        BlochVector v{0.0, 0.0, 1.0};
        for (int k = 0; k < len; ++k) {
            const double t1 = rng.uniform(-std::numbers::pi, std::numbers::pi);
            const double t2 = rng.uniform(-std::numbers::pi, std::numbers::pi);
            const double t3 = rng.uniform(-std::numbers::pi, std::numbers::pi);
            psi.apply(make_rotation(t1, t2, t3), 0);
            v = so3_rotation(t1, t2, t3).apply(v);
            const BlochVector q = bloch_of_qubit(psi, 0);
            check.max_deviation = std::max({check.max_deviation, std::abs(q.x - v.x), std::abs(q.y - v.y),
                                            std::abs(q.z - v.z)});
            ++check.steps;
        }
    }
    return check;
}

}  // namespace qmem
