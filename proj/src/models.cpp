#include "qmem/models.hpp"

#include <json.hpp>

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "qmem/error.hpp"
#include "qmem/qcore/channels.hpp"

namespace qmem {
namespace {

constexpr std::array<Family, 6> kFamilies{Family::MinimalQLM, Family::DecoupledQLM, Family::TwoQubitQLM,
                                          Family::NQubitQLM,  Family::ClassicalSO3, Family::ClassicalRNN4};
constexpr int kRnnHidden = 4;

int role_slot(Role r) { return r == Role::distractor ? 1 : 0; }

Role role_for(const ModelSpec& spec, TokenKind kind) {
    if (spec.shared_roles()) {
        return Role::shared;
    }
    return kind == TokenKind::D ? Role::distractor : Role::context;
}

// First index of the (theta1, theta2, theta3) triple for a rotation gate.
std::size_t triple_base(const ModelSpec& spec, Role role, int qubit, Layer layer) {
    if (!spec.layered()) {
        return static_cast<std::size_t>(3 * role_slot(role));
    }
    const int r = role_slot(role);
    const int l = layer == Layer::post ? 1 : 0;
    return static_cast<std::size_t>(((r * spec.n_qubits + qubit) * 2 + l) * 3);
}

bool entangler_on(const RunOptions& o, int t) {
    if (o.entangler_mask.empty()) {
        return true;
    }
    return t < static_cast<int>(o.entangler_mask.size()) && o.entangler_mask[static_cast<std::size_t>(t)];
}

void check_noise_backend(const RunOptions& o) {
    if (o.noise && o.backend != Backend::density_matrix) {
        throw InvalidArgument("noise requires the density_matrix backend");
    }
}

void check_family(const ParamVector& p, bool want_quantum, const char* who) {
    if (p.spec().is_quantum() != want_quantum) {
        throw InvalidArgument(std::string(who) + ": parameter vector belongs to " + p.spec().label());
    }
}

// Per-parameter-set gate cache: x = 0 gates are built once, context gates on demand.
class Circuit {
public:
    explicit Circuit(const ParamVector& params) : params_(params), spec_(params.spec()) {
        const int roles = spec_.shared_roles() ? 1 : 2;
        const int layers = spec_.layered() ? 2 : 1;
        zero_.reserve(static_cast<std::size_t>(roles * spec_.n_qubits * layers));
        for (int r = 0; r < roles; ++r) {
            const Role role = spec_.shared_roles() ? Role::shared : (r == 0 ? Role::context : Role::distractor);
            for (int q = 0; q < spec_.n_qubits; ++q) {
                for (int l = 0; l < layers; ++l) {
                    zero_.push_back(build(role, q, l == 0 ? Layer::pre : Layer::post, 0.0));
                }
            }
        }
    }

    Unitary2 gate(Role role, int q, Layer layer, double x) const {
        if (x != 0.0) {
            return build(role, q, layer, x);
        }
        const int layers = spec_.layered() ? 2 : 1;
        const int r = spec_.shared_roles() ? 0 : role_slot(role);
        return zero_[static_cast<std::size_t>((r * spec_.n_qubits + q) * layers + (layer == Layer::post ? 1 : 0))];
    }

    template <class State, class AfterGate, class AfterEntangler>
    void step(const Token& token, int t, State& s, const RunOptions& o, AfterGate after_gate,
              AfterEntangler after_entangler) const {
        const Role role = role_for(spec_, token.kind);
        if (!spec_.layered()) {
            s.apply(gate(role, 0, Layer::pre, token.encoding), 0);
            after_gate(s, 0);
            return;
        }
        const int n = spec_.n_qubits;
        for (int q = 0; q < n; ++q) {
            s.apply(gate(role, q, Layer::pre, token.encoding), q);
            after_gate(s, q);
        }
        if (spec_.entangler != Entangler::none && entangler_on(o, t)) {
            for (int q = 0; q + 1 < n; ++q) {
                if (spec_.entangler == Entangler::cnot) {
                    s.cnot(q, q + 1);
                } else {
                    s.swap(q, q + 1);
                }
                after_entangler(s, q, q + 1);
            }
        }
        for (int q = 0; q < n; ++q) {
            s.apply(gate(role, q, Layer::post, 0.0), q);
            after_gate(s, q);
        }
    }

    void step(const Token& token, int t, StateVector& s, const RunOptions& o) const {
        step(token, t, s, o, [](StateVector&, int) {}, [](StateVector&, int, int) {});
    }

    void step(const Token& token, int t, DensityMatrix& rho, const RunOptions& o) const {
        if (!o.noise) {
            step(token, t, rho, o, [](DensityMatrix&, int) {}, [](DensityMatrix&, int, int) {});
            return;
        }
        const NoiseConfig noise = *o.noise;
        auto gate_noise = [&](DensityMatrix& r, int q) {
            if (noise.depolarizing_p > 0.0) {
                const int qs[1] = {q};
                depolarize_in_place(r, noise.depolarizing_p, qs);
            }
            if (noise.damping_gamma > 0.0) {
                amplitude_damp_in_place(r, noise.damping_gamma, q);
            }
        };
        auto pair_noise = [&](DensityMatrix& r, int a, int b) {
            if (noise.depolarizing_p > 0.0) {
                const int qs[2] = {a, b};
                depolarize_in_place(r, noise.depolarizing_p, qs);
            }
            if (noise.damping_gamma > 0.0) {
                amplitude_damp_in_place(r, noise.damping_gamma, a);
                amplitude_damp_in_place(r, noise.damping_gamma, b);
            }
        };
        step(token, t, rho, o, gate_noise, pair_noise);
    }

private:
    Unitary2 build(Role role, int q, Layer layer, double x) const {
        const std::size_t b = triple_base(spec_, role, q, layer);
        return make_rotation(params_[b], params_[b + 1] + x, params_[b + 2]);
    }

    const ParamVector& params_;
    const ModelSpec& spec_;
    std::vector<Unitary2> zero_;
};

template <class State>
TimestepProbe probe(const State& s, bool keep_snapshot) {
    TimestepProbe p;
    const int n = s.n_qubits();
    p.bloch.reserve(static_cast<std::size_t>(n));
    for (int q = 0; q < n; ++q) {
        p.bloch.push_back(bloch_of_qubit(s, q));
    }
    if (n >= 2) {
        p.entropy_q0 = von_neumann_entropy(reduced_qubit(s, 0));
    }
    if (keep_snapshot) {
        p.snapshot = s;
    }
    return p;
}

template <class State>
TrajectoryRecord run_with(const ParamVector& params, const SequenceSample& sample, const RunOptions& o) {
    const Circuit circuit(params);
    State s(params.spec().n_qubits);
    TrajectoryRecord rec;
    rec.steps.reserve(sample.tokens.size());
    for (std::size_t t = 0; t < sample.tokens.size(); ++t) {
        circuit.step(sample.tokens[t], static_cast<int>(t), s, o);
        rec.steps.push_back(probe(s, o.snapshots));
    }
    rec.final_p1 = readout_p1(s);
    rec.prediction = predict(rec.final_p1);
    return rec;
}

double logistic(double v) { return 1.0 / (1.0 + std::exp(-v)); }

std::array<double, kRnnHidden> rnn_step(std::span<const double> w, const std::array<double, kRnnHidden>& h,
                                        double x) {
    std::array<double, kRnnHidden> out{};
    for (int i = 0; i < kRnnHidden; ++i) {
        double acc = w[static_cast<std::size_t>(16 + i)] * x;
        for (int j = 0; j < kRnnHidden; ++j) {
            acc += w[static_cast<std::size_t>(kRnnHidden * i + j)] * h[static_cast<std::size_t>(j)];
        }
        out[static_cast<std::size_t>(i)] = std::tanh(acc);
    }
    return out;
}

double rnn_readout(std::span<const double> w, const std::array<double, kRnnHidden>& h) {
    double acc = 0.0;
    for (int i = 0; i < kRnnHidden; ++i) {
        acc += w[static_cast<std::size_t>(20 + i)] * h[static_cast<std::size_t>(i)];
    }
    return logistic(acc);
}

double so3_p1(const ParamVector& params, const SequenceSample& sample, TrajectoryRecord* rec) {
    const ModelSpec& spec = params.spec();
    BlochVector v{0.0, 0.0, 1.0};
    for (const Token& tok : sample.tokens) {
        const std::size_t b = triple_base(spec, role_for(spec, tok.kind), 0, Layer::pre);
        v = so3_rotation(params[b], params[b + 1] + tok.encoding, params[b + 2]).apply(v);
        if (rec != nullptr) {
            TimestepProbe p;
            p.bloch.push_back(v);
            p.snapshot = std::vector<double>{v.x, v.y, v.z};
            rec->steps.push_back(std::move(p));
        }
    }
    return (1.0 - v.z) / 2.0;
}

double rnn_p1(const ParamVector& params, const SequenceSample& sample, TrajectoryRecord* rec) {
    std::array<double, kRnnHidden> h{};
    for (const Token& tok : sample.tokens) {
        h = rnn_step(params.values(), h, tok.encoding);
        if (rec != nullptr) {
            TimestepProbe p;
            p.snapshot = std::vector<double>(h.begin(), h.end());
            rec->steps.push_back(std::move(p));
        }
    }
    return rnn_readout(params.values(), h);
}

}  // namespace

// ---------------------------------------------------------------------------
// ModelSpec

ModelSpec ModelSpec::make(Family family, int n_qubits, Entangler entangler, int param_count) {
    ModelSpec s{family, n_qubits, entangler, param_count};
    bool ok = false;
    switch (family) {
        case Family::MinimalQLM:
            ok = n_qubits == 1 && entangler == Entangler::none && param_count == 3;
            break;
        case Family::DecoupledQLM:
            ok = n_qubits == 1 && entangler == Entangler::none && param_count == 6;
            break;
        case Family::TwoQubitQLM:
            ok = n_qubits == 2 && param_count == 24;
            break;
        case Family::NQubitQLM:
            ok = (n_qubits == 3 || n_qubits == 4) && param_count == 12 * n_qubits;
            break;
        case Family::ClassicalSO3:
            ok = n_qubits == 1 && entangler == Entangler::none && (param_count == 3 || param_count == 6);
            break;
        case Family::ClassicalRNN4:
            ok = n_qubits == 1 && entangler == Entangler::none && param_count == 24;
            break;
    }
    if (!ok) {
        throw InvalidArgument("ModelSpec: " + std::string(to_string(family)) + " with " + std::to_string(n_qubits) +
                              " qubit(s), entangler " + std::string(to_string(entangler)) + " and " +
                              std::to_string(param_count) + " parameters violates the parameter-count law");
    }
    return s;
}

ModelSpec ModelSpec::minimal() { return make(Family::MinimalQLM, 1, Entangler::none, 3); }
ModelSpec ModelSpec::decoupled() { return make(Family::DecoupledQLM, 1, Entangler::none, 6); }
ModelSpec ModelSpec::two_qubit(Entangler e) { return make(Family::TwoQubitQLM, 2, e, 24); }

ModelSpec ModelSpec::n_qubit(int n, Entangler e) {
    if (n == 2) {
        return two_qubit(e);
    }
    return make(Family::NQubitQLM, n, e, 12 * n);
}

ModelSpec ModelSpec::classical_so3(bool decoupled_roles) {
    return make(Family::ClassicalSO3, 1, Entangler::none, decoupled_roles ? 6 : 3);
}

ModelSpec ModelSpec::classical_rnn4() { return make(Family::ClassicalRNN4, 1, Entangler::none, 24); }

bool ModelSpec::is_quantum() const { return family != Family::ClassicalSO3 && family != Family::ClassicalRNN4; }

bool ModelSpec::shared_roles() const {
    return family == Family::MinimalQLM || (family == Family::ClassicalSO3 && param_count == 3);
}

bool ModelSpec::layered() const { return family == Family::TwoQubitQLM || family == Family::NQubitQLM; }

std::string ModelSpec::label() const {
    switch (family) {
        case Family::MinimalQLM:
        case Family::DecoupledQLM:
        case Family::ClassicalRNN4:
            return std::string(to_string(family));
        case Family::ClassicalSO3:
            return "SO3-" + std::to_string(param_count);
        case Family::TwoQubitQLM:
        case Family::NQubitQLM: {
            std::string e = entangler == Entangler::cnot ? "+CNOT" : entangler == Entangler::swap ? "+SWAP" : "-none";
            return std::to_string(n_qubits) + "Q" + e;
        }
    }
    return "unknown";
}

std::string_view to_string(Family f) {
    switch (f) {
        case Family::MinimalQLM: return "MinimalQLM";
        case Family::DecoupledQLM: return "DecoupledQLM";
        case Family::TwoQubitQLM: return "TwoQubitQLM";
        case Family::NQubitQLM: return "NQubitQLM";
        case Family::ClassicalSO3: return "ClassicalSO3";
        case Family::ClassicalRNN4: return "ClassicalRNN4";
    }
    return "unknown";
}

std::string_view to_string(Entangler e) {
    switch (e) {
        case Entangler::none: return "none";
        case Entangler::cnot: return "cnot";
        case Entangler::swap: return "swap";
    }
    return "unknown";
}

Family family_from_string(std::string_view s) {
    for (Family f : kFamilies) {
        if (to_string(f) == s) {
            return f;
        }
    }
    throw InvalidArgument("unknown model family '" + std::string(s) + "'");
}

Entangler entangler_from_string(std::string_view s) {
    for (Entangler e : {Entangler::none, Entangler::cnot, Entangler::swap}) {
        if (to_string(e) == s) {
            return e;
        }
    }
    throw InvalidArgument("unknown entangler '" + std::string(s) + "'");
}

std::string_view to_string(Role r) {
    switch (r) {
        case Role::shared: return "shared";
        case Role::context: return "context";
        case Role::distractor: return "distractor";
    }
    return "unknown";
}

std::string_view to_string(Layer l) { return l == Layer::pre ? "pre" : "post"; }

std::string_view to_string(Angle a) {
    switch (a) {
        case Angle::theta1: return "theta1";
        case Angle::theta2: return "theta2";
        case Angle::theta3: return "theta3";
    }
    return "unknown";
}

// ---------------------------------------------------------------------------
// Layout and parameters

std::vector<ParamSlot> layout(const ModelSpec& spec) {
    std::vector<ParamSlot> out;
    out.reserve(static_cast<std::size_t>(spec.param_count));
    if (spec.family == Family::ClassicalRNN4) {
        for (int i = 0; i < kRnnHidden; ++i)
            for (int j = 0; j < kRnnHidden; ++j)
                out.push_back({"W_h[" + std::to_string(i) + "][" + std::to_string(j) + "]", {}, 0, Layer::pre, Angle::theta1});
        for (int i = 0; i < kRnnHidden; ++i) out.push_back({"w_x[" + std::to_string(i) + "]", {}, 0, Layer::pre, Angle::theta1});
        for (int i = 0; i < kRnnHidden; ++i) out.push_back({"w_r[" + std::to_string(i) + "]", {}, 0, Layer::pre, Angle::theta1});
        return out;
    }
    const std::vector<Role> roles = spec.shared_roles() ? std::vector<Role>{Role::shared}
                                                        : std::vector<Role>{Role::context, Role::distractor};
    const std::vector<Layer> layers = spec.layered() ? std::vector<Layer>{Layer::pre, Layer::post}
                                                     : std::vector<Layer>{Layer::pre};
    for (Role r : roles)
        for (int q = 0; q < spec.n_qubits; ++q)
            for (Layer l : layers)
                for (Angle a : {Angle::theta1, Angle::theta2, Angle::theta3}) {
                    std::string label = std::string(to_string(r)) + ".q" + std::to_string(q);
                    if (spec.layered()) {
                        label += "." + std::string(to_string(l));
                    }
                    label += "." + std::string(to_string(a));
                    out.push_back({std::move(label), r, q, l, a});
                }
    return out;
}

std::size_t param_index(const ModelSpec& spec, Role role, int qubit, Layer layer, Angle angle) {
    if (spec.family == Family::ClassicalRNN4) {
        throw InvalidArgument("param_index: the RNN has no rotation angles");
    }
    const bool role_ok = spec.shared_roles() ? role == Role::shared : role != Role::shared;
    if (!role_ok || qubit < 0 || qubit >= spec.n_qubits || (layer == Layer::post && !spec.layered())) {
        throw InvalidArgument("param_index: slot not present in " + spec.label() + " layout");
    }
    return triple_base(spec, role, qubit, layer) + static_cast<std::size_t>(angle);
}

ParamVector::ParamVector(ModelSpec spec, std::vector<double> values) : spec_(spec), values_(std::move(values)) {
    if (values_.size() != static_cast<std::size_t>(spec_.param_count)) {
        throw InvalidArgument("ParamVector: " + spec_.label() + " expects " + std::to_string(spec_.param_count) +
                              " parameters, got " + std::to_string(values_.size()));
    }
}

ParamVector ParamVector::zeros(const ModelSpec& spec) {
    return ParamVector(spec, std::vector<double>(static_cast<std::size_t>(spec.param_count), 0.0));
}

ParamVector ParamVector::random(const ModelSpec& spec, Rng& rng) {
    const double half = spec.family == Family::ClassicalRNN4 ? 0.5 : std::numbers::pi;
    std::vector<double> v(static_cast<std::size_t>(spec.param_count));
    for (double& x : v) {
        x = rng.uniform(-half, half);
    }
    return ParamVector(spec, std::move(v));
}

ParamVector ParamVector::with(std::size_t i, double v) const {
    if (i >= values_.size()) {
        throw InvalidArgument("parameter index " + std::to_string(i) + " out of range for " + spec_.label());
    }
    ParamVector out = *this;
    out.values_[i] = v;
    return out;
}

ParamVector ParamVector::with_values(std::vector<double> values) const { return ParamVector(spec_, std::move(values)); }

std::string params_to_json(const ParamVector& p) {
    nlohmann::ordered_json j;
    const ModelSpec& s = p.spec();
    j["family"] = to_string(s.family);
    j["n_qubits"] = s.n_qubits;
    j["entangler"] = to_string(s.entangler);
    j["param_count"] = s.param_count;
    auto& lay = j["layout"] = nlohmann::ordered_json::array();
    const auto slots = layout(s);
    for (std::size_t i = 0; i < slots.size(); ++i) {
        nlohmann::ordered_json e;
        e["index"] = i;
        e["label"] = slots[i].label;
        if (slots[i].role) {
            e["role"] = to_string(*slots[i].role);
            e["qubit"] = slots[i].qubit;
            e["layer"] = to_string(slots[i].layer);
            e["angle"] = to_string(slots[i].angle);
        }
        lay.push_back(std::move(e));
    }
    j["values"] = std::vector<double>(p.values().begin(), p.values().end());
    return j.dump(2);
}

ParamVector params_from_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("params_from_json: ") + e.what());
    }
    try {
        const ModelSpec spec = ModelSpec::make(family_from_string(j.at("family").get<std::string>()),
                                               j.at("n_qubits").get<int>(),
                                               entangler_from_string(j.at("entangler").get<std::string>()),
                                               j.at("param_count").get<int>());
        if (j.contains("layout")) {
            const auto slots = layout(spec);
            const auto& lay = j.at("layout");
            if (lay.size() != slots.size()) {
                throw InvalidArgument("params_from_json: layout length mismatch");
            }
            for (std::size_t i = 0; i < slots.size(); ++i) {
                if (lay[i].at("label").get<std::string>() != slots[i].label) {
                    throw InvalidArgument("params_from_json: layout entry " + std::to_string(i) + " is '" +
                                          lay[i].at("label").get<std::string>() + "', expected '" + slots[i].label + "'");
                }
            }
        }
        return ParamVector(spec, j.at("values").get<std::vector<double>>());
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("params_from_json: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// Execution

RunOptions RunOptions::noisy(NoiseConfig n) {
    RunOptions o;
    o.backend = Backend::density_matrix;
    o.noise = n;
    return o;
}

RunOptions RunOptions::without_entangler() {
    RunOptions o;
    o.entangler_mask = std::vector<bool>(1, false);
    return o;
}

double TrajectoryRecord::final_z() const {
    if (steps.empty() || steps.back().bloch.empty()) {
        throw InvalidArgument("trajectory has no Bloch probe");
    }
    return steps.back().bloch.front().z;
}

int predict(double p1) { return p1 > 0.5 ? 1 : 0; }

double readout_p1(const StateVector& s) {
    double p1 = 0.0;
    for (std::size_t i = 1; i < s.dim(); i += 2) {
        p1 += std::norm(s[i]);
    }
    return p1;
}

double readout_p1(const DensityMatrix& rho) {
    double p1 = 0.0;
    for (std::size_t i = 1; i < rho.dim(); i += 2) {
        p1 += rho(i, i).real();
    }
    return p1;
}

void apply_timestep(const ParamVector& params, const Token& token, int t, StateVector& state, const RunOptions& o) {
    check_family(params, true, "apply_timestep");
    check_noise_backend(o);
    Circuit(params).step(token, t, state, o);
}

void apply_timestep(const ParamVector& params, const Token& token, int t, DensityMatrix& state, const RunOptions& o) {
    check_family(params, true, "apply_timestep");
    Circuit(params).step(token, t, state, o);
}

TrajectoryRecord run_quantum(const ParamVector& params, const SequenceSample& sample, const RunOptions& o) {
    check_family(params, true, "run_quantum");
    check_noise_backend(o);
    if (o.backend == Backend::density_matrix) {
        return run_with<DensityMatrix>(params, sample, o);
    }
    return run_with<StateVector>(params, sample, o);
}

TrajectoryRecord run_classical_so3(const ParamVector& params, const SequenceSample& sample) {
    if (params.spec().family != Family::ClassicalSO3) {
        throw InvalidArgument("run_classical_so3: expected ClassicalSO3 parameters, got " + params.spec().label());
    }
    TrajectoryRecord rec;
    rec.final_p1 = so3_p1(params, sample, &rec);
    rec.prediction = predict(rec.final_p1);
    return rec;
}

TrajectoryRecord run_classical_rnn4(const ParamVector& params, const SequenceSample& sample) {
    if (params.spec().family != Family::ClassicalRNN4) {
        throw InvalidArgument("run_classical_rnn4: expected ClassicalRNN4 parameters, got " + params.spec().label());
    }
    TrajectoryRecord rec;
    rec.final_p1 = rnn_p1(params, sample, &rec);
    rec.prediction = predict(rec.final_p1);
    return rec;
}

TrajectoryRecord run_model(const ParamVector& params, const SequenceSample& sample, const RunOptions& o) {
    switch (params.spec().family) {
        case Family::ClassicalSO3: return run_classical_so3(params, sample);
        case Family::ClassicalRNN4: return run_classical_rnn4(params, sample);
        default: return run_quantum(params, sample, o);
    }
}

namespace {

double predict_with(const Circuit& circuit, const ParamVector& params, const SequenceSample& sample,
                    const RunOptions& o) {
    if (o.backend == Backend::density_matrix) {
        DensityMatrix rho(params.spec().n_qubits);
        for (std::size_t t = 0; t < sample.tokens.size(); ++t) {
            circuit.step(sample.tokens[t], static_cast<int>(t), rho, o);
        }
        return readout_p1(rho);
    }
    StateVector s(params.spec().n_qubits);
    for (std::size_t t = 0; t < sample.tokens.size(); ++t) {
        circuit.step(sample.tokens[t], static_cast<int>(t), s, o);
    }
    return readout_p1(s);
}

template <class Fn>
void for_each_p1(const ParamVector& params, const Dataset& data, const RunOptions& o, Fn fn) {
    switch (params.spec().family) {
        case Family::ClassicalSO3:
            for (const auto& s : data.samples) fn(s, so3_p1(params, s, nullptr));
            return;
        case Family::ClassicalRNN4:
            for (const auto& s : data.samples) fn(s, rnn_p1(params, s, nullptr));
            return;
        default: {
            check_noise_backend(o);
            const Circuit circuit(params);
            for (const auto& s : data.samples) fn(s, predict_with(circuit, params, s, o));
        }
    }
}

}  // namespace

double predict_p1(const ParamVector& params, const SequenceSample& sample, const RunOptions& o) {
    double p = 0.5;
    const Dataset one{{sample}, Split::eval};
    for_each_p1(params, one, o, [&](const SequenceSample&, double p1) { p = p1; });
    return p;
}

double delta_z(const TrajectoryRecord& a, const TrajectoryRecord& b) {
    if (a.steps.size() != b.steps.size()) {
        throw InvalidArgument("delta_z: runs have different lengths");
    }
    return std::abs(a.final_z() - b.final_z());
}

double accuracy(const ParamVector& params, const Dataset& data, const RunOptions& o) {
    if (data.samples.empty()) {
        return 0.0;
    }
    std::size_t hits = 0;
    for_each_p1(params, data, o, [&](const SequenceSample& s, double p1) { hits += predict(p1) == s.label ? 1 : 0; });
    return static_cast<double>(hits) / static_cast<double>(data.samples.size());
}

double mean_loss(const ParamVector& params, const Dataset& data, const RunOptions& o) {
    if (data.samples.empty()) {
        return 0.0;
    }
    double acc = 0.0;
    for_each_p1(params, data, o, [&](const SequenceSample& s, double p1) { acc += loss(p1, s.label); });
    return acc / static_cast<double>(data.samples.size());
}

}  // namespace qmem
