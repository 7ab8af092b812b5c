#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qmem/grammar.hpp"
#include "qmem/qcore/density_matrix.hpp"
#include "qmem/qcore/state_vector.hpp"
#include "qmem/rng.hpp"

namespace qmem {

enum class Family { MinimalQLM, DecoupledQLM, TwoQubitQLM, NQubitQLM, ClassicalSO3, ClassicalRNN4 };
enum class Entangler { none, cnot, swap };

/// Architecture descriptor. Construct through the named factories or make(),
/// which enforce the parameter-count law {3, 6, 24, 36, 48}.
struct ModelSpec {
    Family family = Family::DecoupledQLM;
    int n_qubits = 1;
    Entangler entangler = Entangler::none;
    int param_count = 6;

    static ModelSpec make(Family family, int n_qubits, Entangler entangler, int param_count);
    static ModelSpec minimal();
    static ModelSpec decoupled();
    static ModelSpec two_qubit(Entangler entangler);
    /// 2 qubits maps to TwoQubitQLM; 3-4 qubits to NQubitQLM (linear chain).
    static ModelSpec n_qubit(int n_qubits, Entangler entangler);
    static ModelSpec classical_so3(bool decoupled_roles);
    static ModelSpec classical_rnn4();

    bool is_quantum() const;
    /// One parameter set serves context and distractor tokens.
    bool shared_roles() const;
    /// Quantum families with pre- and post-entangler rotation layers.
    bool layered() const;
    /// Short human label, e.g. "DecoupledQLM", "2Q+CNOT", "3Q-none", "SO3-6".
    std::string label() const;

    bool operator==(const ModelSpec&) const = default;
};

std::string_view to_string(Family f);
std::string_view to_string(Entangler e);
Family family_from_string(std::string_view s);
Entangler entangler_from_string(std::string_view s);

enum class Role { shared, context, distractor };
enum class Layer { pre, post };
enum class Angle { theta1, theta2, theta3 };

std::string_view to_string(Role r);
std::string_view to_string(Layer l);
std::string_view to_string(Angle a);

/// Meaning of one entry of a flat parameter vector. Rotation families fill
/// the quantum fields; the RNN uses only `label`.
struct ParamSlot {
    std::string label;
    std::optional<Role> role;
    int qubit = 0;
    Layer layer = Layer::pre;
    Angle angle = Angle::theta1;
};

/// Total layout: entry i names parameter i. Rotation families are ordered
/// role-major, then qubit, layer, angle.
std::vector<ParamSlot> layout(const ModelSpec& spec);

/// Index of a rotation angle; throws InvalidArgument if the layout lacks it.
std::size_t param_index(const ModelSpec& spec, Role role, int qubit, Layer layer, Angle angle);

class ParamVector {
public:
    ParamVector(ModelSpec spec, std::vector<double> values);
    static ParamVector zeros(const ModelSpec& spec);
    /// Uniform in [-pi, pi] for rotation families, [-0.5, 0.5] for RNN weights.
    static ParamVector random(const ModelSpec& spec, Rng& rng);

    const ModelSpec& spec() const { return spec_; }
    std::span<const double> values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    /// Copy with entry i replaced; throws InvalidArgument if i is out of range.
    ParamVector with(std::size_t i, double v) const;
    ParamVector with_values(std::vector<double> values) const;

private:
    ModelSpec spec_;
    std::vector<double> values_;
};

std::string params_to_json(const ParamVector& p);
ParamVector params_from_json(std::string_view text);

enum class Backend { statevector, density_matrix };

/// Depolarizing rate per gate and optional amplitude damping per gate.
struct NoiseConfig {
    double depolarizing_p = 0.0;
    double damping_gamma = 0.0;
};

struct RunOptions {
    Backend backend = Backend::statevector;
    std::optional<NoiseConfig> noise;
    /// Entangler applied at timestep t iff the mask is empty or mask[t] is true.
    std::vector<bool> entangler_mask;
    /// Keep full state snapshots in trajectories.
    bool snapshots = true;

    static RunOptions noisy(NoiseConfig n);
    static RunOptions without_entangler();
};

using Snapshot = std::variant<std::monostate, StateVector, DensityMatrix, std::vector<double>>;

struct TimestepProbe {
    std::vector<BlochVector> bloch;     // per qubit; SO(3) baseline stores its vector here
    std::optional<double> entropy_q0;   // bits; multi-qubit families only
    Snapshot snapshot;                  // RNN4 stores its hidden state
};

struct TrajectoryRecord {
    std::vector<TimestepProbe> steps;   // one per token
    double final_p1 = 0.5;
    int prediction = 0;

    double final_z() const;
};

/// Decision rule: class 1 iff P(1) > 0.5 (ties go to 0).
int predict(double p1);

TrajectoryRecord run_quantum(const ParamVector& params, const SequenceSample& sample, const RunOptions& options = {});
TrajectoryRecord run_classical_so3(const ParamVector& params, const SequenceSample& sample);
TrajectoryRecord run_classical_rnn4(const ParamVector& params, const SequenceSample& sample);
/// Dispatches on params.spec().family.
TrajectoryRecord run_model(const ParamVector& params, const SequenceSample& sample, const RunOptions& options = {});

/// P(1) without probes; the training and evaluation hot path.
double predict_p1(const ParamVector& params, const SequenceSample& sample, const RunOptions& options = {});

/// Stepping interface used by interventions. Timestep t processes token t.
void apply_timestep(const ParamVector& params, const Token& token, int t, StateVector& state,
                    const RunOptions& options = {});
void apply_timestep(const ParamVector& params, const Token& token, int t, DensityMatrix& state,
                    const RunOptions& options = {});
double readout_p1(const StateVector& state);
double readout_p1(const DensityMatrix& state);

/// |z_A - z_B| after the final timestep of two equally long runs.
double delta_z(const TrajectoryRecord& a, const TrajectoryRecord& b);

double accuracy(const ParamVector& params, const Dataset& data, const RunOptions& options = {});
double mean_loss(const ParamVector& params, const Dataset& data, const RunOptions& options = {});

}  // namespace qmem
