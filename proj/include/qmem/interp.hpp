#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qmem/grammar.hpp"
#include "qmem/models.hpp"
#include "qmem/optim.hpp"
#include "qmem/stats.hpp"

namespace qmem {

// ---- CNOT ablation ---------------------------------------------------------

struct AblationPair {
    double baseline_acc = 0.0;
    double ablated_acc = 0.0;
    double delta_pp() const { return (baseline_acc - ablated_acc) * 100.0; }
};

/// Re-evaluates with the entangler removed at `timesteps` (empty: all of them).
/// Throws InvalidArgument unless the model's entangler is cnot.
AblationPair ablate_cnot(const ParamVector& params, const Dataset& eval, const std::vector<int>& timesteps = {});

struct AblationRow {
    std::uint64_t seed = 0;
    double baseline_acc = 0.0;
    double ablated_acc = 0.0;
    double delta_pp = 0.0;
};

struct AblationReport {
    std::vector<AblationRow> rows;
    double mean_delta = 0.0;
    double std_delta = 0.0;           // population
    std::optional<TTestResult> test;  // absent when every delta is equal
};

AblationReport summarize_ablation(std::vector<AblationRow> rows);

// ---- entanglement entropy --------------------------------------------------

inline constexpr double kEntropyThreshold = 0.05;

struct EntropyDivergence {
    std::vector<double> s_a;
    std::vector<double> s_b;
    std::vector<double> abs_diff;  // |S_A - S_B| per timestep
    double mean_abs_divergence = 0.0;
    bool entangling = false;       // mean_abs_divergence > kEntropyThreshold
};

/// Runs (A, n) and (B, n) and compares the qubit-0 entropy per timestep.
/// Throws InvalidArgument for single-qubit or classical specs.
EntropyDivergence entropy_divergence(const ParamVector& params, int n_distractors = 10, const RunOptions& options = {});

// ---- interchange -----------------------------------------------------------

struct InterchangeStep {
    int t = 0;  // tokens processed before the splice
    double s_a = 0.0;
    double s_b = 0.0;
    int pred_a_to_b = 0;  // B run continued from A's state
    int pred_b_to_a = 0;
    bool donor_carried = false;
};

struct InterchangeResult {
    std::vector<InterchangeStep> steps;
    int carried() const;
};

/// Splices full statevectors between the A and B runs after t = 1..n+1 tokens
/// and finishes each run on the other context's remaining tokens.
InterchangeResult interchange_intervention(const ParamVector& params, int n_distractors = 10,
                                           const RunOptions& options = {});

// ---- single-parameter interventions ---------------------------------------

enum class Perturbation { zero, negate };

struct SensitivityResult {
    std::size_t index = 0;
    double baseline_acc = 0.0;
    double perturbed_acc = 0.0;
    double delta_pp() const { return (baseline_acc - perturbed_acc) * 100.0; }
};

SensitivityResult weight_sensitivity(const ParamVector& params, std::size_t index, Perturbation mode,
                                     const Dataset& eval);

struct SweepPoint {
    double value = 0.0;
    double accuracy = 0.0;
};

std::vector<SweepPoint> sweep_parameter(const ParamVector& params, std::size_t index, const std::vector<double>& grid,
                                        const Dataset& eval);

// ---- phase sweep -----------------------------------------------------------

std::vector<double> linspace(double lo, double hi, int n);

struct PhasePoint {
    double theta2_dist = 0.0;
    double accuracy = 0.0;           // on the (A, n), (B, n) pair
    double z_variance = 0.0;         // variance of z over distractor timesteps, averaged over contexts
    std::vector<double> z_a;         // per timestep
    std::vector<double> z_b;
    std::optional<double> period;    // 2 pi / theta2_dist
};

/// Overrides the distractor theta2 of a decoupled single-qubit model.
std::vector<PhasePoint> phase_sweep(const ParamVector& params, const std::vector<double>& grid, int n_distractors = 10);

/// Max |z(k + N) - z(k)| over k of the distractor-only z trajectory with
/// theta2_dist = 2 pi / N, started from the context-A state.
double recurrence_error(const ParamVector& params, int period, int cycles = 3);

// ---- noise, encoding, scaling ---------------------------------------------

struct NoiseRow {
    std::string model;
    double p = 0.0;
    double accuracy = 0.0;
};

/// Depolarizing rate p per gate, density-matrix evolution.
std::vector<NoiseRow> noise_sweep(const std::vector<ParamVector>& models, const std::vector<double>& ps,
                                  const Dataset& eval);

struct SeedOutcome {
    std::uint64_t seed = 0;
    TrainResult result;
    std::optional<EntropyDivergence> divergence;
};

/// Best-of-restarts SPSA training for each seed. Seeds run on up to `workers`
/// threads; results come back in seed order.
std::vector<SeedOutcome> train_seeds(const ModelSpec& spec, const std::vector<std::uint64_t>& seeds, int restarts,
                                     const Dataset& train, const Dataset& eval, int workers = 1);

struct EncodingRow {
    double multiplier = 1.0;
    std::vector<double> accuracies;
    double mean = 0.0;
    double std = 0.0;
};

std::vector<EncodingRow> encoding_sweep(const std::vector<double>& multipliers, const std::vector<std::uint64_t>& seeds,
                                        int restarts = 3, int workers = 1);

struct ScalingRow {
    int n_qubits = 2;
    Entangler entangler = Entangler::none;
    std::vector<SeedOutcome> seeds;
    Summary accuracy;
    Summary divergence;
};

std::vector<ScalingRow> scaling_experiment(const std::vector<int>& n_qubits, const std::vector<Entangler>& entanglers,
                                           const std::vector<std::uint64_t>& seeds, int restarts = 3,
                                           int workers = 1);

// ---- invariance witnesses ---------------------------------------------------

/// Largest |z' - z| of the shared-parameter distractor gate
/// Rz(theta3) Ry(theta2) Rz(theta1) over the given Bloch states.
double distractor_z_drift(double theta1, double theta2, double theta3, const std::vector<BlochVector>& states);

/// `count` points spread over the unit sphere (Fibonacci lattice).
std::vector<BlochVector> sphere_points(int count);

struct DequantizationCheck {
    int sequences = 0;
    int steps = 0;
    double max_deviation = 0.0;
};

/// Random gate sequences of length 1..max_length: compares the Bloch vector
/// of the evolved statevector with the SO(3) image after every gate.
DequantizationCheck dequantization_check(int sequences, int max_length, std::uint64_t seed);

}  // namespace qmem
