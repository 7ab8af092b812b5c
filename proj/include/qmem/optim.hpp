#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "qmem/grammar.hpp"
#include "qmem/models.hpp"
#include "qmem/rng.hpp"

namespace qmem {

/// Spall's SPSA gains: a_k = a / (A + k + 1)^alpha, c_k = c / (k + 1)^gamma.
struct SpsaConfig {
    std::string name = "Default";
    double a = 0.2;
    double c = 0.1;
    double A = 10.0;
    double alpha = 0.602;
    double gamma = 0.101;
    int steps = 200;
    std::uint64_t seed = 0;

    /// Default preset with 200 steps for single-qubit and SO(3) models, 300 otherwise.
    static SpsaConfig for_model(const ModelSpec& spec, std::uint64_t seed = 0);

    double gain_a(int k) const;
    double gain_c(int k) const;
};

/// Default, Conservative, Aggressive, HighPrecision with (a, c, A) =
/// (0.2, 0.1, 10), (0.1, 0.05, 20), (0.4, 0.2, 5), (0.15, 0.05, 15).
std::vector<SpsaConfig> named_presets(int steps = 200);

struct TrainResult {
    ParamVector final_params;
    double final_train_loss = 0.0;
    double train_accuracy = 0.0;
    double eval_accuracy = 0.0;
    double wallclock_s = 0.0;
    std::uint64_t seed = 0;  // seed that produced this run (sub-seed for restarts)
    int restart = 0;
};

using Objective = std::function<double(std::span<const double>)>;

/// One two-evaluation SPSA gradient estimate with a Rademacher perturbation.
std::vector<double> spsa_gradient(const Objective& f, std::span<const double> theta, double ck, Rng& rng);

/// Runs config.steps SPSA iterations from theta0. Perturbations come from
/// config.seed. Throws NumericalError when the objective turns non-finite.
std::vector<double> spsa_minimize(const Objective& f, std::vector<double> theta0, const SpsaConfig& config);

/// Adam on a central finite-difference gradient (step eps per coordinate).
struct AdamConfig {
    double lr = 0.01;
    int steps = 2000;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps_adam = 1e-8;
    double fd_eps = 1e-4;
    std::uint64_t seed = 0;
};

std::vector<double> adam_fd_minimize(const Objective& f, std::vector<double> theta0, const AdamConfig& config);

/// SPSA on the mean training loss from a seeded random initialization.
TrainResult spsa_train(const ModelSpec& spec, const SpsaConfig& config, const Dataset& train, const Dataset& eval);

/// Best of `restarts` spsa_train runs. Restart 0 uses config.seed; restart r
/// uses mix_seed(config.seed, r). Lowest train loss wins, then higher train
/// accuracy, then lower restart index.
TrainResult train_with_restarts(const ModelSpec& spec, const SpsaConfig& config, const Dataset& train,
                                const Dataset& eval, int restarts = 3);

TrainResult adam_train_fd(const ModelSpec& spec, const AdamConfig& config, const Dataset& train, const Dataset& eval);

struct PresetRow {
    SpsaConfig preset;
    double mean_accuracy = 0.0;
    double std_accuracy = 0.0;
    double mean_wallclock_s = 0.0;
    double std_wallclock_s = 0.0;
    double best_of_3_mean_accuracy = 0.0;
    std::vector<double> accuracies;  // single-run eval accuracy per seed
};

/// Single-run and best-of-3 accuracy for each preset over seeds 0..seeds-1.
std::vector<PresetRow> preset_sweep(const ModelSpec& spec, const std::vector<SpsaConfig>& presets, int seeds,
                                    const Dataset& train, const Dataset& eval);

}  // namespace qmem
