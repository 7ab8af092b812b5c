#include "qmem/optim.hpp"

#include <chrono>
#include <cmath>
#include <optional>
#include <string>

#include "qmem/error.hpp"
#include "qmem/stats.hpp"

namespace qmem {
namespace {

double checked(double v, const char* who, int step) {
    if (!std::isfinite(v)) {
        throw NumericalError(std::string(who) + ": non-finite loss at step " + std::to_string(step));
    }
    return v;
}

Objective training_objective(const ModelSpec& spec, const Dataset& train) {
    return [spec, &train](std::span<const double> theta) {
        return mean_loss(ParamVector(spec, {theta.begin(), theta.end()}), train);
    };
}

TrainResult finish(const ModelSpec& spec, std::vector<double> theta, const Dataset& train, const Dataset& eval,
                   std::chrono::steady_clock::time_point start, std::uint64_t seed) {
    ParamVector p(spec, std::move(theta));
    TrainResult r{p, 0.0, 0.0, 0.0, 0.0, seed, 0};
    r.final_train_loss = mean_loss(p, train);
    r.train_accuracy = accuracy(p, train);
    r.eval_accuracy = accuracy(p, eval);
    r.wallclock_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

}  // namespace

SpsaConfig SpsaConfig::for_model(const ModelSpec& spec, std::uint64_t seed) {
    SpsaConfig c;
    const bool single = spec.n_qubits == 1 && spec.family != Family::ClassicalRNN4;
    c.steps = single ? 200 : 300;
    c.seed = seed;
    return c;
}

double SpsaConfig::gain_a(int k) const { return a / std::pow(A + k + 1, alpha); }
double SpsaConfig::gain_c(int k) const { return c / std::pow(k + 1, gamma); }

std::vector<SpsaConfig> named_presets(int steps) {
    std::vector<SpsaConfig> out(4);
    out[0].name = "Default";
    out[1] = {"Conservative", 0.1, 0.05, 20.0};
    out[2] = {"Aggressive", 0.4, 0.2, 5.0};
    out[3] = {"HighPrecision", 0.15, 0.05, 15.0};
    for (auto& c : out) {
        c.steps = steps;
    }
    return out;
}

std::vector<double> spsa_gradient(const Objective& f, std::span<const double> theta, double ck, Rng& rng) {
    const std::size_t d = theta.size();
    std::vector<double> delta(d), plus(d), minus(d);
    for (std::size_t i = 0; i < d; ++i) {
        delta[i] = rng.rademacher();
        plus[i] = theta[i] + ck * delta[i];
        minus[i] = theta[i] - ck * delta[i];
    }
    const double diff = f(plus) - f(minus);
    std::vector<double> g(d);
    for (std::size_t i = 0; i < d; ++i) {
        g[i] = diff / (2.0 * ck * delta[i]);
    }
    return g;
}

std::vector<double> spsa_minimize(const Objective& f, std::vector<double> theta, const SpsaConfig& config) {
    Rng rng(mix_seed(config.seed, 0x5B5A));
    for (int k = 0; k < config.steps; ++k) {
        const double ak = config.gain_a(k);
        const double ck = config.gain_c(k);
        const std::vector<double> g = spsa_gradient(
            [&](std::span<const double> x) { return checked(f(x), "spsa_minimize", k); }, theta, ck, rng);
        for (std::size_t i = 0; i < theta.size(); ++i) {
            theta[i] -= ak * g[i];
        }
    }
    return theta;
}

std::vector<double> adam_fd_minimize(const Objective& f, std::vector<double> theta, const AdamConfig& cfg) {
    const std::size_t d = theta.size();
    std::vector<double> m(d, 0.0), v(d, 0.0), g(d);
    double b1t = 1.0;
    double b2t = 1.0;
    for (int step = 0; step < cfg.steps; ++step) {
        for (std::size_t i = 0; i < d; ++i) {
            const double keep = theta[i];
            theta[i] = keep + cfg.fd_eps;
            const double up = checked(f(theta), "adam_fd_minimize", step);
            theta[i] = keep - cfg.fd_eps;
            const double down = checked(f(theta), "adam_fd_minimize", step);
            theta[i] = keep;
            g[i] = (up - down) / (2.0 * cfg.fd_eps);
        }
        b1t *= cfg.beta1;
        b2t *= cfg.beta2;
        for (std::size_t i = 0; i < d; ++i) {
            m[i] = cfg.beta1 * m[i] + (1.0 - cfg.beta1) * g[i];
            v[i] = cfg.beta2 * v[i] + (1.0 - cfg.beta2) * g[i] * g[i];
            const double m_hat = m[i] / (1.0 - b1t);
            const double v_hat = v[i] / (1.0 - b2t);
            theta[i] -= cfg.lr * m_hat / (std::sqrt(v_hat) + cfg.eps_adam);
        }
    }
    return theta;
}

TrainResult spsa_train(const ModelSpec& spec, const SpsaConfig& config, const Dataset& train, const Dataset& eval) {
    const auto start = std::chrono::steady_clock::now();
    Rng init(mix_seed(config.seed, 0x1417));
    const ParamVector p0 = ParamVector::random(spec, init);
    std::vector<double> theta = spsa_minimize(training_objective(spec, train), {p0.values().begin(), p0.values().end()},
                                              config);
    return finish(spec, std::move(theta), train, eval, start, config.seed);
}

TrainResult train_with_restarts(const ModelSpec& spec, const SpsaConfig& config, const Dataset& train,
                                const Dataset& eval, int restarts) {
    if (restarts < 1) {
        throw InvalidArgument("train_with_restarts: restarts must be >= 1");
    }
    std::optional<TrainResult> best;
    for (int r = 0; r < restarts; ++r) {
        SpsaConfig sub = config;
        sub.seed = r == 0 ? config.seed : mix_seed(config.seed, static_cast<std::uint64_t>(r));
        TrainResult res = spsa_train(spec, sub, train, eval);
        res.restart = r;
        const bool better = !best || res.final_train_loss < best->final_train_loss ||
                            (res.final_train_loss == best->final_train_loss &&
                             res.train_accuracy > best->train_accuracy);
        if (better) {
            best = std::move(res);
        }
    }
    return *best;
}

TrainResult adam_train_fd(const ModelSpec& spec, const AdamConfig& config, const Dataset& train, const Dataset& eval) {
    const auto start = std::chrono::steady_clock::now();
    Rng init(mix_seed(config.seed, 0x1417));
    const ParamVector p0 = ParamVector::random(spec, init);
    std::vector<double> theta = adam_fd_minimize(training_objective(spec, train),
                                                 {p0.values().begin(), p0.values().end()}, config);
    return finish(spec, std::move(theta), train, eval, start, config.seed);
}

std::vector<PresetRow> preset_sweep(const ModelSpec& spec, const std::vector<SpsaConfig>& presets, int seeds,
                                    const Dataset& train, const Dataset& eval) {
    std::vector<PresetRow> rows;
    for (const SpsaConfig& preset : presets) {
        PresetRow row;
        row.preset = preset;
        std::vector<double> times, best;
        for (int s = 0; s < seeds; ++s) {
            SpsaConfig c = preset;
            c.seed = static_cast<std::uint64_t>(s);
            const TrainResult single = spsa_train(spec, c, train, eval);
            row.accuracies.push_back(single.eval_accuracy);
            times.push_back(single.wallclock_s);
            best.push_back(train_with_restarts(spec, c, train, eval, 3).eval_accuracy);
        }
        const Summary acc = summarize(row.accuracies);
        const Summary t = summarize(times);
        row.mean_accuracy = acc.mean;
        row.std_accuracy = acc.std;
        row.mean_wallclock_s = t.mean;
        row.std_wallclock_s = t.std;
        row.best_of_3_mean_accuracy = summarize(best).mean;
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace qmem
