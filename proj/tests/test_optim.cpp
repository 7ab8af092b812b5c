#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "qmem/error.hpp"
#include "qmem/optim.hpp"

using namespace qmem;

namespace {

double norm(const std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) acc += x * x;
    return std::sqrt(acc);
}

double sphere(std::span<const double> x) {
    double acc = 0.0;
    for (double v : x) acc += v * v;
    return acc;
}

}  // namespace

TEST_CASE("gain schedules") {
    SpsaConfig c;
    CHECK(c.gain_a(0) == doctest::Approx(0.2 / std::pow(11.0, 0.602)));
    CHECK(c.gain_c(0) == doctest::Approx(0.1));
    CHECK(c.gain_c(9) == doctest::Approx(0.1 / std::pow(10.0, 0.101)));
    for (int k = 0; k < 500; ++k) {
        CHECK(c.gain_a(k + 1) < c.gain_a(k));
        CHECK(c.gain_c(k + 1) < c.gain_c(k));
    }
}

TEST_CASE("presets") {
    const auto presets = named_presets();
    REQUIRE(presets.size() == 4);
    CHECK(presets[0].name == "Default");
    CHECK(presets[2].name == "Aggressive");
    CHECK(presets[2].a == 0.4);
    CHECK(presets[2].c == 0.2);
    CHECK(presets[2].A == 5.0);
    CHECK(presets[3].a == 0.15);
    CHECK(presets[3].A == 15.0);
    for (const SpsaConfig& p : presets) {
        CHECK(p.alpha == 0.602);
        CHECK(p.gamma == 0.101);
        CHECK(p.steps == 200);
    }
    CHECK(SpsaConfig::for_model(ModelSpec::decoupled()).steps == 200);
    CHECK(SpsaConfig::for_model(ModelSpec::classical_so3(true)).steps == 200);
    CHECK(SpsaConfig::for_model(ModelSpec::two_qubit(Entangler::cnot)).steps == 300);
    CHECK(SpsaConfig::for_model(ModelSpec::n_qubit(4, Entangler::none)).steps == 300);
}

TEST_CASE("SPSA estimator is unbiased on a quadratic") {
    const std::vector<double> theta{0.8, -1.3, 0.4, 2.0};
    Rng rng(4);
    std::vector<double> mean(theta.size(), 0.0);
    const int n = 10000;
    for (int i = 0; i < n; ++i) {
        const std::vector<double> g = spsa_gradient(sphere, theta, 0.1, rng);
        for (std::size_t j = 0; j < g.size(); ++j) mean[j] += g[j] / n;
    }
    std::vector<double> err(theta.size());
    std::vector<double> truth(theta.size());
    for (std::size_t j = 0; j < theta.size(); ++j) {
        truth[j] = 2 * theta[j];
        err[j] = mean[j] - truth[j];
    }
    CHECK(norm(err) / norm(truth) < 0.05);
}

TEST_CASE("SPSA single estimate is exact along the perturbation") {
    // For f = |x|^2 the central difference is exact: g_i = 2 (theta . delta) / delta_i.
    const std::vector<double> theta{0.5, -0.25};
    Rng a(10), b(10);
    const std::vector<double> g = spsa_gradient(sphere, theta, 0.3, a);
    const double d0 = b.rademacher(), d1 = b.rademacher();
    const double dot = theta[0] * d0 + theta[1] * d1;
    CHECK(g[0] == doctest::Approx(2 * dot / d0));
    CHECK(g[1] == doctest::Approx(2 * dot / d1));
}

TEST_CASE("SPSA converges on a quadratic") {
    SpsaConfig c;
    c.seed = 1;
    const std::vector<double> x = spsa_minimize(sphere, {1.0, -1.0, 0.5}, c);
    CHECK(norm(x) < 0.1);
}

TEST_CASE("SPSA is deterministic and zero steps is a no-op") {
    SpsaConfig c;
    c.seed = 77;
    CHECK(spsa_minimize(sphere, {1.0, 2.0}, c) == spsa_minimize(sphere, {1.0, 2.0}, c));
    c.steps = 0;
    CHECK(spsa_minimize(sphere, {1.0, 2.0}, c) == std::vector<double>{1.0, 2.0});
}

TEST_CASE("non-finite objective aborts") {
    const Objective bad = [](std::span<const double> x) {
        return x[0] > 0.5 ? std::numeric_limits<double>::quiet_NaN() : x[0] * x[0];
    };
    SpsaConfig c;
    CHECK_THROWS_AS(spsa_minimize(bad, {1.0}, c), NumericalError);
    CHECK_THROWS_AS(adam_fd_minimize(bad, {1.0}, AdamConfig{}), NumericalError);
}

TEST_CASE("Adam with finite differences converges on a quadratic") {
    const std::vector<double> x = adam_fd_minimize(sphere, {1.0, -1.0, 0.5}, AdamConfig{});
    CHECK(norm(x) < 1e-3);
    AdamConfig zero;
    zero.steps = 0;
    CHECK(adam_fd_minimize(sphere, {1.0, -1.0}, zero) == std::vector<double>{1.0, -1.0});
}

TEST_CASE("model training is deterministic") {
    const Dataset train = build_train_set();
    const Dataset eval = build_eval_set();
    SpsaConfig c = SpsaConfig::for_model(ModelSpec::decoupled(), 3);
    c.steps = 40;
    const TrainResult a = spsa_train(ModelSpec::decoupled(), c, train, eval);
    const TrainResult b = spsa_train(ModelSpec::decoupled(), c, train, eval);
    REQUIRE(a.final_params.size() == 6);
    for (std::size_t i = 0; i < 6; ++i) CHECK(a.final_params[i] == b.final_params[i]);
    CHECK(a.final_train_loss == b.final_train_loss);
    CHECK(a.eval_accuracy == b.eval_accuracy);
    CHECK(a.final_train_loss == doctest::Approx(mean_loss(a.final_params, train)));
    CHECK(a.train_accuracy == doctest::Approx(accuracy(a.final_params, train)));
    CHECK(a.eval_accuracy >= 0.0);
    CHECK(a.eval_accuracy <= 1.0);
}

TEST_CASE("training lowers the loss") {
    const Dataset train = build_train_set();
    const Dataset eval = build_eval_set();
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        SpsaConfig c = SpsaConfig::for_model(ModelSpec::decoupled(), seed);
        c.steps = 0;
        const TrainResult before = spsa_train(ModelSpec::decoupled(), c, train, eval);
        c.steps = 200;
        const TrainResult after = spsa_train(ModelSpec::decoupled(), c, train, eval);
        CHECK(after.final_train_loss < before.final_train_loss);
    }
}

TEST_CASE("restarts") {
    const Dataset train = build_train_set();
    const Dataset eval = build_eval_set();
    SpsaConfig c = SpsaConfig::for_model(ModelSpec::minimal(), 5);
    c.steps = 30;
    const TrainResult one = train_with_restarts(ModelSpec::minimal(), c, train, eval, 1);
    const TrainResult direct = spsa_train(ModelSpec::minimal(), c, train, eval);
    for (std::size_t i = 0; i < 3; ++i) CHECK(one.final_params[i] == direct.final_params[i]);
    CHECK(one.restart == 0);

    const TrainResult best = train_with_restarts(ModelSpec::minimal(), c, train, eval, 3);
    CHECK(best.final_train_loss <= direct.final_train_loss);
    for (int r = 0; r < 3; ++r) {
        SpsaConfig sub = c;
        sub.seed = r == 0 ? c.seed : mix_seed(c.seed, static_cast<std::uint64_t>(r));
        CHECK(best.final_train_loss <= spsa_train(ModelSpec::minimal(), sub, train, eval).final_train_loss);
    }
    CHECK_THROWS_AS(train_with_restarts(ModelSpec::minimal(), c, train, eval, 0), InvalidArgument);
}

TEST_CASE("Adam trains the RNN") {
    const Dataset train = build_train_set();
    const Dataset eval = build_eval_set();
    AdamConfig c;
    c.seed = 0;
    c.steps = 0;
    const TrainResult r0 = adam_train_fd(ModelSpec::classical_rnn4(), c, train, eval);
    c.steps = 300;
    const TrainResult r = adam_train_fd(ModelSpec::classical_rnn4(), c, train, eval);
    CHECK(r.final_train_loss < r0.final_train_loss);
}

TEST_CASE("preset sweep") {
    const Dataset train = build_train_set();
    const Dataset eval = build_eval_set();
    CHECK(preset_sweep(ModelSpec::decoupled(), {}, 5, train, eval).empty());
    std::vector<SpsaConfig> presets = named_presets(20);
    presets.resize(2);
    const auto rows = preset_sweep(ModelSpec::decoupled(), presets, 2, train, eval);
    REQUIRE(rows.size() == 2);
    CHECK(rows[1].preset.name == "Conservative");
    CHECK(rows[0].accuracies.size() == 2);
    CHECK(rows[0].best_of_3_mean_accuracy >= 0.0);
    CHECK(rows[0].mean_accuracy == doctest::Approx((rows[0].accuracies[0] + rows[0].accuracies[1]) / 2));
}
