#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "qmem/error.hpp"
#include "qmem/models.hpp"
#include "qmem/qcore/unitary.hpp"

using namespace qmem;
using std::numbers::pi;

namespace {

std::vector<ModelSpec> all_specs() {
    return {ModelSpec::minimal(),
            ModelSpec::decoupled(),
            ModelSpec::two_qubit(Entangler::cnot),
            ModelSpec::two_qubit(Entangler::none),
            ModelSpec::two_qubit(Entangler::swap),
            ModelSpec::n_qubit(3, Entangler::cnot),
            ModelSpec::n_qubit(4, Entangler::none),
            ModelSpec::classical_so3(false),
            ModelSpec::classical_so3(true),
            ModelSpec::classical_rnn4()};
}

ParamVector random_params(const ModelSpec& spec, std::uint64_t seed) {
    Rng rng(seed);
    return ParamVector::random(spec, rng);
}

}  // namespace

TEST_CASE("parameter-count law") {
    CHECK(ModelSpec::minimal().param_count == 3);
    CHECK(ModelSpec::decoupled().param_count == 6);
    CHECK(ModelSpec::two_qubit(Entangler::cnot).param_count == 24);
    CHECK(ModelSpec::n_qubit(3, Entangler::cnot).param_count == 36);
    CHECK(ModelSpec::n_qubit(4, Entangler::none).param_count == 48);
    CHECK(ModelSpec::classical_so3(false).param_count == 3);
    CHECK(ModelSpec::classical_so3(true).param_count == 6);
    CHECK(ModelSpec::classical_rnn4().param_count == 24);
    CHECK(ModelSpec::n_qubit(2, Entangler::swap).family == Family::TwoQubitQLM);

    CHECK_THROWS_AS(ModelSpec::make(Family::DecoupledQLM, 1, Entangler::none, 3), InvalidArgument);
    CHECK_THROWS_AS(ModelSpec::make(Family::TwoQubitQLM, 2, Entangler::cnot, 16), InvalidArgument);
    CHECK_THROWS_AS(ModelSpec::make(Family::NQubitQLM, 3, Entangler::cnot, 24), InvalidArgument);
    CHECK_THROWS_AS(ModelSpec::make(Family::MinimalQLM, 1, Entangler::cnot, 3), InvalidArgument);
    CHECK_THROWS_AS(ModelSpec::n_qubit(5, Entangler::cnot), InvalidArgument);
    CHECK_NOTHROW(ModelSpec::make(Family::NQubitQLM, 3, Entangler::none, 36));
}

TEST_CASE("layout is total and uniquely labelled") {
    for (const ModelSpec& spec : all_specs()) {
        CAPTURE(spec.label());
        const auto slots = layout(spec);
        REQUIRE(static_cast<int>(slots.size()) == spec.param_count);
        std::set<std::string> labels;
        for (const ParamSlot& s : slots) labels.insert(s.label);
        CHECK(labels.size() == slots.size());
        for (std::size_t i = 0; i < slots.size(); ++i) {
            if (slots[i].role) {
                CHECK(param_index(spec, *slots[i].role, slots[i].qubit, slots[i].layer, slots[i].angle) == i);
            }
        }
    }
    const ModelSpec d = ModelSpec::decoupled();
    CHECK(param_index(d, Role::context, 0, Layer::pre, Angle::theta2) == 1);
    CHECK(param_index(d, Role::distractor, 0, Layer::pre, Angle::theta2) == 4);
    CHECK_THROWS_AS(param_index(d, Role::shared, 0, Layer::pre, Angle::theta2), InvalidArgument);
    CHECK_THROWS_AS(param_index(d, Role::context, 0, Layer::post, Angle::theta2), InvalidArgument);
    CHECK_THROWS_AS(param_index(d, Role::context, 1, Layer::pre, Angle::theta2), InvalidArgument);
}

TEST_CASE("param vectors validate length and index") {
    CHECK_THROWS_AS(ParamVector(ModelSpec::decoupled(), {1, 2, 3}), InvalidArgument);
    const ParamVector p = ParamVector::zeros(ModelSpec::decoupled());
    CHECK(p.with(2, 1.5)[2] == 1.5);
    CHECK(p[2] == 0.0);
    CHECK_THROWS_AS(p.with(6, 1.0), InvalidArgument);

    const ParamVector r = random_params(ModelSpec::two_qubit(Entangler::cnot), 3);
    for (double v : r.values()) {
        CHECK(v >= -pi);
        CHECK(v <= pi);
    }
    const ParamVector rnn = random_params(ModelSpec::classical_rnn4(), 3);
    for (double v : rnn.values()) {
        CHECK(std::abs(v) <= 0.5);
    }
}

TEST_CASE("zero parameters: context rotation from the north pole") {
    // z after Ry(pi/3) from |0> is cos(pi/3), so P(1) = (1 - 1/2) / 2.
    for (const ModelSpec& spec : all_specs()) {
        if (spec.family == Family::ClassicalRNN4) continue;
        CAPTURE(spec.label());
        const ParamVector p = ParamVector::zeros(spec);
        const TrajectoryRecord a = run_model(p, make_sample(Context::A, 0));
        CHECK(a.final_z() == doctest::Approx(std::cos(pi / 3)));
        CHECK(a.final_p1 == doctest::Approx(0.25));
        CHECK(a.prediction == 0);
        // the distractor gate is the identity, so the state is frozen
        const TrajectoryRecord b = run_model(p, make_sample(Context::B, 7));
        CHECK(b.final_p1 == doctest::Approx(0.25));
        CHECK(b.steps.size() == 8);
        CHECK(b.steps.back().bloch[0].x == doctest::Approx(-std::sin(pi / 3)));
    }
}

TEST_CASE("identity SO(3) parameters never leave the pole without a context tilt") {
    const ParamVector p = ParamVector::zeros(ModelSpec::classical_so3(true));
    SequenceSample s = make_sample(Context::A, 3);
    s.tokens[0].encoding = 0.0;
    const TrajectoryRecord r = run_classical_so3(p, s);
    CHECK(r.final_z() == doctest::Approx(1.0));
    CHECK(r.final_p1 == doctest::Approx(0.0));
}

TEST_CASE("SO(3) baseline equals the quantum model") {
    for (bool decoupled : {false, true}) {
        const ModelSpec q = decoupled ? ModelSpec::decoupled() : ModelSpec::minimal();
        const ModelSpec c = ModelSpec::classical_so3(decoupled);
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            const ParamVector pq = random_params(q, seed);
            const ParamVector pc(c, {pq.values().begin(), pq.values().end()});
            const SequenceSample s = make_sample(seed % 2 ? Context::B : Context::A, static_cast<int>(seed % 13));
            const TrajectoryRecord rq = run_quantum(pq, s);
            const TrajectoryRecord rc = run_classical_so3(pc, s);
            REQUIRE(rq.steps.size() == rc.steps.size());
            for (std::size_t t = 0; t < rq.steps.size(); ++t) {
                const BlochVector a = rq.steps[t].bloch[0];
                const BlochVector b = rc.steps[t].bloch[0];
                CHECK(std::abs(a.x - b.x) < 1e-10);
                CHECK(std::abs(a.y - b.y) < 1e-10);
                CHECK(std::abs(a.z - b.z) < 1e-10);
            }
            CHECK(std::abs(rq.final_p1 - rc.final_p1) < 1e-10);
        }
    }
}

TEST_CASE("single-qubit run matches a hand-rolled gate product") {
    const ParamVector p = random_params(ModelSpec::decoupled(), 17);
    const SequenceSample s = make_sample(Context::B, 4);
    StateVector psi(1);
    for (const Token& tok : s.tokens) {
        const std::size_t b = tok.kind == TokenKind::D ? 3 : 0;
        psi.apply(make_rotation(p[b], p[b + 1] + tok.encoding, p[b + 2]), 0);
    }
    const double z = std::norm(psi[0]) - std::norm(psi[1]);
    CHECK(run_quantum(p, s).final_z() == doctest::Approx(z).epsilon(1e-12));
}

TEST_CASE("two-qubit run matches an explicit circuit") {
    const ModelSpec spec = ModelSpec::two_qubit(Entangler::cnot);
    const ParamVector p = random_params(spec, 5);
    const SequenceSample s = make_sample(Context::A, 3);
    auto gate = [&](Role r, int q, Layer l, double x) {
        return make_rotation(p[param_index(spec, r, q, l, Angle::theta1)],
                             p[param_index(spec, r, q, l, Angle::theta2)] + x,
                             p[param_index(spec, r, q, l, Angle::theta3)]);
    };
    StateVector psi(2);
    for (const Token& tok : s.tokens) {
        const Role r = tok.kind == TokenKind::D ? Role::distractor : Role::context;
        for (int q = 0; q < 2; ++q) psi.apply(gate(r, q, Layer::pre, tok.encoding), q);
        psi.cnot(0, 1);
        for (int q = 0; q < 2; ++q) psi.apply(gate(r, q, Layer::post, 0.0), q);
    }
    const double p1 = std::norm(psi[1]) + std::norm(psi[3]);
    const TrajectoryRecord rec = run_quantum(p, s);
    CHECK(rec.final_p1 == doctest::Approx(p1).epsilon(1e-12));
    CHECK(rec.steps.back().entropy_q0.has_value());
}

TEST_CASE("statevector and density-matrix backends agree without noise") {
    for (const ModelSpec& spec : all_specs()) {
        if (!spec.is_quantum()) continue;
        CAPTURE(spec.label());
        const ParamVector p = random_params(spec, 9);
        const SequenceSample s = make_sample(Context::B, 5);
        RunOptions dm;
        dm.backend = Backend::density_matrix;
        const TrajectoryRecord a = run_quantum(p, s);
        const TrajectoryRecord b = run_quantum(p, s, dm);
        CHECK(std::abs(a.final_p1 - b.final_p1) < 1e-12);
        for (std::size_t t = 0; t < a.steps.size(); ++t) {
            for (int q = 0; q < spec.n_qubits; ++q) {
                CHECK(std::abs(a.steps[t].bloch[q].z - b.steps[t].bloch[q].z) < 1e-12);
            }
            if (a.steps[t].entropy_q0) {
                CHECK(std::abs(*a.steps[t].entropy_q0 - *b.steps[t].entropy_q0) < 1e-9);
            }
        }
        RunOptions zero_noise = RunOptions::noisy({0.0, 0.0});
        CHECK(std::abs(predict_p1(p, s, zero_noise) - a.final_p1) < 1e-12);
    }
}

TEST_CASE("noise requires density-matrix evolution") {
    const ParamVector p = random_params(ModelSpec::two_qubit(Entangler::cnot), 1);
    RunOptions bad = RunOptions::noisy({0.05, 0.0});
    bad.backend = Backend::statevector;
    CHECK_THROWS_AS(run_quantum(p, make_sample(Context::A, 2), bad), InvalidArgument);
}

TEST_CASE("depolarizing noise pulls the readout toward one half") {
    const ParamVector p = random_params(ModelSpec::decoupled(), 21);
    const SequenceSample s = make_sample(Context::A, 6);
    const double clean = predict_p1(p, s);
    const double noisy = predict_p1(p, s, RunOptions::noisy({0.1, 0.0}));
    CHECK(std::abs(noisy - 0.5) < std::abs(clean - 0.5));
    // the Pauli-twirl form contracts the Bloch vector by 1 - 4p/3 per gate
    const double z_clean = 1 - 2 * clean;
    const double z_noisy = 1 - 2 * noisy;
    CHECK(z_noisy == doctest::Approx(z_clean * std::pow(1 - 4 * 0.1 / 3, 7)).epsilon(1e-9));
}

TEST_CASE("entangler-free models keep qubit 0 pure") {
    for (Entangler e : {Entangler::none, Entangler::swap}) {
        for (int n : {2, 3, 4}) {
            const ParamVector p = random_params(ModelSpec::n_qubit(n, e), static_cast<std::uint64_t>(n));
            for (Context c : {Context::A, Context::B}) {
                const TrajectoryRecord r = run_quantum(p, make_sample(c, 10));
                for (const TimestepProbe& step : r.steps) {
                    REQUIRE(step.entropy_q0.has_value());
                    CHECK(std::abs(*step.entropy_q0) < 1e-9);
                }
            }
        }
    }
    const ParamVector p = random_params(ModelSpec::two_qubit(Entangler::cnot), 2);
    double most = 0.0;
    for (const TimestepProbe& step : run_quantum(p, make_sample(Context::A, 10)).steps) {
        most = std::max(most, *step.entropy_q0);
        CHECK(*step.entropy_q0 <= 1.0 + 1e-12);
    }
    CHECK(most > 1e-3);
}

TEST_CASE("entangler mask removes gates at chosen timesteps") {
    const ParamVector p = random_params(ModelSpec::two_qubit(Entangler::cnot), 8);
    const SequenceSample s = make_sample(Context::B, 4);
    RunOptions all_on;
    all_on.entangler_mask = std::vector<bool>(5, true);
    CHECK(predict_p1(p, s, all_on) == doctest::Approx(predict_p1(p, s)).epsilon(1e-14));

    const ParamVector none(ModelSpec::two_qubit(Entangler::none), {p.values().begin(), p.values().end()});
    CHECK(predict_p1(p, s, RunOptions::without_entangler()) == doctest::Approx(predict_p1(none, s)).epsilon(1e-14));
}

TEST_CASE("stepping interface reproduces run_quantum") {
    const ParamVector p = random_params(ModelSpec::n_qubit(3, Entangler::cnot), 4);
    const SequenceSample s = make_sample(Context::A, 5);
    StateVector psi(3);
    DensityMatrix rho(3);
    for (std::size_t t = 0; t < s.tokens.size(); ++t) {
        apply_timestep(p, s.tokens[t], static_cast<int>(t), psi);
        apply_timestep(p, s.tokens[t], static_cast<int>(t), rho);
    }
    const double expected = run_quantum(p, s).final_p1;
    CHECK(readout_p1(psi) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(readout_p1(rho) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("shared family: distractor z-invariance needs theta2 = 0") {
    Rng rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        const double t1 = rng.uniform(-pi, pi);
        const double t3 = rng.uniform(-pi, pi);
        const ParamVector p(ModelSpec::minimal(), {t1, 0.0, t3});
        const TrajectoryRecord r = run_quantum(p, make_sample(Context::A, 30));
        for (const TimestepProbe& step : r.steps) {
            CHECK(std::abs(step.bloch[0].z - r.steps[0].bloch[0].z) < 1e-10);
        }
    }
    const ParamVector drift(ModelSpec::minimal(), {0.3, 0.5, -0.2});
    const TrajectoryRecord r = run_quantum(drift, make_sample(Context::A, 5));
    CHECK(std::abs(r.steps[1].bloch[0].z - r.steps[0].bloch[0].z) > 1e-6);
}

TEST_CASE("classical RNN") {
    const ParamVector zero = ParamVector::zeros(ModelSpec::classical_rnn4());
    for (int n : {0, 3, 20}) {
        const TrajectoryRecord r = run_classical_rnn4(zero, make_sample(Context::B, n));
        CHECK(r.final_p1 == doctest::Approx(0.5));
        CHECK(r.prediction == 0);
    }
    // hand-computed single step: h = tanh(w_x * x), P = logistic(w_r . h)
    std::vector<double> w(24, 0.0);
    w[16] = 1.0;
    w[20] = 2.0;
    const ParamVector p(ModelSpec::classical_rnn4(), w);
    const double x = -pi / 3;
    const double expected = 1.0 / (1.0 + std::exp(-2.0 * std::tanh(x)));
    CHECK(run_classical_rnn4(p, make_sample(Context::B, 0)).final_p1 == doctest::Approx(expected));
    // with recurrence W_h[0][0] = 1 the state after one distractor is tanh(tanh(x))
    w[0] = 1.0;
    const ParamVector q(ModelSpec::classical_rnn4(), w);
    const double h1 = std::tanh(std::tanh(x));
    CHECK(run_classical_rnn4(q, make_sample(Context::B, 1)).final_p1 ==
          doctest::Approx(1.0 / (1.0 + std::exp(-2.0 * h1))));
    CHECK_THROWS_AS(run_classical_rnn4(ParamVector::zeros(ModelSpec::decoupled()), make_sample(Context::A, 0)),
                    InvalidArgument);
}

TEST_CASE("readout decision rule") {
    CHECK(predict(0.5) == 0);
    CHECK(predict(0.5000001) == 1);
    CHECK(predict(0.4999999) == 0);
}

TEST_CASE("delta_z") {
    const ParamVector p = random_params(ModelSpec::decoupled(), 6);
    const TrajectoryRecord a = run_model(p, make_sample(Context::A, 4));
    const TrajectoryRecord b = run_model(p, make_sample(Context::B, 4));
    CHECK(delta_z(a, a) == 0.0);
    CHECK(delta_z(a, b) == doctest::Approx(std::abs(a.final_z() - b.final_z())));
    CHECK(delta_z(a, b) <= 2.0);
    CHECK_THROWS_AS(delta_z(a, run_model(p, make_sample(Context::B, 5))), InvalidArgument);
}

TEST_CASE("JSON round trip") {
    for (const ModelSpec& spec : all_specs()) {
        const ParamVector p = random_params(spec, 12);
        const ParamVector q = params_from_json(params_to_json(p));
        CHECK(q.spec() == spec);
        REQUIRE(q.size() == p.size());
        for (std::size_t i = 0; i < p.size(); ++i) CHECK(q[i] == p[i]);
    }
    CHECK_THROWS_AS(params_from_json("{not json"), InvalidArgument);
    CHECK_THROWS_AS(params_from_json(R"({"family":"DecoupledQLM","n_qubits":1,"entangler":"none",
        "param_count":6,"values":[1,2,3]})"),
                    InvalidArgument);
}

TEST_CASE("accuracy and loss over a dataset") {
    const ParamVector p = ParamVector::zeros(ModelSpec::decoupled());
    // zero params: A -> P(1) = 0.25 (correct), B -> Ry(-pi/3) also gives 0.25 (wrong)
    const Dataset d = build_train_set();
    CHECK(accuracy(p, d) == doctest::Approx(0.5));
    const double expected = 0.5 * (-std::log(0.75)) + 0.5 * (-std::log(0.25));
    CHECK(mean_loss(p, d) == doctest::Approx(expected));
}
