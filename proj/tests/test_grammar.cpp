#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <numbers>
#include <sstream>
#include <utility>

#include "qmem/error.hpp"
#include "qmem/grammar.hpp"

using namespace qmem;

TEST_CASE("token encodings scale with the multiplier") {
    CHECK(token_encoding(TokenKind::A) == doctest::Approx(std::numbers::pi / 3));
    CHECK(token_encoding(TokenKind::B) == doctest::Approx(-std::numbers::pi / 3));
    CHECK(token_encoding(TokenKind::D) == 0.0);
    CHECK(token_encoding(TokenKind::A, 3.0) == doctest::Approx(std::numbers::pi));
    CHECK(token_encoding(TokenKind::D, 2.0) == 0.0);
    CHECK_THROWS_AS(token_encoding(TokenKind::A, 0.0), InvalidArgument);
    CHECK_THROWS_AS(token_encoding(TokenKind::A, -1.0), InvalidArgument);
}

TEST_CASE("samples are a context token followed by distractors") {
    const SequenceSample s = make_sample(Context::B, 4);
    REQUIRE(s.tokens.size() == 5);
    CHECK(s.tokens[0].kind == TokenKind::B);
    CHECK(s.label == 1);
    for (std::size_t i = 1; i < s.tokens.size(); ++i) {
        CHECK(s.tokens[i].kind == TokenKind::D);
        CHECK(s.tokens[i].encoding == 0.0);
    }
    CHECK(make_sample(Context::A, 0).label == 0);
    CHECK_THROWS_AS(make_sample(Context::A, -1), InvalidArgument);
}

TEST_CASE("train set") {
    const Dataset d = build_train_set();
    REQUIRE(d.samples.size() == 16);
    CHECK(d.split == Split::train);
    CHECK(d.samples[0].context == Context::A);
    CHECK(d.samples[0].n_distractors == 0);
    CHECK(d.samples[0].label == 0);

    std::map<std::pair<int, int>, int> counts;
    for (const SequenceSample& s : d.samples) {
        CHECK(s.n_distractors >= 0);
        CHECK(s.n_distractors <= 3);
        ++counts[{static_cast<int>(s.context), s.n_distractors}];
    }
    CHECK(counts.size() == 8);
    for (const auto& [key, n] : counts) CHECK(n == 2);
    CHECK(counts.count({static_cast<int>(Context::B), 3}) == 1);
}

TEST_CASE("eval set") {
    const Dataset a = build_eval_set(7);
    const Dataset b = build_eval_set(7);
    REQUIRE(a.samples.size() == 200);
    int n_a = 0;
    bool saw_zero = false, saw_twenty = false;
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        const SequenceSample& s = a.samples[i];
        CHECK(s.n_distractors >= 0);
        CHECK(s.n_distractors <= 20);
        saw_zero |= s.n_distractors == 0;
        saw_twenty |= s.n_distractors == 20;
        n_a += s.context == Context::A;
        CHECK(s.n_distractors == b.samples[i].n_distractors);
        CHECK(s.context == b.samples[i].context);
    }
    CHECK(n_a == 100);
    CHECK(saw_zero);
    CHECK(saw_twenty);

    const Dataset c = build_eval_set(8);
    bool differs = false;
    for (std::size_t i = 0; i < c.samples.size(); ++i) {
        differs |= c.samples[i].n_distractors != a.samples[i].n_distractors;
    }
    CHECK(differs);
}

TEST_CASE("stress set is an exhaustive grid") {
    const Dataset d = build_stress_set(100);
    REQUIRE(d.samples.size() == 202);
    for (int n = 0; n <= 100; ++n) {
        CHECK(d.samples[static_cast<std::size_t>(2 * n)].context == Context::A);
        CHECK(d.samples[static_cast<std::size_t>(2 * n)].n_distractors == n);
        CHECK(d.samples[static_cast<std::size_t>(2 * n + 1)].context == Context::B);
    }
}

TEST_CASE("multiplier propagates into datasets") {
    const Dataset d = build_train_set(2.0);
    CHECK(d.samples[0].tokens[0].encoding == doctest::Approx(2.0 * std::numbers::pi / 3));
    const Dataset e = build_eval_set(kDefaultEvalSeed, 0.5);
    CHECK(std::abs(e.samples[1].tokens[0].encoding) == doctest::Approx(std::numbers::pi / 6));
}

TEST_CASE("binary cross-entropy") {
    CHECK(loss(0.5, 0) == doctest::Approx(std::log(2.0)));
    CHECK(loss(0.5, 1) == doctest::Approx(std::log(2.0)));
    CHECK(loss(1.0 - 1e-7, 1) == doctest::Approx(1e-7).epsilon(1e-3));
    CHECK(loss(0.1, 1) == doctest::Approx(2.302585093));
    CHECK(loss(0.1, 0) == doctest::Approx(-std::log(0.9)));
    // clamping keeps the extremes finite
    CHECK(std::isfinite(loss(0.0, 1)));
    CHECK(std::isfinite(loss(1.0, 0)));
    CHECK(loss(0.0, 1) == doctest::Approx(-std::log(1e-7)));
}

TEST_CASE("csv export") {
    std::ostringstream out;
    Dataset d{{make_sample(Context::A, 2), make_sample(Context::B, 0)}, Split::eval};
    write_csv(d, out);
    CHECK(out.str() == "context,n_distractors,label\nA,2,0\nB,0,1\n");
}
