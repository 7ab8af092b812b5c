#include "qmem/grammar.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "qmem/error.hpp"
#include "qmem/rng.hpp"

namespace qmem {

double token_encoding(TokenKind kind, double multiplier) {
    if (!(multiplier > 0.0) || !std::isfinite(multiplier)) {
        throw InvalidArgument("encoding multiplier must be positive and finite");
    }
    switch (kind) {
        case TokenKind::A: return kContextAngle * multiplier;
        case TokenKind::B: return -kContextAngle * multiplier;
        case TokenKind::D: return 0.0;
    }
    return 0.0;
}

SequenceSample make_sample(Context context, int n_distractors, double multiplier) {
    if (n_distractors < 0) {
        throw InvalidArgument("n_distractors must be >= 0, got " + std::to_string(n_distractors));
    }
    const TokenKind head = context == Context::A ? TokenKind::A : TokenKind::B;
    SequenceSample s{context, n_distractors, {}, context == Context::A ? 0 : 1};
    s.tokens.reserve(static_cast<std::size_t>(n_distractors) + 1);
    s.tokens.push_back({head, token_encoding(head, multiplier)});
    for (int i = 0; i < n_distractors; ++i) {
        s.tokens.push_back({TokenKind::D, 0.0});
    }
    return s;
}

Dataset build_train_set(double multiplier) {
    Dataset d{{}, Split::train};
    for (int copy = 0; copy < 2; ++copy) {
        for (int n = 0; n <= kTrainMaxDistractors; ++n) {
            d.samples.push_back(make_sample(Context::A, n, multiplier));
            d.samples.push_back(make_sample(Context::B, n, multiplier));
        }
    }
    return d;
}

Dataset build_eval_set(std::uint64_t seed, double multiplier) {
    Rng rng(mix_seed(seed, 0xE7A1));
    Dataset d{{}, Split::eval};
    d.samples.reserve(kEvalSize);
    for (int i = 0; i < kEvalSize; ++i) {
        const Context c = i % 2 == 0 ? Context::A : Context::B;
        const int n = static_cast<int>(rng.uniform_int(0, kEvalMaxDistractors));
        d.samples.push_back(make_sample(c, n, multiplier));
    }
    return d;
}

Dataset build_stress_set(int max_distractors, double multiplier) {
    Dataset d{{}, Split::stress};
    for (int n = 0; n <= max_distractors; ++n) {
        d.samples.push_back(make_sample(Context::A, n, multiplier));
        d.samples.push_back(make_sample(Context::B, n, multiplier));
    }
    return d;
}

double loss(double prob_of_1, int label) {
    const double p = std::clamp(prob_of_1, 1e-7, 1.0 - 1e-7);
    return label == 1 ? -std::log(p) : -std::log1p(-p);
}

std::string_view to_string(Context c) { return c == Context::A ? "A" : "B"; }

std::string_view to_string(Split s) {
    switch (s) {
        case Split::train: return "train";
        case Split::eval: return "eval";
        case Split::stress: return "stress";
    }
    return "unknown";
}

void write_csv(const Dataset& data, std::ostream& out) {
    out << "context,n_distractors,label\n";
    for (const auto& s : data.samples) {
        out << to_string(s.context) << ',' << s.n_distractors << ',' << s.label << '\n';
    }
}

}  // namespace qmem
