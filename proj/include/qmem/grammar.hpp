#pragma once

#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

namespace qmem {

enum class TokenKind { A, B, D };
enum class Context { A, B };
enum class Split { train, eval, stress };

/// Angle of a context token at multiplier 1 (A = +pi/3, B = -pi/3, D = 0).
inline constexpr double kContextAngle = 1.0471975511965976;

struct Token {
    TokenKind kind;
    double encoding;  // radians
};

struct SequenceSample {
    Context context;
    int n_distractors;
    std::vector<Token> tokens;  // context token, then n_distractors D tokens
    int label;                  // 0 for A, 1 for B
};

struct Dataset {
    std::vector<SequenceSample> samples;
    Split split;
};

inline constexpr int kTrainSize = 16;
inline constexpr int kTrainMaxDistractors = 3;
inline constexpr int kEvalSize = 200;
inline constexpr int kEvalMaxDistractors = 20;
inline constexpr std::uint64_t kDefaultEvalSeed = 1234;

double token_encoding(TokenKind kind, double multiplier = 1.0);
SequenceSample make_sample(Context context, int n_distractors, double multiplier = 1.0);

/// 16 sequences: every (context, n) with n in 0..3, twice; first is (A, 0).
Dataset build_train_set(double multiplier = 1.0);
/// 200 sequences alternating A/B with distractor counts uniform on 0..20.
Dataset build_eval_set(std::uint64_t seed = kDefaultEvalSeed, double multiplier = 1.0);
/// Exhaustive (A, n), (B, n) pairs for n = 0..max_distractors, A first.
Dataset build_stress_set(int max_distractors, double multiplier = 1.0);

/// Binary cross-entropy of P(label = 1) with the probability clamped to [1e-7, 1 - 1e-7].
double loss(double prob_of_1, int label);

std::string_view to_string(Context c);
std::string_view to_string(Split s);

/// CSV with header "context,n_distractors,label".
void write_csv(const Dataset& data, std::ostream& out);

}  // namespace qmem
