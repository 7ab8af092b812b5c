#include "qmem/stats.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "qmem/error.hpp"

namespace qmem {
namespace {

// Continued fraction for I_x(a, b), modified Lentz evaluation.
double beta_continued_fraction(double a, double b, double x) {
    constexpr int kMaxIter = 500;
    constexpr double kEps = 1e-15;
    constexpr double kTiny = 1e-300;
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) {
            return h;
        }
    }
    throw NumericalError("regularized_incomplete_beta: continued fraction did not converge");
}

// Two-sided tail P(|T| > |t|) = I_{df/(df+t^2)}(df/2, 1/2).
double two_sided_p(double t, double df) {
    if (!std::isfinite(t)) {
        return 0.0;
    }
    const double t2 = t * t;
    if (t2 < df) {
        // Near t = 0 the argument df / (df + t^2) rounds to 1; use the complement.
        return 1.0 - regularized_incomplete_beta(0.5, df / 2.0, t2 / (df + t2));
    }
    return regularized_incomplete_beta(df / 2.0, 0.5, df / (df + t2));
}

void require_size(std::span<const double> xs, const char* who) {
    if (xs.size() < 2) {
        throw InvalidArgument(std::string(who) + ": need at least 2 observations");
    }
}

}  // namespace

double mean(std::span<const double> xs) {
    if (xs.empty()) {
        return 0.0;
    }
    double acc = 0.0;
    for (double x : xs) acc += x;
    return acc / static_cast<double>(xs.size());
}

double sample_variance(std::span<const double> xs) {
    if (xs.size() < 2) {
        return 0.0;
    }
    const double m = mean(xs);
    double acc = 0.0;
    for (double x : xs) acc += (x - m) * (x - m);
    return acc / static_cast<double>(xs.size() - 1);
}

Summary summarize(std::span<const double> xs) {
    Summary s;
    s.n = xs.size();
    if (xs.empty()) {
        return s;
    }
    s.mean = mean(xs);
    double acc = 0.0;
    for (double x : xs) acc += (x - s.mean) * (x - s.mean);
    s.std = std::sqrt(acc / static_cast<double>(xs.size()));
    return s;
}

double regularized_incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0) || !(x >= 0.0 && x <= 1.0)) {
        throw InvalidArgument("regularized_incomplete_beta: need a, b > 0 and x in [0, 1]");
    }
    if (x == 0.0 || x == 1.0) {
        return x;
    }
    const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) +
                             b * std::log1p(-x);
    const double front = std::exp(log_front);
    // The fraction converges fast for x < (a + 1) / (a + b + 2); use symmetry otherwise.
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * beta_continued_fraction(a, b, x) / a;
    }
    return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_cdf(double t, double df) {
    if (!(df > 0.0)) {
        throw InvalidArgument("student_t_cdf: df must be positive");
    }
    const double tail = 0.5 * two_sided_p(t, df);
    return t > 0.0 ? 1.0 - tail : tail;
}

double student_t_quantile(double p, double df) {
    if (!(p > 0.0 && p < 1.0)) {
        throw InvalidArgument("student_t_quantile: p must lie in (0, 1)");
    }
    double lo = -1.0;
    double hi = 1.0;
    while (student_t_cdf(lo, df) > p) lo *= 2.0;
    while (student_t_cdf(hi, df) < p) hi *= 2.0;
    for (int i = 0; i < 200 && hi - lo > 1e-13 * std::max(1.0, std::abs(hi)); ++i) {
        const double mid = 0.5 * (lo + hi);
        if (student_t_cdf(mid, df) < p) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

TTestResult one_sample_ttest(std::span<const double> xs, double mu0) {
    require_size(xs, "one_sample_ttest");
    const double n = static_cast<double>(xs.size());
    const double var = sample_variance(xs);
    if (!(var > 0.0)) {
        throw DegenerateSample("one_sample_ttest: zero sample variance");
    }
    const double s = std::sqrt(var);
    const double se = s / std::sqrt(n);
    TTestResult r;
    r.estimate = mean(xs) - mu0;
    r.df = n - 1.0;
    r.t_stat = r.estimate / se;
    r.p_value = two_sided_p(r.t_stat, r.df);
    r.cohens_d = r.estimate / s;
    const double q = student_t_quantile(0.975, r.df);
    r.ci95 = {mu0 + r.estimate - q * se, mu0 + r.estimate + q * se};
    return r;
}

TTestResult welch_ttest(std::span<const double> a, std::span<const double> b) {
    require_size(a, "welch_ttest");
    require_size(b, "welch_ttest");
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    const double va = sample_variance(a);
    const double vb = sample_variance(b);
    if (!(va > 0.0) && !(vb > 0.0)) {
        throw DegenerateSample("welch_ttest: both samples have zero variance");
    }
    const double wa = va / na;
    const double wb = vb / nb;
    const double se = std::sqrt(wa + wb);
    TTestResult r;
    r.estimate = mean(a) - mean(b);
    r.t_stat = r.estimate / se;
    r.df = (wa + wb) * (wa + wb) / (wa * wa / (na - 1.0) + wb * wb / (nb - 1.0));
    r.p_value = two_sided_p(r.t_stat, r.df);
    r.cohens_d = r.estimate / std::sqrt((va + vb) / 2.0);
    const double q = student_t_quantile(0.975, r.df);
    r.ci95 = {r.estimate - q * se, r.estimate + q * se};
    return r;
}

}  // namespace qmem
