#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "qmem/error.hpp"
#include "qmem/stats.hpp"

using namespace qmem;

namespace {

// Sample with exactly the requested mean and sample standard deviation.
std::vector<double> fixture(int n, double mean, double sd, unsigned seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> z;
    std::vector<double> xs(static_cast<std::size_t>(n));
    for (double& x : xs) x = z(gen);
    double m = 0.0;
    for (double x : xs) m += x;
    m /= n;
    double ss = 0.0;
    for (double x : xs) ss += (x - m) * (x - m);
    const double s = std::sqrt(ss / (n - 1));
    for (double& x : xs) x = mean + sd * (x - m) / s;
    return xs;
}

// Simpson integration of the t density; independent of the incomplete-beta route.
double t_cdf_by_quadrature(double t, double df) {
    const double c = std::exp(std::lgamma((df + 1) / 2) - std::lgamma(df / 2)) / std::sqrt(df * std::numbers::pi);
    auto pdf = [&](double x) { return c * std::pow(1.0 + x * x / df, -(df + 1) / 2); };
    const int n = 20000;
    const double h = std::abs(t) / n;
    double acc = pdf(0.0) + pdf(std::abs(t));
    for (int i = 1; i < n; ++i) acc += (i % 2 ? 4.0 : 2.0) * pdf(i * h);
    const double half = acc * h / 3.0;
    return t >= 0 ? 0.5 + half : 0.5 - half;
}

}  // namespace

TEST_CASE("summary uses the population deviation") {
    const std::vector<double> xs{1, 2, 3, 4};
    const Summary s = summarize(xs);
    CHECK(s.mean == doctest::Approx(2.5));
    CHECK(s.std == doctest::Approx(std::sqrt(1.25)));
    CHECK(s.n == 4);
    CHECK(sample_variance(xs) == doctest::Approx(5.0 / 3.0));
    CHECK(summarize(std::vector<double>{}).n == 0);
}

TEST_CASE("incomplete beta special cases") {
    CHECK(regularized_incomplete_beta(1, 1, 0.3) == doctest::Approx(0.3));
    // I_x(a, 1) = x^a
    CHECK(regularized_incomplete_beta(2.5, 1, 0.4) == doctest::Approx(std::pow(0.4, 2.5)));
    // I_x(1, b) = 1 - (1 - x)^b
    CHECK(regularized_incomplete_beta(1, 3, 0.2) == doctest::Approx(1 - std::pow(0.8, 3)));
    CHECK(regularized_incomplete_beta(3, 4, 0.0) == 0.0);
    CHECK(regularized_incomplete_beta(3, 4, 1.0) == 1.0);
    // symmetry I_x(a, b) = 1 - I_{1-x}(b, a)
    CHECK(regularized_incomplete_beta(2.3, 5.1, 0.37) ==
          doctest::Approx(1 - regularized_incomplete_beta(5.1, 2.3, 0.63)));
    CHECK_THROWS_AS(regularized_incomplete_beta(0, 1, 0.5), InvalidArgument);
    CHECK_THROWS_AS(regularized_incomplete_beta(1, 1, 1.5), InvalidArgument);
}

TEST_CASE("t distribution against closed forms and quadrature") {
    // df = 1 is Cauchy, df = 2 has F(t) = 1/2 + t / (2 sqrt(2 + t^2)).
    for (double t : {-3.0, -0.5, 0.0, 0.7, 2.0, 10.0}) {
        CHECK(student_t_cdf(t, 1) == doctest::Approx(0.5 + std::atan(t) / std::numbers::pi));
        CHECK(student_t_cdf(t, 2) == doctest::Approx(0.5 + t / (2 * std::sqrt(2 + t * t))));
    }
    for (double df : {3.0, 5.0, 29.0, 60.0, 106.8}) {
        for (double t : {-2.5, -1.0, 0.3, 1.96, 4.0}) {
            CHECK(student_t_cdf(t, df) == doctest::Approx(t_cdf_by_quadrature(t, df)).epsilon(1e-9));
        }
    }
    CHECK(student_t_quantile(0.975, 29) == doctest::Approx(2.045229642).epsilon(1e-8));
    CHECK(student_t_quantile(0.975, 5) == doctest::Approx(2.570581836).epsilon(1e-8));
    CHECK(student_t_quantile(0.5, 12) == doctest::Approx(0.0).epsilon(1e-12));
    for (double p : {0.01, 0.2, 0.9, 0.999}) {
        CHECK(student_t_cdf(student_t_quantile(p, 7.5), 7.5) == doctest::Approx(p).epsilon(1e-10));
    }
}

TEST_CASE("t CDF matches a Monte Carlo t distribution at the 0.975 quantile") {
    std::mt19937_64 gen(20240601);
    for (double df : {5.0, 29.0, 60.0}) {
        std::student_t_distribution<double> dist(df);
        const double q = student_t_quantile(0.975, df);
        const int n = 1000000;
        int below = 0;
        for (int i = 0; i < n; ++i) below += dist(gen) <= q;
        const double empirical = static_cast<double>(below) / n;
        CHECK(std::abs(empirical - student_t_cdf(q, df)) < 1e-3);
    }
}

TEST_CASE("one-sample t-test on the ablation fixture") {
    const std::vector<double> xs = fixture(30, 18.4, 20.7, 3);
    const TTestResult r = one_sample_ttest(xs);
    const double t = 18.4 / (20.7 / std::sqrt(30.0));
    CHECK(r.t_stat == doctest::Approx(t));
    CHECK(r.t_stat == doctest::Approx(4.87).epsilon(0.05 / 4.87));
    CHECK(r.df == 29);
    CHECK(r.cohens_d == doctest::Approx(18.4 / 20.7));
    CHECK(r.cohens_d == doctest::Approx(0.89).epsilon(0.01));
    CHECK(r.p_value < 1e-4);
    CHECK(r.p_value == doctest::Approx(2 * (1 - t_cdf_by_quadrature(t, 29))).epsilon(1e-6));
    CHECK(r.ci95.first == doctest::Approx(10.67).epsilon(0.005));
    CHECK(r.ci95.second == doctest::Approx(26.13).epsilon(0.005));
    CHECK(r.ci95.first < r.ci95.second);
}

TEST_CASE("one-sample t-test edge cases") {
    const std::vector<double> jitter{-1e-3, 1e-3, -2e-3, 2e-3};
    const TTestResult r = one_sample_ttest(jitter);
    CHECK(std::abs(r.t_stat) < 1e-9);
    CHECK(r.p_value == doctest::Approx(1.0));

    CHECK_THROWS_AS(one_sample_ttest(std::vector<double>{2, 2, 2}), DegenerateSample);
    CHECK_THROWS_AS(one_sample_ttest(std::vector<double>{1}), InvalidArgument);

    const std::vector<double> shifted{5.1, 4.9, 5.3, 4.7};
    CHECK(std::abs(one_sample_ttest(shifted, 5.0).t_stat) < 1e-9);
}

TEST_CASE("negating the sample negates t and keeps p") {
    const std::vector<double> xs = fixture(12, 3.0, 4.0, 11);
    std::vector<double> neg(xs.size());
    std::transform(xs.begin(), xs.end(), neg.begin(), [](double x) { return -x; });
    const TTestResult a = one_sample_ttest(xs);
    const TTestResult b = one_sample_ttest(neg);
    CHECK(a.t_stat == doctest::Approx(-b.t_stat));
    CHECK(a.p_value == doctest::Approx(b.p_value));
    CHECK(a.cohens_d == doctest::Approx(-b.cohens_d));
}

TEST_CASE("Welch test") {
    const std::vector<double> a = fixture(60, 39, 7, 5);
    const std::vector<double> b = fixture(60, 41, 5, 6);
    const TTestResult r = welch_ttest(a, b);
    const double se = std::sqrt(49.0 / 60 + 25.0 / 60);
    CHECK(r.t_stat == doctest::Approx(-2.0 / se));
    CHECK(std::abs(r.t_stat) == doctest::Approx(1.8).epsilon(0.02));
    CHECK(r.p_value == doctest::Approx(0.07).epsilon(0.1));
    const double wa = 49.0 / 60, wb = 25.0 / 60;
    CHECK(r.df == doctest::Approx((wa + wb) * (wa + wb) / (wa * wa / 59 + wb * wb / 59)));
    CHECK(r.ci95.first < r.estimate);
    CHECK(r.estimate < r.ci95.second);

    const TTestResult same = welch_ttest(a, a);
    CHECK(same.t_stat == doctest::Approx(0.0));
    CHECK(same.p_value == doctest::Approx(1.0));

    std::vector<double> far = a;
    for (double& x : far) x += 1000;
    CHECK(welch_ttest(a, far).p_value < 1e-6);
    CHECK_THROWS_AS(welch_ttest(std::vector<double>{1, 1}, std::vector<double>{2, 2}), DegenerateSample);
    CHECK_THROWS_AS(welch_ttest(std::vector<double>{1}, a), InvalidArgument);
}
