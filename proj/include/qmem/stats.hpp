#pragma once

#include <span>
#include <utility>

namespace qmem {

struct Summary {
    double mean = 0.0;
    double std = 0.0;  // population (ddof = 0), as reported in result tables
    std::size_t n = 0;
};

Summary summarize(std::span<const double> xs);
double mean(std::span<const double> xs);
/// Unbiased (n - 1) variance.
double sample_variance(std::span<const double> xs);

struct TTestResult {
    double t_stat = 0.0;
    double df = 0.0;       // integral for the one-sample test, Satterthwaite for Welch
    double p_value = 1.0;  // two-sided
    double cohens_d = 0.0;
    std::pair<double, double> ci95;  // for the mean (one-sample) or mean difference (Welch)
    double estimate = 0.0;           // mean - mu0, or mean(a) - mean(b)
};

/// t = (mean - mu0) / (s / sqrt(n)), d = (mean - mu0) / s.
/// Throws InvalidArgument for n < 2 and DegenerateSample for zero variance.
TTestResult one_sample_ttest(std::span<const double> xs, double mu0 = 0.0);

/// Welch's unequal-variance test of mean(a) - mean(b); d uses the
/// root-mean-square of the two sample standard deviations.
TTestResult welch_ttest(std::span<const double> a, std::span<const double> b);

/// Regularized incomplete beta I_x(a, b) by Lentz's continued fraction.
double regularized_incomplete_beta(double a, double b, double x);
double student_t_cdf(double t, double df);
double student_t_quantile(double p, double df);

}  // namespace qmem
