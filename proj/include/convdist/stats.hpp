#pragma once

#include <cstdint>
#include <vector>

namespace convdist {

// Lanczos log-gamma (g=7, n=9). Kept local instead of std::lgamma so sampler
// accept/reject decisions do not depend on the host libm.
double log_gamma(double x);

// Regularized incomplete gamma P(a,x) and Q(a,x) = 1 - P(a,x).
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// Upper tail of the chi-square distribution with `dof` degrees of freedom.
double chi_square_pvalue(double stat, int dof);

// Standard normal quantile, Wichura's AS 241 (double precision).
double normal_quantile(double p);

struct Interval {
    double estimate = 0.0;
    double lo = 0.0;
    double hi = 1.0;
};

// Wilson score interval for a binomial proportion at the given two-sided
// confidence level.
Interval wilson_interval(std::uint64_t hits, std::uint64_t trials,
                         double confidence);

double poisson_pmf(std::uint64_t k, double lambda);
double binomial_pmf(std::uint64_t k, std::uint64_t n, double p);

// Chi-square goodness-of-fit p-value of observed counts against expected
// probabilities. Bins are pooled left-to-right until each pooled bin has
// expected count >= min_expected; dof = pooled bins - 1.
double chi_square_gof_pvalue(const std::vector<std::uint64_t>& observed,
                             const std::vector<double>& expected_prob,
                             std::uint64_t trials, double min_expected = 5.0);

// Two-sample chi-square homogeneity p-value for two count histograms over a
// common binning (same pooling rule on the combined expectation).
double chi_square_two_sample_pvalue(const std::vector<std::uint64_t>& a,
                                    const std::vector<std::uint64_t>& b,
                                    double min_expected = 5.0);

// Total variation distance between an empirical histogram and a reference
// pmf given on 0..len-1; reference mass beyond the histogram is added in.
double tv_distance(const std::vector<std::uint64_t>& counts,
                   std::uint64_t trials, const std::vector<double>& ref_pmf);

double pearson_correlation(const std::vector<double>& x,
                           const std::vector<double>& y);

}  // namespace convdist
