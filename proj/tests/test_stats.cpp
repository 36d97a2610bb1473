#include "doctest.h"

#include <cmath>

#include "convdist/errors.hpp"
#include "convdist/stats.hpp"

using namespace convdist;

TEST_CASE("log gamma agrees with the C library") {
    for (double x : {0.1, 0.5, 1.0, 1.5, 2.0, 3.7, 10.0, 30.5, 100.0, 500.0}) {
        const double ours = log_gamma(x);
        const double ref = std::lgamma(x);
        CHECK(std::abs(ours - ref) <=
              1e-12 * std::max(1.0, std::abs(ref)));
    }
}

TEST_CASE("chi-square tail values") {
    // two degrees of freedom: Q = exp(-x/2)
    for (double x : {0.5, 1.0, 3.0, 10.0})
        CHECK(chi_square_pvalue(x, 2) ==
              doctest::Approx(std::exp(-x / 2.0)).epsilon(1e-12));
    // classical critical point
    CHECK(chi_square_pvalue(3.841458820694124, 1) ==
          doctest::Approx(0.05).epsilon(1e-9));
    CHECK(gamma_p(2.0, 1.0) + gamma_q(2.0, 1.0) ==
          doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("normal quantile reference points") {
    CHECK(normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(normal_quantile(0.975) ==
          doctest::Approx(1.959963984540054).epsilon(1e-12));
    CHECK(normal_quantile(0.995) ==
          doctest::Approx(2.5758293035489004).epsilon(1e-12));
    CHECK(normal_quantile(0.025) ==
          doctest::Approx(-1.959963984540054).epsilon(1e-12));
    CHECK_THROWS_AS(normal_quantile(0.0), config_error);
}

TEST_CASE("wilson interval") {
    {  // textbook value: 50/100 at 95%
        const Interval w = wilson_interval(50, 100, 0.95);
        CHECK(w.estimate == doctest::Approx(0.5));
        CHECK(w.lo == doctest::Approx(0.40383).epsilon(1e-4));
        CHECK(w.hi == doctest::Approx(0.59617).epsilon(1e-4));
    }
    {
        const Interval w = wilson_interval(0, 50, 0.99);
        CHECK(w.estimate == 0.0);
        CHECK(w.lo == 0.0);
        CHECK(w.hi > 0.0);
    }
    {
        const Interval w = wilson_interval(50, 50, 0.99);
        CHECK(w.hi == 1.0);
        CHECK(w.lo < 1.0);
    }
}

TEST_CASE("pmfs normalize") {
    double sum = 0.0;
    for (std::uint64_t k = 0; k < 200; ++k) sum += poisson_pmf(k, 8.0);
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(poisson_pmf(0, 8.0) == doctest::Approx(std::exp(-8.0)).epsilon(1e-12));

    sum = 0.0;
    for (std::uint64_t k = 0; k <= 30; ++k) sum += binomial_pmf(k, 30, 0.2);
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(binomial_pmf(0, 5, 0.0) == 1.0);
    CHECK(binomial_pmf(5, 5, 1.0) == 1.0);
    CHECK(binomial_pmf(6, 5, 0.5) == 0.0);
}

TEST_CASE("goodness of fit p-values") {
    // exact proportions give statistic 0
    const std::vector<std::uint64_t> obs{250, 250, 250, 250};
    const std::vector<double> probs{0.25, 0.25, 0.25, 0.25};
    CHECK(chi_square_gof_pvalue(obs, probs, 1000) == doctest::Approx(1.0));

    const std::vector<std::uint64_t> biased{400, 100, 250, 250};
    CHECK(chi_square_gof_pvalue(biased, probs, 1000) < 1e-6);

    const std::vector<std::uint64_t> other{260, 240, 255, 245};
    CHECK(chi_square_two_sample_pvalue(obs, other) > 0.5);
    const std::vector<std::uint64_t> far{100, 400, 250, 250};
    CHECK(chi_square_two_sample_pvalue(obs, far) < 1e-6);
}

TEST_CASE("total variation and correlation") {
    const std::vector<std::uint64_t> counts{500, 500};
    const std::vector<double> same{0.5, 0.5};
    CHECK(tv_distance(counts, 1000, same) == doctest::Approx(0.0));
    const std::vector<double> disjoint{0.0, 0.0, 1.0};
    CHECK(tv_distance(counts, 1000, disjoint) == doctest::Approx(1.0));

    const std::vector<double> xs{1, 2, 3, 4, 5};
    const std::vector<double> ys{2, 4, 6, 8, 10};
    CHECK(pearson_correlation(xs, ys) == doctest::Approx(1.0));
    const std::vector<double> flat{3, 3, 3, 3, 3};
    CHECK(pearson_correlation(xs, flat) == 0.0);
}
