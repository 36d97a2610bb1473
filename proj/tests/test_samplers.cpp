#include "doctest.h"

#include <cmath>

#include "convdist/errors.hpp"
#include "convdist/rng.hpp"
#include "convdist/samplers.hpp"
#include "convdist/stats.hpp"

using namespace convdist;

namespace {

const GroundSpace kAlphabet = GroundSpace::finite_alphabet(10);
const Region kB = Region::alphabet_subset({0, 1, 2, 3});  // mu(B) = 0.4

}  // namespace

TEST_CASE("degenerate parameters") {
    Rng rng(1);
    const HatVector x = sample_hat(kAlphabet, 20, 0.0, rng);
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(x.deleted[i]);

    const HatVector y = sample_hat(kAlphabet, 20, 1.0, rng);
    for (std::size_t i = 0; i < y.size(); ++i) CHECK(!y.deleted[i]);

    CHECK(sample_binomial(kAlphabet, 50, 0.0, rng) == CountingMeasure{});
    CHECK(sample_binomial(kAlphabet, 0, 0.7, rng) == CountingMeasure{});
    CHECK(sample_poisson(kAlphabet, 0.0, rng) == CountingMeasure{});

    CHECK_THROWS_AS(sample_hat(kAlphabet, 5, 1.5, rng), config_error);
    CHECK_THROWS_AS(ProcessSpec::poisson(kAlphabet, -1.0), config_error);
}

TEST_CASE("hat deletion count stays within four sigmas") {
    Rng rng(20260809);
    const std::uint64_t n = 100000;
    const double t = 0.3;
    const HatVector x = sample_hat(kAlphabet, n, t, rng);
    std::uint64_t kept = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!x.deleted[i]) ++kept;
    const double mean = n * t;
    const double sigma = std::sqrt(n * t * (1 - t));
    CHECK(std::abs(static_cast<double>(kept) - mean) < 4.0 * sigma);
}

TEST_CASE("binomial counts follow the defining distribution") {
    const std::uint64_t trials = 30000;
    const std::uint64_t n = 50;
    const double t = 0.5;
    std::vector<std::uint64_t> hist(n + 1, 0);
    for (std::uint64_t j = 0; j < trials; ++j) {
        Rng rng(derive_seed(11, 0x51, j));
        ++hist[count(sample_binomial(kAlphabet, n, t, rng), kB)];
    }
    std::vector<double> pmf(n + 1);
    for (std::uint64_t c = 0; c <= n; ++c)
        pmf[c] = binomial_pmf(c, n, t * kB.mu_mass(kAlphabet));  // Bin(50, 0.2)
    CHECK(chi_square_gof_pvalue(hist, pmf, trials) > 0.001);
}

TEST_CASE("poisson count moments and tails") {
    const std::uint64_t trials = 20000;
    const double t = 8.0;
    const Region half = Region::alphabet_subset({0, 1, 2, 3, 4});  // mu = 0.5
    double sum = 0.0;
    std::vector<std::uint64_t> hist(64, 0);
    for (std::uint64_t j = 0; j < trials; ++j) {
        Rng rng(derive_seed(12, 0x52, j));
        const auto c = count(sample_poisson(kAlphabet, t, rng), half);
        sum += static_cast<double>(c);
        ++hist[std::min<std::uint64_t>(c, 63)];
    }
    const double mean = sum / trials;  // Poisson(4)
    const double sem = std::sqrt(4.0 / trials);
    CHECK(std::abs(mean - 4.0) < 3.0 * sem);

    std::vector<double> pmf(64);
    for (std::uint64_t c = 0; c < 64; ++c) pmf[c] = poisson_pmf(c, 4.0);
    CHECK(chi_square_gof_pvalue(hist, pmf, trials) > 0.001);
}

TEST_CASE("poisson sampling in the rejection regime") {
    const std::uint64_t trials = 20000;
    const double lambda = 50.0;  // above the inversion threshold
    std::vector<std::uint64_t> hist(140, 0);
    for (std::uint64_t j = 0; j < trials; ++j) {
        Rng rng(derive_seed(13, 0x53, j));
        ++hist[std::min<std::uint64_t>(poisson_variate(rng, lambda), 139)];
    }
    std::vector<double> pmf(140);
    for (std::uint64_t c = 0; c < 140; ++c) pmf[c] = poisson_pmf(c, lambda);
    CHECK(chi_square_gof_pvalue(hist, pmf, trials) > 0.001);
}

TEST_CASE("disjoint poisson counts are independent") {
    const std::uint64_t trials = 20000;
    const Region b2 = Region::alphabet_subset({4, 5, 6});
    std::vector<double> c1, c2;
    for (std::uint64_t j = 0; j < trials; ++j) {
        Rng rng(derive_seed(14, 0x54, j));
        const CountingMeasure m = sample_poisson(kAlphabet, 8.0, rng);
        c1.push_back(static_cast<double>(count(m, kB)));
        c2.push_back(static_cast<double>(count(m, b2)));
    }
    CHECK(std::abs(pearson_correlation(c1, c2)) < 0.025);
}

TEST_CASE("poisson superposition") {
    const std::uint64_t trials = 20000;
    std::vector<std::uint64_t> hist(64, 0);
    for (std::uint64_t j = 0; j < trials; ++j) {
        Rng rng(derive_seed(15, 0x55, j));
        const CountingMeasure a = sample_poisson(kAlphabet, 3.0, rng);
        const CountingMeasure b = sample_poisson(kAlphabet, 5.0, rng);
        std::vector<CountingMeasure::Atom> atoms;
        for (const auto& [p, k] : a.atoms()) atoms.emplace_back(p, k);
        for (const auto& [p, k] : b.atoms()) atoms.emplace_back(p, k);
        const CountingMeasure merged{std::move(atoms)};
        ++hist[std::min<std::uint64_t>(count(merged, kB), 63)];
    }
    std::vector<double> pmf(64);
    for (std::uint64_t c = 0; c < 64; ++c)
        pmf[c] = poisson_pmf(c, 8.0 * kB.mu_mass(kAlphabet));
    CHECK(chi_square_gof_pvalue(hist, pmf, trials) > 0.001);
}

TEST_CASE("projected hat samples equal binomial samples in distribution") {
    // the binomial sampler is the projection by construction; the two-sample
    // test still guards the pipeline end to end
    const std::uint64_t trials = 20000;
    const std::uint64_t n = 30;
    const double t = 0.5;
    std::vector<std::uint64_t> h1(n + 1, 0), h2(n + 1, 0);
    for (std::uint64_t j = 0; j < trials; ++j) {
        Rng r1(derive_seed(16, 0x56, j));
        ++h1[count(project_hat(sample_hat(kAlphabet, n, t, r1)), kB)];
        Rng r2(derive_seed(17, 0x57, j));
        ++h2[count(sample_binomial(kAlphabet, n, t, r2), kB)];
    }
    CHECK(chi_square_two_sample_pvalue(h1, h2) > 0.001);
}

TEST_CASE("matched seeds make projection and binomial sampling identical") {
    for (std::uint64_t j = 0; j < 50; ++j) {
        Rng r1(derive_seed(18, 0x58, j));
        Rng r2(derive_seed(18, 0x58, j));
        CHECK(project_hat(sample_hat(kAlphabet, 30, 0.5, r1)) ==
              sample_binomial(kAlphabet, 30, 0.5, r2));
    }
}

TEST_CASE("samplers are byte-deterministic") {
    Rng a(derive_seed(42, 1, 2)), b(derive_seed(42, 1, 2));
    CHECK(sample_poisson(GroundSpace::unit_cube(2), 6.5, a).to_string() ==
          sample_poisson(GroundSpace::unit_cube(2), 6.5, b).to_string());
    Rng c(derive_seed(42, 1, 3)), d(derive_seed(42, 1, 3));
    CHECK(sample_hat(kAlphabet, 40, 0.3, c).to_string() ==
          sample_hat(kAlphabet, 40, 0.3, d).to_string());
    // distinct trial indices give distinct streams
    Rng e(derive_seed(42, 1, 4));
    CHECK(sample_hat(kAlphabet, 40, 0.3, e).to_string() !=
          sample_hat(kAlphabet, 40, 0.3, d).to_string());
}
