#include "doctest.h"

#include <cmath>

#include "convdist/errors.hpp"
#include "convdist/oracle.hpp"
#include "convdist/rng.hpp"
#include "convdist/wolfe.hpp"

using namespace convdist;

TEST_CASE("two unit axis vectors") {
    const std::vector<std::vector<double>> v{{1.0, 0.0}, {0.0, 1.0}};
    const MinNormResult res = min_norm_point(v);
    CHECK(res.norm == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(res.coeffs[0] == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(res.coeffs[1] == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(res.certificate <= 1e-9 * (1.0 + res.norm * res.norm));

    // the grid oracle must agree with the solver
    const double oracle = sphere_grid_oracle(v, 10000);
    CHECK(std::abs(oracle - 0.7071) < 1e-4);
    CHECK(res.norm >= oracle - 1e-9);
}

TEST_CASE("single vertex") {
    const MinNormResult res = min_norm_point({{1.0, 1.0}});
    CHECK(res.norm == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(res.coeffs[0] == doctest::Approx(1.0));
}

TEST_CASE("zero vector short-circuits") {
    const MinNormResult res =
        min_norm_point({{2.0, 3.0}, {0.0, 0.0}, {1.0, 0.0}});
    CHECK(res.norm == 0.0);
    CHECK(res.coeffs[1] == doctest::Approx(1.0));
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(min_norm_point({}), config_error);
    CHECK_THROWS_AS(min_norm_point({{1.0}, {1.0, 2.0}}), config_error);
    CHECK_THROWS_AS(min_norm_point({{-0.5, 1.0}}), config_error);
}

TEST_CASE("solver against the certified oracle on random polytopes") {
    Rng rng(314159);
    for (int it = 0; it < 120; ++it) {
        const std::size_t dim = 2 + rng.bounded(3);  // 2..4
        const std::size_t m = 1 + rng.bounded(8);
        std::vector<std::vector<double>> vecs;
        for (std::size_t i = 0; i < m; ++i) {
            std::vector<double> v(dim);
            for (auto& c : v) c = rng.next_double() * 2.0;
            // sprinkle exact zeros to hit degenerate faces
            if (rng.bounded(3) == 0) v[rng.bounded(dim)] = 0.0;
            vecs.push_back(std::move(v));
        }
        const MinNormResult res = min_norm_point(vecs);
        CHECK(res.certificate <= 1e-9 * (1.0 + res.norm * res.norm));

        const SphereBounds bb = sphere_max_certified(vecs, 1e-3);
        REQUIRE(bb.certified);
        CHECK(res.norm >= bb.lower - 1e-9);
        CHECK(res.norm <= bb.upper + 1e-9);

        double csum = 0.0;
        std::vector<double> mu(dim, 0.0);
        for (std::size_t i = 0; i < m; ++i) {
            CHECK(res.coeffs[i] >= 0.0);
            csum += res.coeffs[i];
            for (std::size_t c = 0; c < dim; ++c)
                mu[c] += res.coeffs[i] * vecs[i][c];
        }
        CHECK(csum == doctest::Approx(1.0).epsilon(1e-10));
        double norm2 = 0.0;
        for (double c : mu) norm2 += c * c;
        CHECK(std::sqrt(norm2) == doctest::Approx(res.norm).epsilon(1e-9));
    }
}

TEST_CASE("deterministic output for a fixed input") {
    const std::vector<std::vector<double>> v{
        {1.0, 0.2, 0.0}, {0.3, 0.9, 0.1}, {0.0, 0.4, 1.1}, {0.5, 0.5, 0.5}};
    const MinNormResult a = min_norm_point(v);
    const MinNormResult b = min_norm_point(v);
    CHECK(a.norm == b.norm);
    CHECK(a.point == b.point);
    CHECK(a.coeffs == b.coeffs);
}
