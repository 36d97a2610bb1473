#include "convdist/rng.hpp"

#include <cmath>

#include "convdist/stats.hpp"

namespace convdist {

namespace {

// sequential CDF inversion; one uniform per draw
std::uint64_t poisson_inversion(Rng& rng, double lambda) {
    const double u = rng.next_double();
    double p = std::exp(-lambda);
    double cum = p;
    std::uint64_t k = 0;
    const std::uint64_t cap =
        static_cast<std::uint64_t>(lambda + 60.0 * std::sqrt(lambda) + 20.0);
    while (u > cum && k < cap) {
        ++k;
        p *= lambda / static_cast<double>(k);
        cum += p;
    }
    return k;
}

// Hormann's PTRS transformed rejection, valid for lambda >= 10; used above
// the inversion threshold
std::uint64_t poisson_ptrs(Rng& rng, double lambda) {
    const double log_lambda = std::log(lambda);
    const double b = 0.931 + 2.53 * std::sqrt(lambda);
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);

    for (;;) {
        const double u = rng.next_double() - 0.5;
        const double v = rng.next_double();
        const double us = 0.5 - std::abs(u);
        const double kf = std::floor((2.0 * a / us + b) * u + lambda + 0.43);
        if (kf < 0.0) continue;
        if (us >= 0.07 && v <= v_r) return static_cast<std::uint64_t>(kf);
        if (us < 0.013 && v > us) continue;
        const double k = kf;
        if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
            k * log_lambda - lambda - log_gamma(k + 1.0))
            return static_cast<std::uint64_t>(kf);
    }
}

}  // namespace

std::uint64_t poisson_variate(Rng& rng, double lambda) {
    if (lambda <= 0.0) return 0;
    if (lambda <= 30.0) return poisson_inversion(rng, lambda);
    return poisson_ptrs(rng, lambda);
}

}  // namespace convdist
