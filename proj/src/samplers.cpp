#include "convdist/samplers.hpp"

#include <algorithm>
#include <cmath>

#include "convdist/errors.hpp"

namespace convdist {

ProcessSpec ProcessSpec::binomial(GroundSpace ground, std::uint64_t n,
                                  double t) {
    ProcessSpec s;
    s.ground = std::move(ground);
    s.kind = Kind::Binomial;
    s.n = n;
    s.t = t;
    s.validate();
    return s;
}

ProcessSpec ProcessSpec::poisson(GroundSpace ground, double t) {
    ProcessSpec s;
    s.ground = std::move(ground);
    s.kind = Kind::Poisson;
    s.t = t;
    s.validate();
    return s;
}

ProcessSpec ProcessSpec::hat(GroundSpace ground, std::uint64_t n, double t) {
    ProcessSpec s;
    s.ground = std::move(ground);
    s.kind = Kind::Hat;
    s.n = n;
    s.t = t;
    s.validate();
    return s;
}

void ProcessSpec::validate() const {
    if (kind == Kind::Poisson) {
        if (!(t >= 0.0) || !std::isfinite(t))
            throw config_error("poisson process needs finite t >= 0");
    } else {
        if (!(t >= 0.0 && t <= 1.0))
            throw config_error("retention probability t must lie in [0,1]");
    }
}

GroundPoint sample_mu_point(const GroundSpace& ground, Rng& rng) {
    if (ground.kind == GroundSpace::Kind::FiniteAlphabet) {
        // CDF inversion over the symbol weights
        const double u = rng.next_double();
        double cum = 0.0;
        for (std::uint32_t s = 0; s + 1 < ground.alphabet_size; ++s) {
            cum += ground.weights[s];
            if (u < cum) return GroundPoint::symbol(s);
        }
        return GroundPoint::symbol(ground.alphabet_size - 1);
    }
    std::vector<double> coords(ground.dim);
    for (auto& c : coords) c = rng.next_double();
    return GroundPoint::cube(std::move(coords));
}

HatVector sample_hat(const GroundSpace& ground, std::uint64_t n, double t,
                     Rng& rng) {
    if (!(t >= 0.0 && t <= 1.0))
        throw config_error("retention probability t must lie in [0,1]");
    HatVector x;
    x.points.reserve(n);
    x.deleted.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        if (rng.bernoulli(t)) {
            x.points.push_back(sample_mu_point(ground, rng));
            x.deleted.push_back(false);
        } else {
            x.points.emplace_back();
            x.deleted.push_back(true);
        }
    }
    return x;
}

CountingMeasure sample_binomial(const GroundSpace& ground, std::uint64_t n,
                                double t, Rng& rng) {
    return project_hat(sample_hat(ground, n, t, rng));
}

CountingMeasure sample_poisson(const GroundSpace& ground, double t, Rng& rng) {
    if (!(t >= 0.0) || !std::isfinite(t))
        throw config_error("poisson process needs finite t >= 0");
    const std::uint64_t n = poisson_variate(rng, t);
    std::vector<CountingMeasure::Atom> atoms;
    atoms.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i)
        atoms.emplace_back(sample_mu_point(ground, rng), 1);
    return CountingMeasure(std::move(atoms));
}

CountingMeasure sample_process(const ProcessSpec& spec, Rng& rng) {
    switch (spec.kind) {
        case ProcessSpec::Kind::Binomial:
            return sample_binomial(spec.ground, spec.n, spec.t, rng);
        case ProcessSpec::Kind::Poisson:
            return sample_poisson(spec.ground, spec.t, rng);
        case ProcessSpec::Kind::Hat:
            break;
    }
    throw config_error("hat process does not yield a counting measure");
}

}  // namespace convdist
