#pragma once

#include <cstdint>

#include "convdist/measure.hpp"
#include "convdist/rng.hpp"

namespace convdist {

// A point-process specification over a ground space: binomial (parameter n,
// retention probability t, intensity t*mu), Poisson (finite intensity t*mu),
// or the hat construction delivering the n iid points with deletions.
struct ProcessSpec {
    enum class Kind { Binomial, Poisson, Hat };

    GroundSpace ground;
    Kind kind = Kind::Binomial;
    std::uint64_t n = 0;
    double t = 0.0;

    static ProcessSpec binomial(GroundSpace ground, std::uint64_t n, double t);
    static ProcessSpec poisson(GroundSpace ground, double t);
    static ProcessSpec hat(GroundSpace ground, std::uint64_t n, double t);

    void validate() const;
};

// one mu-distributed ground point
GroundPoint sample_mu_point(const GroundSpace& ground, Rng& rng);

// n independent entries, each deleted with probability 1-t, otherwise a
// mu-distributed point
HatVector sample_hat(const GroundSpace& ground, std::uint64_t n, double t,
                     Rng& rng);

// The binomial point process, realized as the projection of a hat sample so
// that matched seeds give pi(sample_hat(...)) == sample_binomial(...) exactly.
CountingMeasure sample_binomial(const GroundSpace& ground, std::uint64_t n,
                                double t, Rng& rng);

// Poisson point process with intensity t*mu: total count then iid placement.
CountingMeasure sample_poisson(const GroundSpace& ground, double t, Rng& rng);

// dispatcher for counting-measure processes (Binomial or Poisson)
CountingMeasure sample_process(const ProcessSpec& spec, Rng& rng);

}  // namespace convdist
