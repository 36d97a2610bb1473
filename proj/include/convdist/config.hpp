#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "convdist/events.hpp"
#include "convdist/ldi.hpp"
#include "convdist/measure.hpp"
#include "convdist/samplers.hpp"

namespace convdist {

// Flat, typed key-value configuration with sections; the archived form of an
// experiment. Unknown sections or keys are rejected. serialize() emits the
// canonical form and parse(serialize(c)) == c.
struct ExperimentConfig {
    // [ground]
    GroundSpace ground;

    // [process]
    bool has_process = false;
    ProcessSpec::Kind process_kind = ProcessSpec::Kind::Binomial;
    std::uint64_t n = 0;
    double t = 0.0;

    // [event]
    bool has_event = false;
    EventSet::Kind event_kind = EventSet::Kind::CountUpper;
    Region region;
    std::uint64_t k = 0;
    std::vector<CountingMeasure> members;  // explicit measure events
    std::vector<HatVector> vectors;        // explicit hat events

    // [distance]
    bool has_distance = false;
    DistanceKind distance = DistanceKind::Binomial;

    // [input] (dist command)
    std::optional<CountingMeasure> xi;
    std::optional<HatVector> x;

    // [experiment]
    std::vector<double> s_grid;
    std::uint64_t trials = 10000;
    std::uint64_t seed = 1;
    double confidence = 0.99;
    std::string out;

    // [converge]
    std::vector<std::uint64_t> n_grid;

    // [solver]
    double tol = 1e-9;
    std::uint64_t mass_cap = 16;
    std::uint64_t rep_cap = std::uint64_t{1} << 20;
    bool prune = true;

    bool operator==(const ExperimentConfig&) const = default;

    std::string serialize() const;
    static ExperimentConfig parse(const std::string& text);
    static ExperimentConfig load(const std::string& path);

    // assembled pieces (validated; throw config_error when inconsistent)
    ProcessSpec to_process() const;
    EventSet to_event() const;
    HatEventSet to_hat_event() const;
    ReductionOptions to_reduction() const;
    LdiExperiment to_ldi(bool parallel) const;
};

std::uint64_t fnv1a64(const std::string& text);

}  // namespace convdist
