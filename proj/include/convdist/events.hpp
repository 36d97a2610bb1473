#pragma once

#include <cstdint>
#include <vector>

#include "convdist/measure.hpp"

namespace convdist {

// An event A over counting measures: an explicit finite list, or a
// count-threshold family on a region ({nu : nu(B) <= k} / {nu : nu(B) >= k}).
struct EventSet {
    enum class Kind { Explicit, CountUpper, CountLower };

    Kind kind = Kind::Explicit;
    std::vector<CountingMeasure> members;  // Explicit: non-empty, deduplicated
    Region region;
    std::uint64_t k = 0;

    static EventSet explicit_set(std::vector<CountingMeasure> members);
    static EventSet count_upper(Region b, std::uint64_t k);
    static EventSet count_lower(Region b, std::uint64_t k);
};

bool event_contains(const EventSet& a, const CountingMeasure& nu);

// The hat-space analogue: an explicit symmetric finite set of hat vectors,
// or a count-threshold family on the number of coordinates lying in a region
// (automatically symmetric). Count kinds exist so the iid experiments can use
// the same threshold events as the projected ones without enumerating E^n.
struct HatEventSet {
    enum class Kind { Explicit, CountUpper, CountLower };

    Kind kind = Kind::Explicit;
    std::vector<HatVector> vectors;  // Explicit: symmetric, canonical order
    Region region;
    std::uint64_t k = 0;

    static HatEventSet explicit_set(std::vector<HatVector> vectors);  // symmetrizes
    static HatEventSet count_upper(Region b, std::uint64_t k);
    static HatEventSet count_lower(Region b, std::uint64_t k);

    // the projected event pi(A-hat) as an EventSet (Explicit inputs only)
    EventSet project() const;
};

bool hat_event_contains(const HatEventSet& a, const HatVector& x);

}  // namespace convdist
