#include "convdist/events.hpp"

#include <algorithm>

#include "convdist/errors.hpp"

namespace convdist {

EventSet EventSet::explicit_set(std::vector<CountingMeasure> members) {
    if (members.empty())
        throw config_error("explicit event set must be non-empty");
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    EventSet a;
    a.kind = Kind::Explicit;
    a.members = std::move(members);
    return a;
}

EventSet EventSet::count_upper(Region b, std::uint64_t k) {
    EventSet a;
    a.kind = Kind::CountUpper;
    a.region = std::move(b);
    a.k = k;
    return a;
}

EventSet EventSet::count_lower(Region b, std::uint64_t k) {
    EventSet a;
    a.kind = Kind::CountLower;
    a.region = std::move(b);
    a.k = k;
    return a;
}

bool event_contains(const EventSet& a, const CountingMeasure& nu) {
    switch (a.kind) {
        case EventSet::Kind::Explicit:
            return std::binary_search(a.members.begin(), a.members.end(), nu);
        case EventSet::Kind::CountUpper:
            return count(nu, a.region) <= a.k;
        case EventSet::Kind::CountLower:
            return count(nu, a.region) >= a.k;
    }
    return false;
}

HatEventSet HatEventSet::explicit_set(std::vector<HatVector> vectors) {
    if (vectors.empty())
        throw config_error("explicit hat event set must be non-empty");
    HatEventSet a;
    a.kind = Kind::Explicit;
    a.vectors = symmetrize(vectors);
    return a;
}

HatEventSet HatEventSet::count_upper(Region b, std::uint64_t k) {
    HatEventSet a;
    a.kind = Kind::CountUpper;
    a.region = std::move(b);
    a.k = k;
    return a;
}

HatEventSet HatEventSet::count_lower(Region b, std::uint64_t k) {
    HatEventSet a;
    a.kind = Kind::CountLower;
    a.region = std::move(b);
    a.k = k;
    return a;
}

EventSet HatEventSet::project() const {
    if (kind != Kind::Explicit)
        throw config_error("only explicit hat events project to explicit events");
    std::vector<CountingMeasure> members;
    members.reserve(vectors.size());
    for (const auto& y : vectors) members.push_back(project_hat(y));
    return EventSet::explicit_set(std::move(members));
}

bool hat_event_contains(const HatEventSet& a, const HatVector& x) {
    if (a.kind == HatEventSet::Kind::Explicit) {
        // members are symmetric and canonically ordered
        return std::binary_search(a.vectors.begin(), a.vectors.end(), x);
    }
    std::uint64_t in_region = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!x.deleted[i] && a.region.contains(x.points[i])) ++in_region;
    return a.kind == HatEventSet::Kind::CountUpper ? in_region <= a.k
                                                   : in_region >= a.k;
}

}  // namespace convdist
