#include "doctest.h"

#include "convdist/errors.hpp"
#include "convdist/events.hpp"

using namespace convdist;

namespace {

CountingMeasure make(std::vector<std::pair<std::uint32_t, std::uint64_t>> atoms) {
    std::vector<CountingMeasure::Atom> out;
    for (auto [s, k] : atoms) out.emplace_back(GroundPoint::symbol(s), k);
    return CountingMeasure(std::move(out));
}

}  // namespace

TEST_CASE("event membership") {
    const Region b = Region::alphabet_subset({0, 1});
    const EventSet upper = EventSet::count_upper(b, 2);
    CHECK(event_contains(upper, make({{0, 1}, {1, 1}})));   // nu(B) = 2
    CHECK(!event_contains(upper, make({{0, 2}, {1, 1}})));  // nu(B) = 3
    CHECK(event_contains(upper, make({{2, 9}})));           // nu(B) = 0

    const EventSet lower = EventSet::count_lower(b, 2);
    CHECK(event_contains(lower, make({{0, 2}})));
    CHECK(!event_contains(lower, make({{0, 1}})));

    const CountingMeasure xi = make({{0, 2}, {1, 1}});
    const EventSet ex = EventSet::explicit_set({xi});
    CHECK(event_contains(ex, xi));
    CHECK(!event_contains(ex, make({{0, 2}})));
}

TEST_CASE("explicit event sets deduplicate and reject empties") {
    const CountingMeasure xi = make({{0, 1}});
    const EventSet ex = EventSet::explicit_set({xi, xi});
    CHECK(ex.members.size() == 1);
    CHECK_THROWS_AS(EventSet::explicit_set({}), config_error);
}

TEST_CASE("hat event membership") {
    const HatEventSet ex = HatEventSet::explicit_set({HatVector::parse("a,^")});
    CHECK(hat_event_contains(ex, HatVector::parse("^,a")));  // symmetrized
    CHECK(!hat_event_contains(ex, HatVector::parse("a,a")));

    const Region b = Region::alphabet_subset({0});
    const HatEventSet upper = HatEventSet::count_upper(b, 1);
    CHECK(hat_event_contains(upper, HatVector::parse("a,b,^")));
    CHECK(!hat_event_contains(upper, HatVector::parse("a,a,^")));

    const HatEventSet lower = HatEventSet::count_lower(b, 2);
    CHECK(hat_event_contains(lower, HatVector::parse("a,a,^")));
    CHECK(!hat_event_contains(lower, HatVector::parse("a,b,^")));
}

TEST_CASE("projection of explicit hat events") {
    const HatEventSet ex = HatEventSet::explicit_set(
        {HatVector::parse("a,^"), HatVector::parse("^,a")});
    const EventSet projected = ex.project();
    REQUIRE(projected.members.size() == 1);  // both project to the same measure
    CHECK(projected.members[0] == make({{0, 1}}));
    CHECK_THROWS_AS(HatEventSet::count_upper(Region::alphabet_subset({0}), 1)
                        .project(),
                    config_error);
}
