#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "convdist/distance.hpp"
#include "convdist/errors.hpp"
#include "convdist/oracle.hpp"
#include "convdist/rng.hpp"

using namespace convdist;

namespace {

CountingMeasure make(std::vector<std::pair<std::uint32_t, std::uint64_t>> atoms) {
    std::vector<CountingMeasure::Atom> out;
    for (auto [s, k] : atoms) out.emplace_back(GroundPoint::symbol(s), k);
    return CountingMeasure(std::move(out));
}

void check_against_certified_oracle(const DistanceResult& res) {
    if (res.vertices.empty() || res.vertices.front().size() > 5) return;
    const SphereBounds bb = sphere_max_certified(res.vertices, 1e-3);
    REQUIRE(bb.certified);
    CHECK(res.value >= bb.lower - 1e-9);
    CHECK(res.value <= bb.upper + 1e-9);
}

}  // namespace

TEST_CASE("classical distance examples") {
    // x in the event
    {
        const HatEventSet a =
            HatEventSet::explicit_set({HatVector::parse("a,b")});
        CHECK(d_T_classical(HatVector::parse("a,b"), a).value == 0.0);
    }
    // all four entries distinct: single incidence vector (1,1)
    {
        const HatEventSet a =
            HatEventSet::explicit_set({HatVector::parse("c,d")});
        CHECK(d_T_classical(HatVector::parse("a,b"), a).value ==
              doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    }
    // vectors {(1,0),(1,1)}: the minimum-norm point is (1,0)
    {
        const HatEventSet a =
            HatEventSet::explicit_set({HatVector::parse("c,b")});
        const DistanceResult res = d_T_classical(HatVector::parse("a,b"), a);
        CHECK(res.value == doctest::Approx(1.0).epsilon(1e-10));
        check_against_certified_oracle(res);
    }
}

TEST_CASE("classical distance invariances") {
    Rng rng(99);
    for (int it = 0; it < 60; ++it) {
        const std::size_t n = 2 + rng.bounded(3);
        std::vector<HatVector> seeds;
        for (std::size_t sI = 0; sI < 1 + rng.bounded(3); ++sI) {
            HatVector v;
            for (std::size_t i = 0; i < n; ++i) {
                if (rng.bounded(4) == 0) {
                    v.points.emplace_back();
                    v.deleted.push_back(true);
                } else {
                    v.points.push_back(GroundPoint::symbol(
                        static_cast<std::uint32_t>(rng.bounded(3))));
                    v.deleted.push_back(false);
                }
            }
            seeds.push_back(std::move(v));
        }
        const HatEventSet a = HatEventSet::explicit_set(seeds);

        HatVector x;
        for (std::size_t i = 0; i < n; ++i) {
            if (rng.bounded(4) == 0) {
                x.points.emplace_back();
                x.deleted.push_back(true);
            } else {
                x.points.push_back(GroundPoint::symbol(
                    static_cast<std::uint32_t>(rng.bounded(3))));
                x.deleted.push_back(false);
            }
        }
        const double base = d_T_classical(x, a).value;
        CHECK(base >= 0.0);
        CHECK(base <= std::sqrt(static_cast<double>(n)) + 1e-12);

        HatVector y = x;  // random permutation of coordinates
        for (std::size_t i = n; i > 1; --i) {
            const std::size_t j = rng.bounded(i);
            std::swap(y.points[i - 1], y.points[j]);
            const bool tmp = y.deleted[i - 1];
            y.deleted[i - 1] = y.deleted[j];
            y.deleted[j] = tmp;
        }
        CHECK(d_T_classical(y, a).value ==
              doctest::Approx(base).epsilon(1e-10));
    }
}

TEST_CASE("count-family hat events match their explicit enumeration") {
    // brute force: list every vector of E-hat^n in the event, then compare
    // the classical distance against the direct count-event reduction
    Rng rng(616);
    const std::uint32_t alphabet = 3;
    for (int it = 0; it < 30; ++it) {
        const std::size_t n = 2 + rng.bounded(3);  // 2..4
        const Region b = Region::alphabet_subset(
            rng.bounded(2) ? std::vector<std::uint32_t>{0}
                           : std::vector<std::uint32_t>{0, 1});
        const std::uint64_t k = rng.bounded(n + 1);
        const bool upper = rng.bounded(2) == 0;
        const HatEventSet count_event =
            upper ? HatEventSet::count_upper(b, k)
                  : HatEventSet::count_lower(b, k);

        std::vector<HatVector> members;
        std::vector<std::uint32_t> idx(n, 0);
        for (;;) {
            HatVector y;
            for (auto v : idx) {
                if (v == alphabet) {
                    y.points.emplace_back();
                    y.deleted.push_back(true);
                } else {
                    y.points.push_back(GroundPoint::symbol(v));
                    y.deleted.push_back(false);
                }
            }
            if (hat_event_contains(count_event, y)) members.push_back(y);
            std::size_t i = 0;
            while (i < n && idx[i] == alphabet) idx[i++] = 0;
            if (i == n) break;
            ++idx[i];
        }
        REQUIRE(!members.empty());
        const HatEventSet explicit_event = HatEventSet::explicit_set(members);
        for (int xs = 0; xs < 5; ++xs) {
            HatVector x;
            for (std::size_t i = 0; i < n; ++i) {
                const auto v = rng.bounded(alphabet + 1);
                if (v == alphabet) {
                    x.points.emplace_back();
                    x.deleted.push_back(true);
                } else {
                    x.points.push_back(
                        GroundPoint::symbol(static_cast<std::uint32_t>(v)));
                    x.deleted.push_back(false);
                }
            }
            const double via_count = d_T_classical(x, count_event).value;
            const double via_explicit = d_T_classical(x, explicit_event).value;
            CHECK(via_count == doctest::Approx(via_explicit).epsilon(1e-10));
        }
    }
}

TEST_CASE("projection distance examples") {
    // four unit atoms in B, {nu(B) <= 2}: the closed form gives 2/sqrt(4)
    {
        const CountingMeasure xi = make({{0, 1}, {1, 1}, {2, 1}, {3, 1}});
        const EventSet a =
            EventSet::count_upper(Region::alphabet_subset({0, 1, 2, 3}), 2);
        const DistanceResult res = d_T_pi(xi, a);
        CHECK(res.value == doctest::Approx(1.0).epsilon(1e-10));
        check_against_certified_oracle(res);

        ReductionOptions full;
        full.prune = false;
        CHECK(d_T_pi(xi, a, full).value ==
              doctest::Approx(1.0).epsilon(1e-10));
    }
    // A contains xi + delta_z, so the distance degenerates to zero
    {
        const CountingMeasure xi = make({{0, 2}});
        const EventSet a = EventSet::explicit_set({make({{0, 2}, {1, 1}})});
        CHECK(d_T_pi(xi, a).value == 0.0);
    }
    // empty xi: every difference vector is empty
    {
        const EventSet a = EventSet::explicit_set({make({{0, 1}})});
        CHECK(d_T_pi(CountingMeasure{}, a).value == 0.0);
    }
}

TEST_CASE("optimal weight functions are feasible witnesses") {
    const CountingMeasure xi = make({{0, 2}, {1, 1}, {2, 1}});
    const EventSet a = EventSet::count_lower(Region::alphabet_subset({3}), 2);
    for (std::uint64_t n : {6ull, 9ull, 30ull}) {
        const DistanceResult res = d_T_binomial(xi, a, n);
        const double norm2 = weighted_norm_sq(res.alpha_star, xi);
        CHECK(norm2 + res.extra_weight * res.extra_weight <=
              1.0 + 1e-10);
        CHECK(norm2 + res.extra_weight * res.extra_weight >= 1.0 - 1e-10);
        for (double w : res.alpha_star.values()) CHECK(w >= 0.0);
        // alpha* attains the value against the toughest representative
        double attained = 0.0;
        bool first = true;
        const double denom = std::sqrt(static_cast<double>(n - xi.total_mass()));
        for (const auto& rep : representative_reduction(xi, a)) {
            const std::uint64_t exc = rep.min_mass > xi.total_mass()
                                          ? rep.min_mass - xi.total_mass()
                                          : 0;
            const double val =
                integrate(res.alpha_star, rep.dropped) +
                res.extra_weight * static_cast<double>(exc) / denom;
            if (first || val < attained) {
                attained = val;
                first = false;
            }
        }
        CHECK(attained == doctest::Approx(res.value).epsilon(1e-8));
    }
}

TEST_CASE("degeneracy under event enlargement") {
    const CountingMeasure xi = make({{0, 1}, {1, 2}});
    EventSet a = EventSet::explicit_set({make({{0, 3}})});
    CHECK(d_T_pi(xi, a).value > 0.1);
    // enlarging A by any xi + nu0 collapses the pseudo-distance
    a = EventSet::explicit_set({make({{0, 3}}), make({{0, 1}, {1, 2}, {2, 4}})});
    CHECK(d_T_pi(xi, a).value == 0.0);
}

TEST_CASE("binomial distance examples") {
    // count-upper minimal completions never exceed xi(E), so the extra
    // coordinate vanishes for every n
    {
        const CountingMeasure xi = make({{0, 1}, {1, 1}, {2, 1}, {3, 1}});
        const EventSet a =
            EventSet::count_upper(Region::alphabet_subset({0, 1, 2, 3}), 2);
        for (std::uint64_t n : {5ull, 8ull, 100ull}) {
            const DistanceResult res = d_T_binomial(xi, a, n);
            CHECK(res.value == doctest::Approx(1.0).epsilon(1e-10));
        }
    }
    // xi(B) = 0, count-lower: completions cost mass; the no-drop
    // representative alone contributes k / sqrt(n - m)
    {
        const CountingMeasure xi = make({{4, 1}, {5, 1}, {6, 1}});  // m = 3
        const std::uint64_t k = 2, n = 12;
        const EventSet a =
            EventSet::count_lower(Region::alphabet_subset({0, 1}), k);
        const DistanceResult res = d_T_binomial(xi, a, n);
        const double no_drop =
            static_cast<double>(k) / std::sqrt(static_cast<double>(n - 3));
        CHECK(res.value <= no_drop + 1e-12);
        CHECK(res.value > 0.0);
        check_against_certified_oracle(res);
    }
    // xi(E) = n: the excess term is pinned to zero and both distances agree
    {
        const CountingMeasure xi = make({{0, 2}, {1, 1}});
        const EventSet a =
            EventSet::count_upper(Region::alphabet_subset({0}), 1);
        const double d_n = d_T_binomial(xi, a, xi.total_mass()).value;
        const double d_pi = d_T_pi(xi, a).value;
        CHECK(d_n == doctest::Approx(d_pi).epsilon(1e-12));
    }
}

TEST_CASE("binomial distance feasibility errors") {
    const CountingMeasure xi = make({{0, 1}});
    const EventSet lower =
        EventSet::count_lower(Region::alphabet_subset({1}), 4);
    // min_mass = xi(E) + 4 = 5 > n = 3
    CHECK_THROWS_AS(d_T_binomial(xi, lower, 3), config_error);
    // xi(E) > n
    CHECK_THROWS_AS(
        d_T_binomial(make({{0, 3}}),
                     EventSet::explicit_set({make({{0, 3}})}), 2),
        config_error);
}

TEST_CASE("projection compatibility worked instances") {
    {
        const HatEventSet a =
            HatEventSet::explicit_set({HatVector::parse("a,^")});
        const ProjectionCheck chk =
            check_projection_compatibility(HatVector::parse("a,^"), a);
        CHECK(chk.lhs == 0.0);
        CHECK(chk.rhs == 0.0);
    }
    {
        const HatEventSet a =
            HatEventSet::explicit_set({HatVector::parse("a,^")});
        const ProjectionCheck chk =
            check_projection_compatibility(HatVector::parse("a,b"), a);
        CHECK(chk.lhs == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(chk.rhs == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(chk.gap <= 1e-8);
    }
    {
        const HatEventSet a =
            HatEventSet::explicit_set({HatVector::parse("a,a")});
        const ProjectionCheck chk =
            check_projection_compatibility(HatVector::parse("^,^"), a);
        CHECK(chk.lhs == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
        CHECK(chk.rhs == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
        CHECK(chk.gap <= 1e-8);
    }
}

TEST_CASE("convergence gap bound") {
    const CountingMeasure xi = make({{0, 1}, {1, 1}});
    {  // all completions within xi(E)
        const EventSet a =
            EventSet::count_upper(Region::alphabet_subset({0, 1}), 1);
        CHECK(convergence_gap_bound(xi, a, 50) == 0.0);
    }
    {  // max completion mass xi(E) + 2, n = xi(E) + 100
        const EventSet a =
            EventSet::count_lower(Region::alphabet_subset({2}), 2);
        CHECK(convergence_gap_bound(xi, a, xi.total_mass() + 100) ==
              doctest::Approx(0.2).epsilon(1e-12));
        // sqrt scaling: quadrupling the slack roughly halves the bound
        const double b1 = convergence_gap_bound(xi, a, 102);
        const double b4 = convergence_gap_bound(xi, a, 408);
        CHECK(b1 / b4 == doctest::Approx(std::sqrt(406.0 / 100.0)).epsilon(1e-12));
        CHECK(std::abs(b1 / b4 - 2.0) < 0.05);
    }
    CHECK_THROWS_AS(
        convergence_gap_bound(
            xi, EventSet::count_upper(Region::alphabet_subset({0}), 1), 2),
        config_error);
}

TEST_CASE("dominance and sandwich on random instances") {
    Rng rng(31337);
    for (int it = 0; it < 80; ++it) {
        std::vector<CountingMeasure::Atom> atoms;
        std::uint64_t mass = 0;
        for (std::uint32_t s = 0; s < 3; ++s) {
            const std::uint64_t k = rng.bounded(3);
            if (k > 0) {
                atoms.emplace_back(GroundPoint::symbol(s), k);
                mass += k;
            }
        }
        const CountingMeasure xi{std::move(atoms)};
        std::vector<std::uint32_t> subset{
            static_cast<std::uint32_t>(rng.bounded(4))};
        const Region b = Region::alphabet_subset(subset);
        const EventSet a = rng.bounded(2)
                               ? EventSet::count_upper(b, rng.bounded(3))
                               : EventSet::count_lower(b, rng.bounded(3));
        const std::uint64_t n = mass + 1 + rng.bounded(20) + 4;

        const double d_pi = d_T_pi(xi, a).value;
        const double d_n = d_T_binomial(xi, a, n).value;
        const double bound = convergence_gap_bound(xi, a, n);
        CHECK(d_pi <= d_n + 1e-9);
        CHECK(d_n - d_pi <= bound + 1e-9);
    }
}
