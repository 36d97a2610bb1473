#include "convdist/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "convdist/errors.hpp"

namespace convdist {

namespace {

using RepMap = std::map<CountingMeasure, std::uint64_t>;

void keep_min(RepMap& reps, CountingMeasure d, std::uint64_t mass,
              std::size_t rep_cap) {
    auto [it, inserted] = reps.emplace(std::move(d), mass);
    if (!inserted)
        it->second = std::min(it->second, mass);
    else if (reps.size() > rep_cap)
        throw config_error("representative cap exceeded");
}

// odometer over all sub-multisets of the given atoms, calling fn(digits)
template <typename Fn>
void for_each_submultiset(std::span<const CountingMeasure::Atom> atoms, Fn&& fn) {
    std::vector<std::uint64_t> digits(atoms.size(), 0);
    for (;;) {
        fn(digits);
        std::size_t i = 0;
        while (i < digits.size() && digits[i] == atoms[i].second) {
            digits[i] = 0;
            ++i;
        }
        if (i == digits.size()) return;
        ++digits[i];
    }
}

CountingMeasure from_digits(std::span<const CountingMeasure::Atom> atoms,
                            const std::vector<std::uint64_t>& digits) {
    std::vector<CountingMeasure::Atom> out;
    for (std::size_t i = 0; i < atoms.size(); ++i)
        if (digits[i] > 0) out.emplace_back(atoms[i].first, digits[i]);
    return CountingMeasure(std::move(out));
}

// a point of B where nu may still carry extra mass given the drops D
bool addition_possible(const Region& b, const GroundSpace::Kind kind,
                       const CountingMeasure& d) {
    if (kind == GroundSpace::Kind::FiniteAlphabet) {
        for (auto s : b.symbols)
            if (d.multiplicity(GroundPoint::symbol(s)) == 0) return true;
        return false;
    }
    // a non-degenerate box always has points off the finite support of D
    if (!b.is_single_point()) return true;
    return d.multiplicity(b.single_point()) == 0;
}

std::uint64_t excess(std::uint64_t mass, std::uint64_t xi_mass) {
    return mass > xi_mass ? mass - xi_mass : 0;
}

std::vector<Representative> prune_dominated(std::vector<Representative> reps,
                                            std::uint64_t xi_mass) {
    // quadratic scan is fine at the sizes the callers keep; skip when huge
    if (reps.size() > 8192) return reps;
    std::vector<bool> dead(reps.size(), false);
    for (std::size_t i = 0; i < reps.size(); ++i) {
        if (dead[i]) continue;
        for (std::size_t j = 0; j < reps.size(); ++j) {
            if (i == j || dead[j] || dead[i]) continue;
            // i dominates j: smaller drop vector and no larger excess term
            if (pointwise_leq(reps[i].dropped, reps[j].dropped) &&
                excess(reps[i].min_mass, xi_mass) <=
                    excess(reps[j].min_mass, xi_mass) &&
                !(reps[i].dropped == reps[j].dropped))
                dead[j] = true;
        }
    }
    std::vector<Representative> kept;
    for (std::size_t i = 0; i < reps.size(); ++i)
        if (!dead[i]) kept.push_back(std::move(reps[i]));
    return kept;
}

}  // namespace

std::vector<Representative> representative_reduction(
    const CountingMeasure& xi, const EventSet& a, const ReductionOptions& opts) {
    const std::uint64_t xi_mass = xi.total_mass();
    RepMap reps;

    switch (a.kind) {
        case EventSet::Kind::Explicit: {
            if (a.members.empty())
                throw config_error("explicit event set is empty");
            for (const auto& nu : a.members)
                keep_min(reps, multiset_difference(xi, nu), nu.total_mass(),
                         opts.rep_cap);
            break;
        }
        case EventSet::Kind::CountUpper: {
            const std::uint64_t in_b = count(xi, a.region);
            const std::uint64_t need_drop = in_b > a.k ? in_b - a.k : 0;
            if (opts.prune) {
                // minimal representatives only: exactly need_drop points
                // removed inside B, nothing outside; every other achievable
                // drop dominates one of these (its excess term is also 0)
                std::vector<CountingMeasure::Atom> in_atoms;
                for (const auto& [p, k] : xi.atoms())
                    if (a.region.contains(p)) in_atoms.emplace_back(p, k);
                std::vector<std::uint64_t> digits(in_atoms.size(), 0);
                auto emit = [&](auto&& self, std::size_t i,
                                std::uint64_t remaining) -> void {
                    if (i == in_atoms.size()) {
                        if (remaining == 0) {
                            std::vector<CountingMeasure::Atom> atoms;
                            for (std::size_t j = 0; j < in_atoms.size(); ++j)
                                if (digits[j] > 0)
                                    atoms.emplace_back(in_atoms[j].first,
                                                       digits[j]);
                            keep_min(reps, CountingMeasure(std::move(atoms)),
                                     xi_mass - need_drop, opts.rep_cap);
                        }
                        return;
                    }
                    const std::uint64_t cap =
                        std::min(remaining, in_atoms[i].second);
                    for (std::uint64_t d = 0; d <= cap; ++d) {
                        digits[i] = d;
                        self(self, i + 1, remaining - d);
                    }
                    digits[i] = 0;
                };
                emit(emit, 0, need_drop);
            } else {
                if (xi_mass > opts.mass_cap)
                    throw config_error("enumeration cap exceeded");
                for_each_submultiset(
                    xi.atoms(), [&](const std::vector<std::uint64_t>& digits) {
                        CountingMeasure d = from_digits(xi.atoms(), digits);
                        if (count(d, a.region) < need_drop) return;
                        const std::uint64_t mass = xi_mass - d.total_mass();
                        keep_min(reps, std::move(d), mass, opts.rep_cap);
                    });
            }
            break;
        }
        case EventSet::Kind::CountLower: {
            if (xi_mass > opts.mass_cap)
                throw config_error("enumeration cap exceeded");
            const GroundSpace::Kind kind = a.region.kind;
            const std::uint64_t xi_in_b = count(xi, a.region);
            for_each_submultiset(
                xi.atoms(), [&](const std::vector<std::uint64_t>& digits) {
                    CountingMeasure d = from_digits(xi.atoms(), digits);
                    const std::uint64_t kept_in_b = xi_in_b - count(d, a.region);
                    const std::uint64_t need =
                        a.k > kept_in_b ? a.k - kept_in_b : 0;
                    if (need > 0 && !addition_possible(a.region, kind, d))
                        return;  // every point of B is pinned by a drop
                    const std::uint64_t mass =
                        xi_mass - d.total_mass() + need;
                    keep_min(reps, std::move(d), mass, opts.rep_cap);
                });
            break;
        }
    }

    std::vector<Representative> out;
    out.reserve(reps.size());
    for (auto& [d, m] : reps) out.push_back(Representative{d, m});
    if (opts.prune) out = prune_dominated(std::move(out), xi_mass);
    return out;
}

std::vector<double> difference_vector(const CountingMeasure& xi,
                                      const CountingMeasure& d) {
    if (!pointwise_leq(d, xi))
        throw config_error("difference_vector: D is not a sub-multiset of xi");
    std::vector<double> v;
    v.reserve(xi.distinct_atoms());
    for (const auto& [p, k] : xi.atoms())
        v.push_back(static_cast<double>(d.multiplicity(p)) /
                    std::sqrt(static_cast<double>(k)));
    return v;
}

}  // namespace convdist
