#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace convdist {

// The ground space E together with the reference probability measure mu.
// Two concrete instantiations: a finite alphabet with per-symbol weights,
// and the unit cube [0,1]^d with the uniform measure.
struct GroundSpace {
    enum class Kind { FiniteAlphabet, UnitCube };

    Kind kind = Kind::FiniteAlphabet;
    std::uint32_t alphabet_size = 0;
    std::vector<double> weights;  // alphabet only; always normalized, sums to 1
    std::uint32_t dim = 0;        // cube only

    // weights empty -> uniform. Throws config_error on invalid input.
    static GroundSpace finite_alphabet(std::uint32_t size,
                                       std::vector<double> weights = {});
    static GroundSpace unit_cube(std::uint32_t dim);

    bool operator==(const GroundSpace&) const = default;
};

// A point of E: an alphabet symbol index or a cube coordinate tuple.
// Cube coordinates compare bitwise as stored; equality is exact.
class GroundPoint {
public:
    GroundPoint() = default;
    static GroundPoint symbol(std::uint32_t index);
    static GroundPoint cube(std::vector<double> coords);

    bool is_symbol() const { return coords_.empty(); }
    std::uint32_t symbol_index() const { return symbol_; }
    std::span<const double> coords() const { return coords_; }

    bool operator==(const GroundPoint& o) const;
    bool operator<(const GroundPoint& o) const;

    std::string to_string() const;
    static GroundPoint parse(const std::string& text);

private:
    std::uint32_t symbol_ = 0;
    std::vector<double> coords_;  // empty for symbols
};

// Spreadsheet-style symbol names: 0 -> "a", 25 -> "z", 26 -> "aa", ...
std::string symbol_name(std::uint32_t index);
std::uint32_t symbol_index(const std::string& name);

// A measurable test set B: an alphabet subset or an axis-aligned box.
struct Region {
    GroundSpace::Kind kind = GroundSpace::Kind::FiniteAlphabet;
    std::vector<std::uint32_t> symbols;  // sorted, deduplicated
    std::vector<double> lo, hi;          // box bounds, lo[j] <= hi[j]

    static Region alphabet_subset(std::vector<std::uint32_t> symbols);
    static Region box(std::vector<double> lo, std::vector<double> hi);

    bool contains(const GroundPoint& p) const;
    // mu(B) under the space's reference measure. Throws on kind mismatch.
    double mu_mass(const GroundSpace& space) const;
    void validate(const GroundSpace& space) const;

    // true iff the region is a single point carrying positive mass nowhere
    // else (used by the count-lower reduction to detect blocked additions)
    bool is_single_point() const;
    GroundPoint single_point() const;

    bool operator==(const Region&) const = default;
};

// A finite counting measure: multiset of ground points, stored as a sorted
// association list (point, multiplicity) so equality, ordering and hashing
// are canonical. Immutable after construction.
class CountingMeasure {
public:
    using Atom = std::pair<GroundPoint, std::uint64_t>;

    CountingMeasure() = default;
    // Merges duplicates, drops zero multiplicities, sorts.
    explicit CountingMeasure(std::vector<Atom> atoms);

    std::span<const Atom> atoms() const { return atoms_; }
    std::size_t distinct_atoms() const { return atoms_.size(); }
    std::uint64_t total_mass() const { return total_mass_; }
    bool empty() const { return atoms_.empty(); }

    std::uint64_t multiplicity(const GroundPoint& p) const;

    bool operator==(const CountingMeasure& o) const { return atoms_ == o.atoms_; }
    bool operator<(const CountingMeasure& o) const;

    // canonical text form: "a:2,b:1"; empty measure -> ""
    std::string to_string() const;
    static CountingMeasure parse(const std::string& text);

private:
    std::vector<Atom> atoms_;
    std::uint64_t total_mass_ = 0;
};

// xi \ nu, the atom-wise positive part (xi(x) - nu(x))_+.
CountingMeasure multiset_difference(const CountingMeasure& xi,
                                    const CountingMeasure& nu);

// true iff a(x) <= b(x) for every atom
bool pointwise_leq(const CountingMeasure& a, const CountingMeasure& b);

// xi(B)
std::uint64_t count(const CountingMeasure& xi, const Region& b);

// A vector over hat space entries: ground points or the artificial deletion
// symbol (stored out of band, never representable as a GroundPoint).
struct HatVector {
    // nullopt-style encoding: entry i deleted iff deleted[i]
    std::vector<GroundPoint> points;  // valid where !deleted[i]
    std::vector<bool> deleted;

    std::size_t size() const { return deleted.size(); }
    static HatVector of(std::vector<GroundPoint> pts);  // no deletions
    bool is_delta(std::size_t i) const { return deleted[i]; }

    bool operator==(const HatVector& o) const;
    bool operator<(const HatVector& o) const;

    std::string to_string() const;  // entries joined by ','; deletion as '^'
    static HatVector parse(const std::string& text);
};

// pi(x): delete all deletion entries, keep the rest as a counting measure.
CountingMeasure project_hat(const HatVector& x);

// Smallest permutation-invariant superset of the input (orbit closure under
// coordinate permutations), canonically ordered and deduplicated.
std::vector<HatVector> symmetrize(const std::vector<HatVector>& vectors);

// Nonnegative weight function alpha supported on the atoms of a reference
// measure (zero elsewhere).
class WeightFunction {
public:
    WeightFunction() = default;
    WeightFunction(std::vector<GroundPoint> atoms, std::vector<double> values);

    double value_at(const GroundPoint& p) const;  // 0 off-support
    std::span<const GroundPoint> support() const { return atoms_; }
    std::span<const double> values() const { return values_; }

private:
    std::vector<GroundPoint> atoms_;  // sorted
    std::vector<double> values_;
};

// integral of alpha against a counting measure: sum alpha(x) xi(x)
double integrate(const WeightFunction& alpha, const CountingMeasure& xi);

// squared 2-norm of alpha w.r.t. xi: sum alpha(x)^2 xi(x)
double weighted_norm_sq(const WeightFunction& alpha, const CountingMeasure& xi);

}  // namespace convdist
