#include "convdist/measure.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <numeric>

#include "convdist/errors.hpp"
#include "convdist/text.hpp"

namespace convdist {

namespace {

std::uint64_t bits_of(double x) { return std::bit_cast<std::uint64_t>(x); }

}  // namespace

GroundSpace GroundSpace::finite_alphabet(std::uint32_t size,
                                         std::vector<double> weights) {
    if (size < 1) throw config_error("alphabet size must be >= 1");
    GroundSpace g;
    g.kind = Kind::FiniteAlphabet;
    g.alphabet_size = size;
    if (weights.empty()) {
        g.weights.assign(size, 1.0 / size);
    } else {
        if (weights.size() != size)
            throw config_error("weight count does not match alphabet size");
        double sum = 0.0;
        for (double w : weights) {
            if (w < 0.0) throw config_error("negative symbol weight");
            sum += w;
        }
        if (std::abs(sum - 1.0) > 1e-12)
            throw config_error("symbol weights must sum to 1");
        g.weights = std::move(weights);
    }
    return g;
}

GroundSpace GroundSpace::unit_cube(std::uint32_t dim) {
    if (dim < 1) throw config_error("cube dimension must be >= 1");
    GroundSpace g;
    g.kind = Kind::UnitCube;
    g.dim = dim;
    return g;
}

GroundPoint GroundPoint::symbol(std::uint32_t index) {
    GroundPoint p;
    p.symbol_ = index;
    return p;
}

GroundPoint GroundPoint::cube(std::vector<double> coords) {
    if (coords.empty()) throw config_error("cube point needs >= 1 coordinate");
    for (double c : coords)
        if (!(c >= 0.0 && c <= 1.0))
            throw config_error("cube coordinate outside [0,1]");
    GroundPoint p;
    p.coords_ = std::move(coords);
    return p;
}

bool GroundPoint::operator==(const GroundPoint& o) const {
    if (coords_.size() != o.coords_.size()) return false;
    if (is_symbol()) return symbol_ == o.symbol_;
    for (std::size_t i = 0; i < coords_.size(); ++i)
        if (bits_of(coords_[i]) != bits_of(o.coords_[i])) return false;
    return true;
}

bool GroundPoint::operator<(const GroundPoint& o) const {
    if (coords_.size() != o.coords_.size())
        return coords_.size() < o.coords_.size();
    if (is_symbol()) return symbol_ < o.symbol_;
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        const auto a = bits_of(coords_[i]), b = bits_of(o.coords_[i]);
        if (a != b) return a < b;
    }
    return false;
}

std::string GroundPoint::to_string() const {
    if (is_symbol()) return symbol_name(symbol_);
    std::string out = "(";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (i) out += ",";
        out += format_g17(coords_[i]);
    }
    out += ")";
    return out;
}

GroundPoint GroundPoint::parse(const std::string& text) {
    const std::string t = trim(text);
    if (t.empty()) throw config_error("empty ground point");
    if (t.front() == '(') {
        if (t.back() != ')') throw config_error("unterminated cube point: " + t);
        std::vector<double> coords;
        for (const auto& part : split_top_level(t.substr(1, t.size() - 2), ',')) {
            const std::string p = trim(part);
            char* end = nullptr;
            double v = std::strtod(p.c_str(), &end);
            if (end != p.c_str() + p.size())
                throw config_error("bad coordinate: " + p);
            coords.push_back(v);
        }
        return cube(std::move(coords));
    }
    return symbol(convdist::symbol_index(t));
}

std::string symbol_name(std::uint32_t index) {
    // bijective base 26
    std::string name;
    std::uint64_t n = static_cast<std::uint64_t>(index) + 1;
    while (n > 0) {
        --n;
        name.push_back(static_cast<char>('a' + n % 26));
        n /= 26;
    }
    std::reverse(name.begin(), name.end());
    return name;
}

std::uint32_t symbol_index(const std::string& name) {
    if (name.empty()) throw config_error("empty symbol name");
    std::uint64_t n = 0;
    for (char c : name) {
        if (c < 'a' || c > 'z')
            throw config_error("bad symbol name: " + name);
        n = n * 26 + static_cast<std::uint64_t>(c - 'a' + 1);
    }
    return static_cast<std::uint32_t>(n - 1);
}

Region Region::alphabet_subset(std::vector<std::uint32_t> symbols) {
    std::sort(symbols.begin(), symbols.end());
    symbols.erase(std::unique(symbols.begin(), symbols.end()), symbols.end());
    Region r;
    r.kind = GroundSpace::Kind::FiniteAlphabet;
    r.symbols = std::move(symbols);
    return r;
}

Region Region::box(std::vector<double> lo, std::vector<double> hi) {
    if (lo.size() != hi.size() || lo.empty())
        throw config_error("box bounds dimension mismatch");
    for (std::size_t j = 0; j < lo.size(); ++j)
        if (!(lo[j] <= hi[j]))
            throw config_error("box has lo > hi");
    Region r;
    r.kind = GroundSpace::Kind::UnitCube;
    r.lo = std::move(lo);
    r.hi = std::move(hi);
    return r;
}

bool Region::contains(const GroundPoint& p) const {
    if (kind == GroundSpace::Kind::FiniteAlphabet) {
        if (!p.is_symbol())
            throw config_error("region/ground point kind mismatch");
        return std::binary_search(symbols.begin(), symbols.end(),
                                  p.symbol_index());
    }
    auto c = p.coords();
    if (c.size() != lo.size())
        throw config_error("region/ground point kind mismatch");
    for (std::size_t j = 0; j < lo.size(); ++j)
        if (c[j] < lo[j] || c[j] > hi[j]) return false;
    return true;
}

double Region::mu_mass(const GroundSpace& space) const {
    validate(space);
    if (kind == GroundSpace::Kind::FiniteAlphabet) {
        double m = 0.0;
        for (auto s : symbols) m += space.weights[s];
        return m;
    }
    double vol = 1.0;
    for (std::size_t j = 0; j < lo.size(); ++j) {
        const double a = std::max(lo[j], 0.0), b = std::min(hi[j], 1.0);
        vol *= std::max(b - a, 0.0);
    }
    return vol;
}

void Region::validate(const GroundSpace& space) const {
    if (kind != space.kind)
        throw config_error("region kind does not match ground space");
    if (kind == GroundSpace::Kind::FiniteAlphabet) {
        for (auto s : symbols)
            if (s >= space.alphabet_size)
                throw config_error("region symbol outside alphabet");
    } else if (lo.size() != space.dim) {
        throw config_error("region box dimension mismatch");
    }
}

bool Region::is_single_point() const {
    if (kind == GroundSpace::Kind::FiniteAlphabet) return symbols.size() == 1;
    for (std::size_t j = 0; j < lo.size(); ++j)
        if (lo[j] != hi[j]) return false;
    return true;
}

GroundPoint Region::single_point() const {
    if (kind == GroundSpace::Kind::FiniteAlphabet)
        return GroundPoint::symbol(symbols.front());
    return GroundPoint::cube(lo);
}

CountingMeasure::CountingMeasure(std::vector<Atom> atoms) {
    std::map<GroundPoint, std::uint64_t> merged;
    for (auto& [p, k] : atoms)
        if (k > 0) merged[p] += k;
    atoms_.assign(merged.begin(), merged.end());
    for (const auto& [p, k] : atoms_) total_mass_ += k;
}

std::uint64_t CountingMeasure::multiplicity(const GroundPoint& p) const {
    auto it = std::lower_bound(
        atoms_.begin(), atoms_.end(), p,
        [](const Atom& a, const GroundPoint& q) { return a.first < q; });
    if (it != atoms_.end() && it->first == p) return it->second;
    return 0;
}

bool CountingMeasure::operator<(const CountingMeasure& o) const {
    return atoms_ < o.atoms_;
}

std::string CountingMeasure::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        if (i) out += ",";
        out += atoms_[i].first.to_string();
        out += ":";
        out += std::to_string(atoms_[i].second);
    }
    return out;
}

CountingMeasure CountingMeasure::parse(const std::string& text) {
    const std::string t = trim(text);
    std::vector<Atom> atoms;
    if (t.empty() || t == "-") return CountingMeasure{};
    for (const auto& part : split_top_level(t, ',')) {
        const std::string entry = trim(part);
        const auto colon = entry.rfind(':');
        if (colon == std::string::npos)
            throw config_error("expected point:multiplicity, got: " + entry);
        const std::string mult = trim(entry.substr(colon + 1));
        char* end = nullptr;
        const unsigned long long k = std::strtoull(mult.c_str(), &end, 10);
        if (end != mult.c_str() + mult.size() || k == 0)
            throw config_error("bad multiplicity: " + mult);
        atoms.emplace_back(GroundPoint::parse(entry.substr(0, colon)), k);
    }
    return CountingMeasure(std::move(atoms));
}

CountingMeasure multiset_difference(const CountingMeasure& xi,
                                    const CountingMeasure& nu) {
    std::vector<CountingMeasure::Atom> out;
    for (const auto& [p, k] : xi.atoms()) {
        const std::uint64_t sub = nu.multiplicity(p);
        if (k > sub) out.emplace_back(p, k - sub);
    }
    return CountingMeasure(std::move(out));
}

bool pointwise_leq(const CountingMeasure& a, const CountingMeasure& b) {
    for (const auto& [p, k] : a.atoms())
        if (k > b.multiplicity(p)) return false;
    return true;
}

std::uint64_t count(const CountingMeasure& xi, const Region& b) {
    std::uint64_t total = 0;
    for (const auto& [p, k] : xi.atoms())
        if (b.contains(p)) total += k;
    return total;
}

HatVector HatVector::of(std::vector<GroundPoint> pts) {
    HatVector x;
    x.deleted.assign(pts.size(), false);
    x.points = std::move(pts);
    return x;
}

bool HatVector::operator==(const HatVector& o) const {
    if (deleted != o.deleted) return false;
    for (std::size_t i = 0; i < size(); ++i)
        if (!deleted[i] && !(points[i] == o.points[i])) return false;
    return true;
}

bool HatVector::operator<(const HatVector& o) const {
    if (size() != o.size()) return size() < o.size();
    for (std::size_t i = 0; i < size(); ++i) {
        // deletion sorts after any ground point
        if (deleted[i] != o.deleted[i]) return !deleted[i];
        if (!deleted[i]) {
            if (points[i] < o.points[i]) return true;
            if (o.points[i] < points[i]) return false;
        }
    }
    return false;
}

std::string HatVector::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < size(); ++i) {
        if (i) out += ",";
        out += deleted[i] ? "^" : points[i].to_string();
    }
    return out;
}

HatVector HatVector::parse(const std::string& text) {
    HatVector x;
    for (const auto& part : split_top_level(trim(text), ',')) {
        const std::string entry = trim(part);
        if (entry == "^") {
            x.points.emplace_back();
            x.deleted.push_back(true);
        } else {
            x.points.push_back(GroundPoint::parse(entry));
            x.deleted.push_back(false);
        }
    }
    if (x.size() == 0) throw config_error("hat vector needs n >= 1 entries");
    return x;
}

CountingMeasure project_hat(const HatVector& x) {
    std::vector<CountingMeasure::Atom> atoms;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!x.deleted[i]) atoms.emplace_back(x.points[i], 1);
    return CountingMeasure(std::move(atoms));
}

namespace {

// canonical sort of one hat vector's entries (points first, deletions last)
HatVector sort_entries(const HatVector& x) {
    std::vector<std::size_t> idx(x.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        if (x.deleted[a] != x.deleted[b]) return !x.deleted[a];
        if (x.deleted[a]) return false;
        return x.points[a] < x.points[b];
    });
    HatVector out;
    for (auto i : idx) {
        out.points.push_back(x.deleted[i] ? GroundPoint{} : x.points[i]);
        out.deleted.push_back(x.deleted[i]);
    }
    return out;
}

}  // namespace

std::vector<HatVector> symmetrize(const std::vector<HatVector>& vectors) {
    std::vector<HatVector> out;
    if (vectors.empty()) return out;
    const std::size_t n = vectors.front().size();
    for (const auto& v : vectors)
        if (v.size() != n)
            throw config_error("symmetrize: mixed vector lengths");

    // Orbit under coordinate permutations = all arrangements of the entry
    // multiset; enumerate with next_permutation over index order.
    for (const auto& v : vectors) {
        HatVector sorted = sort_entries(v);
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        auto less = [&](std::size_t a, std::size_t b) {
            if (sorted.deleted[a] != sorted.deleted[b]) return !sorted.deleted[a];
            if (sorted.deleted[a]) return false;
            return sorted.points[a] < sorted.points[b];
        };
        do {
            HatVector arrangement;
            for (auto i : order) {
                arrangement.points.push_back(sorted.deleted[i] ? GroundPoint{}
                                                               : sorted.points[i]);
                arrangement.deleted.push_back(sorted.deleted[i]);
            }
            out.push_back(std::move(arrangement));
        } while (std::next_permutation(order.begin(), order.end(), less));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

WeightFunction::WeightFunction(std::vector<GroundPoint> atoms,
                               std::vector<double> values) {
    if (atoms.size() != values.size())
        throw config_error("weight function atom/value length mismatch");
    std::vector<std::size_t> idx(atoms.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return atoms[a] < atoms[b]; });
    for (auto i : idx) {
        if (values[i] < 0.0)
            throw config_error("weight function values must be >= 0");
        atoms_.push_back(atoms[i]);
        values_.push_back(values[i]);
    }
}

double WeightFunction::value_at(const GroundPoint& p) const {
    auto it = std::lower_bound(atoms_.begin(), atoms_.end(), p);
    if (it != atoms_.end() && *it == p)
        return values_[static_cast<std::size_t>(it - atoms_.begin())];
    return 0.0;
}

double integrate(const WeightFunction& alpha, const CountingMeasure& xi) {
    double total = 0.0;
    for (const auto& [p, k] : xi.atoms())
        total += alpha.value_at(p) * static_cast<double>(k);
    return total;
}

double weighted_norm_sq(const WeightFunction& alpha, const CountingMeasure& xi) {
    double total = 0.0;
    for (const auto& [p, k] : xi.atoms()) {
        const double a = alpha.value_at(p);
        total += a * a * static_cast<double>(k);
    }
    return total;
}

}  // namespace convdist
