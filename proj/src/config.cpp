#include "convdist/config.hpp"

#include <sstream>

#include "convdist/csv.hpp"
#include "convdist/errors.hpp"
#include "convdist/text.hpp"

namespace convdist {

namespace {

std::string join(const std::vector<std::string>& parts, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

std::string region_to_string(const Region& r) {
    if (r.kind == GroundSpace::Kind::FiniteAlphabet) {
        std::vector<std::string> names;
        for (auto s : r.symbols) names.push_back(symbol_name(s));
        return join(names, ",");
    }
    std::vector<std::string> axes;
    for (std::size_t j = 0; j < r.lo.size(); ++j)
        axes.push_back(format_g17(r.lo[j]) + ".." + format_g17(r.hi[j]));
    return join(axes, ",");
}

Region parse_region(const std::string& text, const GroundSpace& ground) {
    if (ground.kind == GroundSpace::Kind::FiniteAlphabet) {
        std::vector<std::uint32_t> symbols;
        for (const auto& part : split_top_level(trim(text), ','))
            symbols.push_back(symbol_index(trim(part)));
        Region r = Region::alphabet_subset(std::move(symbols));
        r.validate(ground);
        return r;
    }
    std::vector<double> lo, hi;
    for (const auto& part : split_top_level(trim(text), ',')) {
        const std::string axis = trim(part);
        const auto dots = axis.find("..");
        if (dots == std::string::npos)
            throw config_error("expected lo..hi, got: " + axis);
        lo.push_back(parse_double(axis.substr(0, dots)));
        hi.push_back(parse_double(axis.substr(dots + 2)));
    }
    Region r = Region::box(std::move(lo), std::move(hi));
    r.validate(ground);
    return r;
}

const char* process_kind_name(ProcessSpec::Kind k) {
    switch (k) {
        case ProcessSpec::Kind::Binomial: return "binomial";
        case ProcessSpec::Kind::Poisson: return "poisson";
        case ProcessSpec::Kind::Hat: return "hat";
    }
    return "?";
}

const char* event_kind_name(EventSet::Kind k) {
    switch (k) {
        case EventSet::Kind::Explicit: return "explicit";
        case EventSet::Kind::CountUpper: return "count_upper";
        case EventSet::Kind::CountLower: return "count_lower";
    }
    return "?";
}

const char* distance_kind_name(DistanceKind k) {
    switch (k) {
        case DistanceKind::Classical: return "classical";
        case DistanceKind::Binomial: return "binomial";
        case DistanceKind::PoissonPi: return "poisson_pi";
    }
    return "?";
}

}  // namespace

std::string ExperimentConfig::serialize() const {
    std::ostringstream os;
    os << "[ground]\n";
    if (ground.kind == GroundSpace::Kind::FiniteAlphabet) {
        os << "kind = alphabet\n";
        os << "size = " << ground.alphabet_size << "\n";
        std::vector<std::string> w;
        for (double v : ground.weights) w.push_back(format_g17(v));
        os << "weights = " << join(w, ",") << "\n";
    } else {
        os << "kind = cube\n";
        os << "dim = " << ground.dim << "\n";
    }

    if (has_process) {
        os << "\n[process]\n";
        os << "kind = " << process_kind_name(process_kind) << "\n";
        if (process_kind != ProcessSpec::Kind::Poisson)
            os << "n = " << n << "\n";
        os << "t = " << format_g17(t) << "\n";
    }

    if (has_event) {
        os << "\n[event]\n";
        os << "kind = " << event_kind_name(event_kind) << "\n";
        if (event_kind != EventSet::Kind::Explicit) {
            os << "region = " << region_to_string(region) << "\n";
            os << "k = " << k << "\n";
        }
        if (!members.empty()) {
            std::vector<std::string> ms;
            for (const auto& m : members)
                ms.push_back(m.empty() ? "-" : m.to_string());
            os << "members = " << join(ms, "; ") << "\n";
        }
        if (!vectors.empty()) {
            std::vector<std::string> vs;
            for (const auto& v : vectors) vs.push_back(v.to_string());
            os << "vectors = " << join(vs, "; ") << "\n";
        }
    }

    if (has_distance) {
        os << "\n[distance]\n";
        os << "kind = " << distance_kind_name(distance) << "\n";
    }

    if (xi || x) {
        os << "\n[input]\n";
        if (xi) os << "xi = " << (xi->empty() ? "-" : xi->to_string()) << "\n";
        if (x) os << "x = " << x->to_string() << "\n";
    }

    os << "\n[experiment]\n";
    if (!s_grid.empty()) {
        std::vector<std::string> ss;
        for (double s : s_grid) ss.push_back(format_g17(s));
        os << "s_grid = " << join(ss, ",") << "\n";
    }
    os << "trials = " << trials << "\n";
    os << "seed = " << seed << "\n";
    os << "confidence = " << format_g17(confidence) << "\n";
    if (!out.empty()) os << "out = " << out << "\n";

    if (!n_grid.empty()) {
        os << "\n[converge]\n";
        std::vector<std::string> ns;
        for (auto v : n_grid) ns.push_back(std::to_string(v));
        os << "n_grid = " << join(ns, ",") << "\n";
    }

    os << "\n[solver]\n";
    os << "tol = " << format_g17(tol) << "\n";
    os << "mass_cap = " << mass_cap << "\n";
    os << "rep_cap = " << rep_cap << "\n";
    os << "prune = " << (prune ? "true" : "false") << "\n";
    return os.str();
}

ExperimentConfig ExperimentConfig::parse(const std::string& text) {
    ExperimentConfig cfg;
    bool saw_ground = false;
    std::string section;

    // [ground] fields collected before construction
    std::string g_kind;
    std::uint64_t g_size = 0, g_dim = 0;
    std::vector<double> g_weights;
    bool g_uniform = false;

    std::string pending_region, pending_xi, pending_x;
    std::istringstream lines(text);
    std::string raw;
    while (std::getline(lines, raw)) {
        std::string line = trim(raw);
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = trim(line.substr(0, hash));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw config_error("bad section header: " + line);
            section = line.substr(1, line.size() - 2);
            if (section != "ground" && section != "process" &&
                section != "event" && section != "distance" &&
                section != "input" && section != "experiment" &&
                section != "converge" && section != "solver")
                throw config_error("unknown section: [" + section + "]");
            if (section == "ground") saw_ground = true;
            if (section == "process") cfg.has_process = true;
            if (section == "event") cfg.has_event = true;
            if (section == "distance") cfg.has_distance = true;
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("expected key = value, got: " + line);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (section.empty())
            throw config_error("key outside any section: " + key);

        if (section == "ground") {
            if (key == "kind") g_kind = value;
            else if (key == "size") g_size = parse_u64(value);
            else if (key == "dim") g_dim = parse_u64(value);
            else if (key == "weights") {
                if (value == "uniform") {
                    g_uniform = true;
                } else {
                    for (const auto& part : split_top_level(value, ','))
                        g_weights.push_back(parse_double(part));
                }
            } else
                throw config_error("unknown key in [ground]: " + key);
        } else if (section == "process") {
            if (key == "kind") {
                if (value == "binomial") cfg.process_kind = ProcessSpec::Kind::Binomial;
                else if (value == "poisson") cfg.process_kind = ProcessSpec::Kind::Poisson;
                else if (value == "hat") cfg.process_kind = ProcessSpec::Kind::Hat;
                else throw config_error("unknown process kind: " + value);
            } else if (key == "n") cfg.n = parse_u64(value);
            else if (key == "t") cfg.t = parse_double(value);
            else throw config_error("unknown key in [process]: " + key);
        } else if (section == "event") {
            if (key == "kind") {
                if (value == "explicit") cfg.event_kind = EventSet::Kind::Explicit;
                else if (value == "count_upper") cfg.event_kind = EventSet::Kind::CountUpper;
                else if (value == "count_lower") cfg.event_kind = EventSet::Kind::CountLower;
                else throw config_error("unknown event kind: " + value);
            } else if (key == "region") pending_region = value;
            else if (key == "k") cfg.k = parse_u64(value);
            else if (key == "members") {
                for (const auto& part : split_top_level(value, ';'))
                    cfg.members.push_back(CountingMeasure::parse(trim(part)));
            } else if (key == "vectors") {
                for (const auto& part : split_top_level(value, ';'))
                    cfg.vectors.push_back(HatVector::parse(trim(part)));
            } else
                throw config_error("unknown key in [event]: " + key);
        } else if (section == "distance") {
            if (key == "kind") {
                if (value == "classical") cfg.distance = DistanceKind::Classical;
                else if (value == "binomial") cfg.distance = DistanceKind::Binomial;
                else if (value == "poisson_pi") cfg.distance = DistanceKind::PoissonPi;
                else throw config_error("unknown distance kind: " + value);
            } else
                throw config_error("unknown key in [distance]: " + key);
        } else if (section == "input") {
            if (key == "xi") pending_xi = value.empty() ? "-" : value;
            else if (key == "x") pending_x = value;
            else throw config_error("unknown key in [input]: " + key);
        } else if (section == "experiment") {
            if (key == "s_grid") {
                cfg.s_grid.clear();
                for (const auto& part : split_top_level(value, ','))
                    cfg.s_grid.push_back(parse_double(part));
            } else if (key == "trials") cfg.trials = parse_u64(value);
            else if (key == "seed") cfg.seed = parse_u64(value);
            else if (key == "confidence") cfg.confidence = parse_double(value);
            else if (key == "out") cfg.out = value;
            else throw config_error("unknown key in [experiment]: " + key);
        } else if (section == "converge") {
            if (key == "n_grid") {
                cfg.n_grid.clear();
                for (const auto& part : split_top_level(value, ','))
                    cfg.n_grid.push_back(parse_u64(part));
            } else
                throw config_error("unknown key in [converge]: " + key);
        } else if (section == "solver") {
            if (key == "tol") cfg.tol = parse_double(value);
            else if (key == "mass_cap") cfg.mass_cap = parse_u64(value);
            else if (key == "rep_cap") cfg.rep_cap = parse_u64(value);
            else if (key == "prune") cfg.prune = parse_bool(value);
            else throw config_error("unknown key in [solver]: " + key);
        }
    }

    if (!saw_ground) throw config_error("missing [ground] section");
    if (g_kind == "alphabet") {
        if (g_size == 0) throw config_error("[ground] alphabet needs size >= 1");
        cfg.ground = GroundSpace::finite_alphabet(
            static_cast<std::uint32_t>(g_size),
            g_uniform ? std::vector<double>{} : g_weights);
    } else if (g_kind == "cube") {
        cfg.ground = GroundSpace::unit_cube(static_cast<std::uint32_t>(g_dim));
    } else {
        throw config_error("ground kind must be alphabet or cube");
    }

    if (!pending_region.empty())
        cfg.region = parse_region(pending_region, cfg.ground);
    if (!pending_xi.empty()) cfg.xi = CountingMeasure::parse(pending_xi);
    if (!pending_x.empty()) cfg.x = HatVector::parse(pending_x);
    return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
    return parse(read_file(path));
}

ProcessSpec ExperimentConfig::to_process() const {
    if (!has_process) throw config_error("config has no [process] section");
    switch (process_kind) {
        case ProcessSpec::Kind::Binomial:
            return ProcessSpec::binomial(ground, n, t);
        case ProcessSpec::Kind::Poisson:
            return ProcessSpec::poisson(ground, t);
        case ProcessSpec::Kind::Hat:
            return ProcessSpec::hat(ground, n, t);
    }
    throw config_error("bad process kind");
}

EventSet ExperimentConfig::to_event() const {
    if (!has_event) throw config_error("config has no [event] section");
    switch (event_kind) {
        case EventSet::Kind::Explicit:
            if (members.empty())
                throw config_error("explicit event needs members");
            return EventSet::explicit_set(members);
        case EventSet::Kind::CountUpper:
            region.validate(ground);
            return EventSet::count_upper(region, k);
        case EventSet::Kind::CountLower:
            region.validate(ground);
            return EventSet::count_lower(region, k);
    }
    throw config_error("bad event kind");
}

HatEventSet ExperimentConfig::to_hat_event() const {
    if (!has_event) throw config_error("config has no [event] section");
    switch (event_kind) {
        case EventSet::Kind::Explicit:
            if (vectors.empty())
                throw config_error("explicit hat event needs vectors");
            return HatEventSet::explicit_set(vectors);
        case EventSet::Kind::CountUpper:
            region.validate(ground);
            return HatEventSet::count_upper(region, k);
        case EventSet::Kind::CountLower:
            region.validate(ground);
            return HatEventSet::count_lower(region, k);
    }
    throw config_error("bad event kind");
}

ReductionOptions ExperimentConfig::to_reduction() const {
    ReductionOptions opts;
    opts.mass_cap = mass_cap;
    opts.rep_cap = static_cast<std::size_t>(rep_cap);
    opts.prune = prune;
    return opts;
}

LdiExperiment ExperimentConfig::to_ldi(bool parallel) const {
    if (!has_distance) throw config_error("config has no [distance] section");
    LdiExperiment exp;
    exp.process = to_process();
    exp.distance = distance;
    if (distance == DistanceKind::Classical)
        exp.hat_event = to_hat_event();
    else
        exp.event = to_event();
    exp.s_grid = s_grid;
    exp.trials = trials;
    exp.seed = seed;
    exp.confidence = confidence;
    exp.reduction = to_reduction();
    exp.parallel = parallel;
    exp.validate();
    return exp;
}

std::uint64_t fnv1a64(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace convdist
