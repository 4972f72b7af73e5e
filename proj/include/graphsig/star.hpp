#pragma once

#include "graphsig/solver.hpp"

namespace graphsig {

class resource_limit_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

} // namespace detail

/// A node label together with a centre state and one ray state per direction
/// of the label, rays aligned with the signature's direction order.
struct Star {
    std::string label;
    std::string centre;
    std::vector<std::string> rays;

    bool operator==(const Star& other) const {
        return label == other.label && centre == other.centre && rays == other.rays;
    }
    bool operator<(const Star& other) const {
        return std::tie(label, centre, rays) < std::tie(other.label, other.centre, other.rays);
    }
};

struct StarAutomaton {
    std::vector<std::string> states;
    std::vector<Star> stars;
};

inline ValidationReport validate_star_automaton(const Signature& sig, const StarAutomaton& automaton) {
    ValidationReport report;
    std::set<std::string> state_set;
    for (const auto& q : automaton.states)
        if (!state_set.insert(q).second)
            report.fail("duplicate state: " + q);
    std::set<Star> seen;
    for (const auto& star : automaton.stars) {
        std::string name = star.label + "|" + star.centre + "|" + detail::join(star.rays, ",");
        if (!sig.has_label(star.label))
            report.fail("star uses unknown label: " + name);
        else if (star.rays.size() != sig.dirs(star.label).size())
            report.fail("star has wrong ray count for label " + star.label + ": " + name);
        if (!state_set.count(star.centre))
            report.fail("star centre is not a state: " + name);
        for (const auto& q : star.rays)
            if (!state_set.count(q))
                report.fail("star ray is not a state: " + name);
        if (!seen.insert(star).second)
            report.fail("duplicate star: " + name);
    }
    return report;
}

/// Choice of one state per node; accepted when every induced star is in T.
struct TilingAssignment {
    std::map<std::string, std::string> state_of;
};

namespace detail {

inline Star induced_star(const Signature& sig, const Graph& g, const TilingAssignment& t,
                         const std::string& v) {
    Star star;
    star.label = g.label_of(v);
    star.centre = t.state_of.at(v);
    for (const auto& d : sig.dirs(star.label)) {
        const auto u = g.neighbour(v, d);
        if (!u)
            throw precondition_error("induced_star: node " + v + " misses direction " + d);
        star.rays.push_back(t.state_of.at(*u));
    }
    return star;
}

} // namespace detail

inline bool check_tiling(const Signature& sig, const StarAutomaton& automaton, const Graph& g,
                         const TilingAssignment& t) {
    for (const auto& v : g.nodes)
        if (!t.state_of.count(v))
            throw precondition_error("check_tiling: assignment misses node " + v);
    std::set<Star> stars(automaton.stars.begin(), automaton.stars.end());
    for (const auto& v : g.nodes)
        if (!stars.count(detail::induced_star(sig, g, t, v)))
            return false;
    return true;
}

/// Backtracking search for a tiling: nodes in identifier order, states in
/// declaration order, first solution returned. A candidate is pruned as soon
/// as no star matches the states fixed so far around some touched node.
inline std::optional<TilingAssignment> find_tiling(const Signature& sig, const StarAutomaton& automaton,
                                                   const Graph& g) {
    std::vector<std::string> order = g.nodes;
    std::sort(order.begin(), order.end());

    TilingAssignment partial;
    auto consistent = [&](const std::string& v) {
        const auto& a = g.label_of(v);
        const auto& dirs = sig.dirs(a);
        auto centre = partial.state_of.find(v);
        for (const auto& star : automaton.stars) {
            if (star.label != a) continue;
            if (centre != partial.state_of.end() && star.centre != centre->second) continue;
            bool match = true;
            for (std::size_t i = 0; i < dirs.size(); ++i) {
                const auto u = g.neighbour(v, dirs[i]);
                auto ray = partial.state_of.find(*u);
                if (ray != partial.state_of.end() && star.rays[i] != ray->second) {
                    match = false;
                    break;
                }
            }
            if (match) return true;
        }
        return false;
    };

    std::function<bool(std::size_t)> assign = [&](std::size_t i) -> bool {
        if (i == order.size()) return true;
        const auto& v = order[i];
        for (const auto& q : automaton.states) {
            partial.state_of[v] = q;
            bool viable = consistent(v);
            if (viable) {
                for (const auto& d : sig.dirs(g.label_of(v))) {
                    const auto u = g.neighbour(v, d);
                    if (partial.state_of.count(*u) && !consistent(*u)) {
                        viable = false;
                        break;
                    }
                }
            }
            if (viable && assign(i + 1)) return true;
            partial.state_of.erase(v);
        }
        return false;
    };

    if (assign(0)) return partial;
    return std::nullopt;
}

/// Signature whose graphs are exactly the encodings of (graph, tiling)
/// pairs: labels are stars and each direction carries the states at the two
/// ends of the edge.
struct StarReduction {
    Signature reduced;
    std::map<std::string, Star> star_of_label;
    std::map<std::string, std::tuple<std::string, std::string, std::string>> direction_parts;
};

namespace detail {

inline std::string star_label_name(const Star& star) {
    return star.label + "|" + star.centre + "|" + join(star.rays, ",");
}

inline std::string annotated_dir_name(const std::string& d, const std::string& q1, const std::string& q2) {
    return d + "|" + q1 + "|" + q2;
}

} // namespace detail

inline StarReduction reduce_star_to_signature(const Signature& sig, const StarAutomaton& automaton) {
    StarReduction out;
    auto state_index = [&](const std::string& q) {
        return std::find(automaton.states.begin(), automaton.states.end(), q) - automaton.states.begin();
    };
    auto dir_index = [&](const std::string& d) {
        return std::find(sig.directions.begin(), sig.directions.end(), d) - sig.directions.begin();
    };

    // Only directions that occur in some star are materialized, closed under
    // opposition and ordered by (base direction, end states).
    std::set<std::tuple<std::size_t, std::size_t, std::size_t>> used;
    auto note = [&](const std::string& d, const std::string& q1, const std::string& q2) {
        used.insert({static_cast<std::size_t>(dir_index(d)), static_cast<std::size_t>(state_index(q1)),
                     static_cast<std::size_t>(state_index(q2))});
        const auto& od = sig.opposite.at(d);
        used.insert({static_cast<std::size_t>(dir_index(od)), static_cast<std::size_t>(state_index(q2)),
                     static_cast<std::size_t>(state_index(q1))});
    };

    std::set<Star> dedup(automaton.stars.begin(), automaton.stars.end());
    for (const auto& star : dedup) {
        const auto& dirs = sig.dirs(star.label);
        for (std::size_t i = 0; i < dirs.size(); ++i)
            note(dirs[i], star.centre, star.rays[i]);
    }

    for (const auto& [di, q1i, q2i] : used) {
        const auto& d = sig.directions[di];
        const auto& q1 = automaton.states[q1i];
        const auto& q2 = automaton.states[q2i];
        std::string name = detail::annotated_dir_name(d, q1, q2);
        out.reduced.directions.push_back(name);
        out.reduced.opposite[name] = detail::annotated_dir_name(sig.opposite.at(d), q2, q1);
        out.direction_parts[name] = {d, q1, q2};
    }

    for (const auto& star : dedup) {
        std::string name = detail::star_label_name(star);
        out.reduced.labels.push_back(name);
        out.star_of_label[name] = star;
        if (sig.is_initial(star.label)) out.reduced.initial_labels.push_back(name);
        const auto& dirs = sig.dirs(star.label);
        std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> keyed;
        for (std::size_t i = 0; i < dirs.size(); ++i)
            keyed.push_back({static_cast<std::size_t>(dir_index(dirs[i])),
                             static_cast<std::size_t>(state_index(star.centre)),
                             static_cast<std::size_t>(state_index(star.rays[i]))});
        std::sort(keyed.begin(), keyed.end());
        std::vector<std::string> annotated;
        for (const auto& [di, q1i, q2i] : keyed)
            annotated.push_back(detail::annotated_dir_name(sig.directions[di], automaton.states[q1i],
                                                           automaton.states[q2i]));
        out.reduced.dirs_of_label[name] = std::move(annotated);
    }
    return out;
}

/// The encoding map: same nodes and edge shape, labels become the induced
/// stars and each direction gains the states at both edge ends.
inline Graph encode_tiling(const Signature& sig, const StarAutomaton& automaton, const Graph& g,
                           const TilingAssignment& t) {
    if (!check_tiling(sig, automaton, g, t))
        throw precondition_error("encode_tiling: assignment is not a tiling");
    Graph out;
    out.nodes = g.nodes;
    out.initial_node = g.initial_node;
    for (const auto& v : g.nodes) {
        out.labeling[v] = detail::star_label_name(detail::induced_star(sig, g, t, v));
        out.edges[v] = {};
        for (const auto& d : sig.dirs(g.label_of(v))) {
            const auto u = *g.neighbour(v, d);
            out.edges[v][detail::annotated_dir_name(d, t.state_of.at(v), t.state_of.at(u))] = u;
        }
    }
    return out;
}

/// The inverse map: drop the annotations and read the tiling off the star
/// centres.
inline std::pair<Graph, TilingAssignment> decode_tiling(const StarReduction& reduction, const Graph& gp) {
    Graph out;
    TilingAssignment t;
    out.nodes = gp.nodes;
    out.initial_node = gp.initial_node;
    for (const auto& v : gp.nodes) {
        auto it = reduction.star_of_label.find(gp.label_of(v));
        if (it == reduction.star_of_label.end())
            throw precondition_error("decode_tiling: unknown annotated label " + gp.label_of(v));
        out.labeling[v] = it->second.label;
        t.state_of[v] = it->second.centre;
        out.edges[v] = {};
        auto eit = gp.edges.find(v);
        if (eit == gp.edges.end()) continue;
        for (const auto& [dp, u] : eit->second) {
            auto pit = reduction.direction_parts.find(dp);
            if (pit == reduction.direction_parts.end())
                throw precondition_error("decode_tiling: unknown annotated direction " + dp);
            out.edges[v][std::get<0>(pit->second)] = u;
        }
    }
    return {out, t};
}

struct StarVerdict {
    Emptiness verdict = Emptiness::empty;
    std::optional<Graph> witness;
    std::optional<TilingAssignment> tiling;
};

/// Emptiness for star automata through the signature reduction; a positive
/// verdict is certified by re-checking the decoded tiling.
inline StarVerdict star_nonempty(const Signature& sig, const StarAutomaton& automaton,
                                 const SolverLimits& limits = {}) {
    StarVerdict verdict;
    auto reduction = reduce_star_to_signature(sig, automaton);
    auto inner = signature_nonempty(reduction.reduced, limits);
    if (inner.verdict == Emptiness::resource_limit) {
        verdict.verdict = Emptiness::resource_limit;
        return verdict;
    }
    if (inner.verdict == Emptiness::empty) return verdict;
    auto [witness, tiling] = decode_tiling(reduction, *inner.witness);
    if (!check_tiling(sig, automaton, witness, tiling))
        throw std::logic_error("star_nonempty: decoded witness fails its tiling check");
    verdict.verdict = Emptiness::nonempty;
    verdict.witness = std::move(witness);
    verdict.tiling = std::move(tiling);
    return verdict;
}

/// Node bound for the smallest accepted graph, s*n^2*k^(k*n^2-1); requires
/// at least two directions and no direction-free label.
inline std::optional<BigInt> star_bound(const Signature& sig, const StarAutomaton& automaton) {
    if (sig.directions.size() < 2) return std::nullopt;
    for (const auto& a : sig.labels)
        if (sig.dirs(a).empty()) return std::nullopt;
    const std::uint64_t n = automaton.states.size();
    const std::uint64_t s = automaton.stars.size();
    const std::uint64_t k = sig.directions.size();
    return BigInt(s) * n * n * bigint_pow(BigInt(k), k * n * n - 1);
}

} // namespace graphsig
