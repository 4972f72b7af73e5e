#pragma once

#include <tuple>

#include "graphsig/star.hpp"

namespace graphsig {

/// Deterministic automaton walking on graphs: moves are chosen from the
/// current state and node label, acceptance is a set of (state, label)
/// pairs, and the transition map is defined away from the acceptance set.
struct GraphWalkingAutomaton {
    std::vector<std::string> states;
    std::string initial_state;
    std::set<std::pair<std::string, std::string>> acceptance;
    std::map<std::pair<std::string, std::string>, std::pair<std::string, std::string>> transitions;
};

inline ValidationReport validate_gwa(const Signature& sig, const GraphWalkingAutomaton& automaton) {
    ValidationReport report;
    std::set<std::string> state_set;
    for (const auto& q : automaton.states)
        if (!state_set.insert(q).second)
            report.fail("duplicate state: " + q);
    if (!state_set.count(automaton.initial_state))
        report.fail("initial state not a state: " + automaton.initial_state);
    for (const auto& [q, a] : automaton.acceptance) {
        if (!state_set.count(q))
            report.fail("acceptance pair uses unknown state: " + q);
        if (!sig.has_label(a))
            report.fail("acceptance pair uses unknown label: " + a);
    }
    for (const auto& [key, move] : automaton.transitions) {
        const auto& [q, a] = key;
        const auto& [q2, d] = move;
        std::string name = "(" + q + "," + a + ")";
        if (!state_set.count(q))
            report.fail("transition from unknown state: " + name);
        if (!sig.has_label(a))
            report.fail("transition on unknown label: " + name);
        if (!state_set.count(q2))
            report.fail("transition " + name + " targets unknown state: " + q2);
        if (automaton.acceptance.count(key))
            report.fail("transition defined on acceptance pair: " + name);
        const auto& dirs = sig.dirs(a);
        if (std::find(dirs.begin(), dirs.end(), d) == dirs.end())
            report.fail("transition " + name + " moves in direction not in D_" + a + ": " + d);
    }
    return report;
}

struct Configuration {
    std::string state;
    std::string node;

    bool operator==(const Configuration& other) const {
        return state == other.state && node == other.node;
    }
    bool operator<(const Configuration& other) const {
        return std::tie(state, node) < std::tie(other.state, other.node);
    }
};

enum class RunOutcome { accept, reject, loop };

struct RunResult {
    RunOutcome outcome = RunOutcome::reject;
    Configuration final_config;
    std::optional<Configuration> first_repeated;
    std::vector<Configuration> trace;
    std::size_t steps = 0;
};

/// Runs the unique computation from the initial configuration. Halts with
/// accept/reject, or reports a loop as soon as a configuration repeats;
/// always decides within |Q|*|V|+1 steps. `trace_limit` caps how many
/// configurations are recorded.
inline RunResult simulate(const Signature& sig, const GraphWalkingAutomaton& automaton, const Graph& g,
                          std::size_t trace_limit = 0) {
    RunResult result;
    Configuration current{automaton.initial_state, g.initial_node};
    std::set<Configuration> visited;
    while (true) {
        if (result.trace.size() < trace_limit) result.trace.push_back(current);
        if (!visited.insert(current).second) {
            result.outcome = RunOutcome::loop;
            result.final_config = current;
            result.first_repeated = current;
            return result;
        }
        const auto& a = g.label_of(current.node);
        auto key = std::make_pair(current.state, a);
        auto it = automaton.transitions.find(key);
        if (it == automaton.transitions.end()) {
            result.outcome = automaton.acceptance.count(key) ? RunOutcome::accept : RunOutcome::reject;
            result.final_config = current;
            return result;
        }
        const auto& [q2, d] = it->second;
        auto u = g.neighbour(current.node, d);
        if (!u)
            throw precondition_error("simulate: move along undefined edge " + current.node + "+" + d);
        current = Configuration{q2, *u};
        result.steps += 1;
    }
}

/// One node label of the reduced signature: a base label plus, per base
/// direction, the states entering and leaving through that edge end.
struct AnnotatedLabel {
    std::string base;
    std::map<std::string, std::pair<std::vector<std::string>, std::vector<std::string>>> annotations;
};

struct GwaReduction {
    Signature reduced;
    std::map<std::string, AnnotatedLabel> label_parts;
    std::map<std::string, std::tuple<std::string, std::vector<std::string>, std::vector<std::string>>>
        direction_parts;
};

struct ReduceLimits {
    std::size_t max_labels = 1u << 20;
};

namespace detail {

inline std::string state_set_name(const std::vector<std::string>& states) {
    return "{" + join(states, ",") + "}";
}

inline std::string gwa_dir_name(const std::string& d, const std::vector<std::string>& in,
                                const std::vector<std::string>& out) {
    return d + "|" + state_set_name(in) + "|" + state_set_name(out);
}

inline std::string gwa_label_name(const std::string& base,
                                  const std::vector<std::string>& base_dirs,
                                  const std::map<std::string, std::pair<std::vector<std::string>,
                                                                        std::vector<std::string>>>& ann) {
    std::vector<std::string> parts;
    for (const auto& d : base_dirs) {
        const auto& [in, out] = ann.at(d);
        parts.push_back(gwa_dir_name(d, in, out));
    }
    return base + "(" + join(parts, ";") + ")";
}

} // namespace detail

/// Builds the signature whose graphs encode exactly the accepted graphs of
/// the automaton together with their accepting computations. Only labels
/// surviving the admissibility conditions are produced: states entering a
/// node arrive through pairwise distinct edge ends, every entering state can
/// accept or move on, moves out of a node are exactly the encoded ones, and
/// no two entering states share a transition.
inline GwaReduction reduce_gwa_to_signature(const Signature& sig, const GraphWalkingAutomaton& automaton,
                                            const ReduceLimits& limits = {}) {
    GwaReduction out;
    const auto& states = automaton.states;
    const std::size_t n = states.size();

    auto dir_index = [&](const std::string& d) {
        return static_cast<std::size_t>(
            std::find(sig.directions.begin(), sig.directions.end(), d) - sig.directions.begin());
    };

    // Used annotated directions, keyed for deterministic ordering by
    // (base direction, entering set, leaving set) with sets as bit masks
    // over the state order.
    std::map<std::tuple<std::size_t, std::uint64_t, std::uint64_t>,
             std::tuple<std::string, std::vector<std::string>, std::vector<std::string>>>
        used_dirs;
    auto subset_names = [&](std::uint64_t mask) {
        std::vector<std::string> names;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (std::uint64_t(1) << i)) names.push_back(states[i]);
        return names;
    };
    auto note_dir = [&](const std::string& d, std::uint64_t in_mask, std::uint64_t out_mask) {
        used_dirs[{dir_index(d), in_mask, out_mask}] = {d, subset_names(in_mask), subset_names(out_mask)};
        const auto& od = sig.opposite.at(d);
        used_dirs[{dir_index(od), out_mask, in_mask}] = {od, subset_names(out_mask), subset_names(in_mask)};
    };

    struct Admitted {
        std::string base;
        std::vector<std::pair<std::uint64_t, std::uint64_t>> masks; // aligned with dirs(base)
    };
    std::vector<Admitted> admitted;

    for (const auto& a : sig.labels) {
        const auto& dirs = sig.dirs(a);
        const std::size_t k = dirs.size();
        const bool initial = sig.is_initial(a);

        // Assign every state to "absent" (choice 0) or to one entering
        // direction (choice 1..k); the initial state of an initial label is
        // pinned to "absent" because it enters the node by fiat.
        std::vector<std::size_t> choice(n, 0);
        while (true) {
            bool ok = true;
            std::vector<std::uint64_t> in_masks(k, 0);
            std::uint64_t q_in = 0;
            for (std::size_t i = 0; i < n && ok; ++i) {
                if (choice[i] == 0) continue;
                if (initial && states[i] == automaton.initial_state) {
                    ok = false;
                    break;
                }
                in_masks[choice[i] - 1] |= std::uint64_t(1) << i;
                q_in |= std::uint64_t(1) << i;
            }
            if (ok && initial)
                q_in |= std::uint64_t(1)
                        << static_cast<std::size_t>(std::find(states.begin(), states.end(),
                                                              automaton.initial_state) -
                                                    states.begin());

            std::vector<std::uint64_t> out_masks(k, 0);
            if (ok) {
                std::set<std::pair<std::string, std::string>> moves_seen;
                for (std::size_t i = 0; i < n && ok; ++i) {
                    if (!(q_in & (std::uint64_t(1) << i))) continue;
                    auto key = std::make_pair(states[i], a);
                    auto it = automaton.transitions.find(key);
                    if (it == automaton.transitions.end()) {
                        if (!automaton.acceptance.count(key)) ok = false;
                        continue;
                    }
                    if (!moves_seen.insert(it->second).second) {
                        ok = false;
                        break;
                    }
                    const auto& [q2, d] = it->second;
                    std::size_t pos = std::find(dirs.begin(), dirs.end(), d) - dirs.begin();
                    std::size_t q2i = static_cast<std::size_t>(
                        std::find(states.begin(), states.end(), q2) - states.begin());
                    out_masks[pos] |= std::uint64_t(1) << q2i;
                }
            }
            if (ok) {
                Admitted label;
                label.base = a;
                for (std::size_t j = 0; j < k; ++j)
                    label.masks.emplace_back(in_masks[j], out_masks[j]);
                admitted.push_back(std::move(label));
                if (admitted.size() > limits.max_labels)
                    throw resource_limit_error("reduce_gwa_to_signature: label budget exceeded");
            }

            std::size_t pos = 0;
            while (pos < n && choice[pos] == k) choice[pos++] = 0;
            if (pos == n) break;
            choice[pos] += 1;
        }
    }

    for (const auto& label : admitted) {
        const auto& dirs = sig.dirs(label.base);
        for (std::size_t j = 0; j < dirs.size(); ++j)
            note_dir(dirs[j], label.masks[j].first, label.masks[j].second);
    }

    for (const auto& [key, parts] : used_dirs) {
        const auto& [d, in, out] = parts;
        std::string name = detail::gwa_dir_name(d, in, out);
        out.reduced.directions.push_back(name);
        out.reduced.opposite[name] = detail::gwa_dir_name(sig.opposite.at(d), out, in);
        out.direction_parts[name] = parts;
    }

    for (const auto& label : admitted) {
        const auto& dirs = sig.dirs(label.base);
        AnnotatedLabel parts;
        parts.base = label.base;
        std::vector<std::tuple<std::size_t, std::uint64_t, std::uint64_t>> keyed;
        for (std::size_t j = 0; j < dirs.size(); ++j) {
            parts.annotations[dirs[j]] = {subset_names(label.masks[j].first),
                                          subset_names(label.masks[j].second)};
            keyed.push_back({dir_index(dirs[j]), label.masks[j].first, label.masks[j].second});
        }
        std::string name = detail::gwa_label_name(label.base, dirs, parts.annotations);
        out.reduced.labels.push_back(name);
        out.label_parts[name] = std::move(parts);
        if (sig.is_initial(label.base)) out.reduced.initial_labels.push_back(name);
        std::sort(keyed.begin(), keyed.end());
        std::vector<std::string> annotated;
        for (const auto& [di, in_mask, out_mask] : keyed)
            annotated.push_back(
                detail::gwa_dir_name(sig.directions[di], subset_names(in_mask), subset_names(out_mask)));
        out.reduced.dirs_of_label[name] = std::move(annotated);
    }
    return out;
}

/// Encodes an accepted graph together with its run: every edge end records
/// the states that crossed it in each direction, and node labels collect the
/// annotations of their incident ends.
inline Graph encode_accepting_run(const Signature& sig, const GraphWalkingAutomaton& automaton,
                                  const Graph& g) {
    // (node, direction at that node's side) -> states crossing outward/inward.
    std::map<std::pair<std::string, std::string>, std::set<std::string>> entering, leaving;
    Configuration current{automaton.initial_state, g.initial_node};
    std::set<Configuration> visited;
    while (true) {
        if (!visited.insert(current).second)
            throw precondition_error("encode_accepting_run: computation loops");
        auto key = std::make_pair(current.state, g.label_of(current.node));
        auto it = automaton.transitions.find(key);
        if (it == automaton.transitions.end()) {
            if (!automaton.acceptance.count(key))
                throw precondition_error("encode_accepting_run: computation rejects");
            break;
        }
        const auto& [q2, d] = it->second;
        auto u = g.neighbour(current.node, d);
        if (!u)
            throw precondition_error("encode_accepting_run: move along undefined edge");
        leaving[{current.node, d}].insert(q2);
        entering[{*u, sig.opposite.at(d)}].insert(q2);
        current = Configuration{q2, *u};
    }

    auto in_state_order = [&](const std::set<std::string>& set) {
        std::vector<std::string> ordered;
        for (const auto& q : automaton.states)
            if (set.count(q)) ordered.push_back(q);
        return ordered;
    };

    Graph out;
    out.nodes = g.nodes;
    out.initial_node = g.initial_node;
    for (const auto& v : g.nodes) {
        const auto& a = g.label_of(v);
        const auto& dirs = sig.dirs(a);
        std::map<std::string, std::pair<std::vector<std::string>, std::vector<std::string>>> ann;
        for (const auto& d : dirs)
            ann[d] = {in_state_order(entering[{v, d}]), in_state_order(leaving[{v, d}])};
        out.labeling[v] = detail::gwa_label_name(a, dirs, ann);
        out.edges[v] = {};
        for (const auto& d : dirs) {
            const auto& [in, outgoing] = ann.at(d);
            out.edges[v][detail::gwa_dir_name(d, in, outgoing)] = *g.neighbour(v, d);
        }
    }
    return out;
}

/// Drops the run annotations from labels and directions.
inline Graph decode_annotated(const GwaReduction& reduction, const Graph& gp) {
    Graph out;
    out.nodes = gp.nodes;
    out.initial_node = gp.initial_node;
    for (const auto& v : gp.nodes) {
        auto it = reduction.label_parts.find(gp.label_of(v));
        if (it == reduction.label_parts.end())
            throw precondition_error("decode_annotated: unknown annotated label " + gp.label_of(v));
        out.labeling[v] = it->second.base;
        out.edges[v] = {};
        auto eit = gp.edges.find(v);
        if (eit == gp.edges.end()) continue;
        for (const auto& [dp, u] : eit->second) {
            auto pit = reduction.direction_parts.find(dp);
            if (pit == reduction.direction_parts.end())
                throw precondition_error("decode_annotated: unknown annotated direction " + dp);
            out.edges[v][std::get<0>(pit->second)] = u;
        }
    }
    return out;
}

struct GwaVerdict {
    Emptiness verdict = Emptiness::empty;
    std::optional<Graph> witness;
    std::optional<RunResult> run;
};

/// Emptiness for graph-walking automata: reduce, decide the signature,
/// decode the witness and re-run the automaton on it as a certificate.
inline GwaVerdict gwa_nonempty(const Signature& sig, const GraphWalkingAutomaton& automaton,
                               const SolverLimits& limits = {}, const ReduceLimits& reduce_limits = {}) {
    GwaVerdict verdict;
    GwaReduction reduction;
    try {
        reduction = reduce_gwa_to_signature(sig, automaton, reduce_limits);
    } catch (const resource_limit_error&) {
        verdict.verdict = Emptiness::resource_limit;
        return verdict;
    }
    auto inner = signature_nonempty(reduction.reduced, limits);
    if (inner.verdict == Emptiness::resource_limit) {
        verdict.verdict = Emptiness::resource_limit;
        return verdict;
    }
    if (inner.verdict == Emptiness::empty) return verdict;
    Graph witness = decode_annotated(reduction, *inner.witness);
    RunResult run = simulate(sig, automaton, witness);
    if (run.outcome != RunOutcome::accept)
        throw std::logic_error("gwa_nonempty: decoded witness is not accepted");
    verdict.verdict = Emptiness::nonempty;
    verdict.witness = std::move(witness);
    verdict.run = std::move(run);
    return verdict;
}

/// Node bound for the smallest accepted graph, m*4^(n(k+1))*k^(k*4^n-1);
/// requires at least two directions and no direction-free label.
inline std::optional<BigInt> gwa_bound(const Signature& sig, const GraphWalkingAutomaton& automaton) {
    if (sig.directions.size() < 2) return std::nullopt;
    for (const auto& a : sig.labels)
        if (sig.dirs(a).empty()) return std::nullopt;
    const std::uint64_t m = sig.labels.size();
    const std::uint64_t n = automaton.states.size();
    const std::uint64_t k = sig.directions.size();
    BigInt four_n = bigint_pow(BigInt(4), n);
    return BigInt(m) * bigint_pow(BigInt(4), n * (k + 1)) *
           bigint_pow(BigInt(k), static_cast<std::uint64_t>(k * four_n - 1));
}

} // namespace graphsig
