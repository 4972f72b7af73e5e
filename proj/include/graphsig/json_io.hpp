#pragma once

#include <nlohmann/json.hpp>

#include "graphsig/grid_automaton.hpp"

namespace graphsig {

using json = nlohmann::ordered_json;

namespace detail {

inline void expect_object(const json& j, const std::string& what,
                          const std::vector<std::string>& required,
                          const std::vector<std::string>& optional = {}) {
    if (!j.is_object())
        throw precondition_error(what + ": expected a JSON object");
    for (const auto& key : required)
        if (!j.contains(key))
            throw precondition_error(what + ": missing field \"" + key + "\"");
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (std::find(required.begin(), required.end(), key) == required.end() &&
            std::find(optional.begin(), optional.end(), key) == optional.end())
            throw precondition_error(what + ": unknown field \"" + key + "\"");
    }
}

inline std::vector<std::string> string_list(const json& j, const std::string& what) {
    if (!j.is_array()) throw precondition_error(what + ": expected an array of strings");
    std::vector<std::string> out;
    for (const auto& item : j) {
        if (!item.is_string()) throw precondition_error(what + ": expected an array of strings");
        out.push_back(item.get<std::string>());
    }
    return out;
}

inline std::map<std::string, std::string> string_map(const json& j, const std::string& what) {
    if (!j.is_object()) throw precondition_error(what + ": expected an object of strings");
    std::map<std::string, std::string> out;
    for (const auto& [key, value] : j.items()) {
        if (!value.is_string()) throw precondition_error(what + ": expected an object of strings");
        out[key] = value.get<std::string>();
    }
    return out;
}

} // namespace detail

// --- signatures and graphs ------------------------------------------------

inline json to_json(const Signature& sig) {
    json j;
    j["directions"] = sig.directions;
    json opposite = json::object();
    for (const auto& d : sig.directions) {
        auto it = sig.opposite.find(d);
        if (it != sig.opposite.end()) opposite[d] = it->second;
    }
    j["opposite"] = std::move(opposite);
    j["labels"] = sig.labels;
    j["initial_labels"] = sig.initial_labels;
    json dirs = json::object();
    for (const auto& a : sig.labels) {
        auto it = sig.dirs_of_label.find(a);
        dirs[a] = it == sig.dirs_of_label.end() ? std::vector<std::string>{} : it->second;
    }
    j["dirs_of_label"] = std::move(dirs);
    return j;
}

inline Signature signature_from_json(const json& j) {
    detail::expect_object(j, "signature",
                          {"directions", "opposite", "labels", "initial_labels", "dirs_of_label"});
    Signature sig;
    sig.directions = detail::string_list(j.at("directions"), "signature.directions");
    sig.opposite = detail::string_map(j.at("opposite"), "signature.opposite");
    sig.labels = detail::string_list(j.at("labels"), "signature.labels");
    sig.initial_labels = detail::string_list(j.at("initial_labels"), "signature.initial_labels");
    if (!j.at("dirs_of_label").is_object())
        throw precondition_error("signature.dirs_of_label: expected an object");
    for (const auto& [label, dirs] : j.at("dirs_of_label").items())
        sig.dirs_of_label[label] = detail::string_list(dirs, "signature.dirs_of_label");
    return sig;
}

inline json to_json(const Graph& g) {
    json j;
    j["nodes"] = g.nodes;
    j["initial"] = g.initial_node;
    json labels = json::object();
    for (const auto& v : g.nodes) {
        auto it = g.labeling.find(v);
        if (it != g.labeling.end()) labels[v] = it->second;
    }
    j["labels"] = std::move(labels);
    json edges = json::object();
    for (const auto& v : g.nodes) {
        json out = json::object();
        auto it = g.edges.find(v);
        if (it != g.edges.end())
            for (const auto& [d, u] : it->second) out[d] = u;
        edges[v] = std::move(out);
    }
    j["edges"] = std::move(edges);
    return j;
}

inline Graph graph_from_json(const json& j) {
    detail::expect_object(j, "graph", {"nodes", "initial", "labels", "edges"});
    Graph g;
    g.nodes = detail::string_list(j.at("nodes"), "graph.nodes");
    if (!j.at("initial").is_string()) throw precondition_error("graph.initial: expected a string");
    g.initial_node = j.at("initial").get<std::string>();
    g.labeling = detail::string_map(j.at("labels"), "graph.labels");
    if (!j.at("edges").is_object()) throw precondition_error("graph.edges: expected an object");
    for (const auto& [v, out] : j.at("edges").items())
        g.edges[v] = detail::string_map(out, "graph.edges");
    return g;
}

// --- solver values ----------------------------------------------------------

inline json to_json(const BalancedVector& vec) {
    json counts = json::object();
    for (const auto& [a, x] : vec.counts) counts[a] = x;
    json j;
    j["counts"] = std::move(counts);
    return j;
}

inline BalancedVector balanced_vector_from_json(const json& j) {
    detail::expect_object(j, "balanced vector", {"counts"});
    if (!j.at("counts").is_object())
        throw precondition_error("balanced vector.counts: expected an object");
    BalancedVector vec;
    for (const auto& [a, x] : j.at("counts").items()) {
        if (!x.is_number_unsigned())
            throw precondition_error("balanced vector.counts: expected non-negative integers");
        vec.counts[a] = x.get<std::uint64_t>();
    }
    return vec;
}

inline json to_json(const SignatureVerdict& verdict) {
    json j;
    if (verdict.verdict == Emptiness::nonempty) {
        j["verdict"] = "nonempty";
        j["witness"] = to_json(*verdict.witness);
    } else {
        j["verdict"] = "empty";
    }
    return j;
}

// --- automata ----------------------------------------------------------------

inline json to_json(const GraphWalkingAutomaton& a) {
    json j;
    j["states"] = a.states;
    j["initial"] = a.initial_state;
    json accept = json::array();
    for (const auto& [q, label] : a.acceptance) accept.push_back({q, label});
    j["accept"] = std::move(accept);
    json delta = json::object();
    for (const auto& [key, move] : a.transitions)
        delta[key.first + "," + key.second] = {move.first, move.second};
    j["delta"] = std::move(delta);
    return j;
}

inline GraphWalkingAutomaton gwa_from_json(const json& j) {
    detail::expect_object(j, "automaton", {"states", "initial", "accept", "delta"});
    GraphWalkingAutomaton a;
    a.states = detail::string_list(j.at("states"), "automaton.states");
    if (!j.at("initial").is_string()) throw precondition_error("automaton.initial: expected a string");
    a.initial_state = j.at("initial").get<std::string>();
    if (!j.at("accept").is_array()) throw precondition_error("automaton.accept: expected an array");
    for (const auto& pair : j.at("accept")) {
        auto items = detail::string_list(pair, "automaton.accept");
        if (items.size() != 2) throw precondition_error("automaton.accept: expected [state, label] pairs");
        a.acceptance.insert({items[0], items[1]});
    }
    if (!j.at("delta").is_object()) throw precondition_error("automaton.delta: expected an object");
    std::set<std::string> state_set(a.states.begin(), a.states.end());
    for (const auto& [key, value] : j.at("delta").items()) {
        auto items = detail::string_list(value, "automaton.delta");
        if (items.size() != 2)
            throw precondition_error("automaton.delta: expected [state, direction] values");
        std::optional<std::pair<std::string, std::string>> split;
        for (std::size_t i = 0; i < key.size(); ++i)
            if (key[i] == ',' && state_set.count(key.substr(0, i))) {
                split = {key.substr(0, i), key.substr(i + 1)};
                break;
            }
        if (!split)
            throw precondition_error("automaton.delta: key \"" + key + "\" is not \"state,label\"");
        a.transitions[*split] = {items[0], items[1]};
    }
    return a;
}

inline json to_json(const Configuration& c) {
    json j;
    j["state"] = c.state;
    j["node"] = c.node;
    return j;
}

inline json to_json(const RunResult& r) {
    json j;
    switch (r.outcome) {
    case RunOutcome::accept: j["outcome"] = "accept"; break;
    case RunOutcome::reject: j["outcome"] = "reject"; break;
    case RunOutcome::loop: j["outcome"] = "loop"; break;
    }
    j["final"] = to_json(r.final_config);
    j["steps"] = r.steps;
    if (r.first_repeated) j["first_repeated"] = to_json(*r.first_repeated);
    if (!r.trace.empty()) {
        json trace = json::array();
        for (const auto& c : r.trace) trace.push_back(to_json(c));
        j["trace"] = std::move(trace);
    }
    return j;
}

inline json to_json(const GwaVerdict& verdict) {
    json j;
    if (verdict.verdict == Emptiness::nonempty) {
        j["verdict"] = "nonempty";
        j["witness"] = to_json(*verdict.witness);
        j["run"] = to_json(*verdict.run);
    } else {
        j["verdict"] = "empty";
    }
    return j;
}

inline json to_json(const StarAutomaton& a) {
    json j;
    j["states"] = a.states;
    json stars = json::array();
    for (const auto& star : a.stars) {
        json s;
        s["label"] = star.label;
        s["centre"] = star.centre;
        s["rays"] = star.rays;
        stars.push_back(std::move(s));
    }
    j["stars"] = std::move(stars);
    return j;
}

inline StarAutomaton star_automaton_from_json(const json& j) {
    detail::expect_object(j, "star automaton", {"states", "stars"});
    StarAutomaton a;
    a.states = detail::string_list(j.at("states"), "star automaton.states");
    if (!j.at("stars").is_array()) throw precondition_error("star automaton.stars: expected an array");
    for (const auto& s : j.at("stars")) {
        detail::expect_object(s, "star", {"label", "centre", "rays"});
        Star star;
        star.label = s.at("label").get<std::string>();
        star.centre = s.at("centre").get<std::string>();
        star.rays = detail::string_list(s.at("rays"), "star.rays");
        a.stars.push_back(std::move(star));
    }
    return a;
}

inline json to_json(const TilingAssignment& t) {
    json state_of = json::object();
    for (const auto& [v, q] : t.state_of) state_of[v] = q;
    json j;
    j["state_of"] = std::move(state_of);
    return j;
}

inline TilingAssignment tiling_from_json(const json& j) {
    detail::expect_object(j, "tiling", {"state_of"});
    TilingAssignment t;
    t.state_of = detail::string_map(j.at("state_of"), "tiling.state_of");
    return t;
}

inline json to_json(const StarVerdict& verdict) {
    json j;
    if (verdict.verdict == Emptiness::nonempty) {
        j["verdict"] = "nonempty";
        j["witness"] = to_json(*verdict.witness);
        j["tiling"] = to_json(*verdict.tiling);
    } else {
        j["verdict"] = "empty";
    }
    return j;
}

// --- hardness inputs ---------------------------------------------------------

inline json to_json(const SimpleGraph& g) {
    json j;
    j["vertices"] = g.vertices;
    json edges = json::array();
    for (const auto& [u, v] : g.edges) edges.push_back({u, v});
    j["edges"] = std::move(edges);
    return j;
}

inline SimpleGraph simple_graph_from_json(const json& j) {
    detail::expect_object(j, "simple graph", {"vertices", "edges"});
    SimpleGraph g;
    g.vertices = detail::string_list(j.at("vertices"), "simple graph.vertices");
    if (!j.at("edges").is_array()) throw precondition_error("simple graph.edges: expected an array");
    for (const auto& e : j.at("edges")) {
        auto items = detail::string_list(e, "simple graph.edges");
        if (items.size() != 2) throw precondition_error("simple graph.edges: expected [u, v] pairs");
        g.edges.emplace_back(items[0], items[1]);
    }
    return g;
}

inline json to_json(const TuringMachine& m) {
    json j;
    j["states"] = m.states;
    j["input_alphabet"] = m.input_alphabet;
    j["work_alphabet"] = m.work_alphabet;
    j["blank"] = m.blank;
    j["initial"] = m.initial_states;
    json accept = json::array();
    for (const auto& [q, s] : m.accepting_pairs) accept.push_back({q, s});
    j["accept"] = std::move(accept);
    json delta = json::array();
    for (const auto& rule : m.transitions) {
        json r;
        r["from"] = {rule.from_state, rule.read};
        r["to"] = {rule.to_state, rule.write, std::string(1, rule.move)};
        delta.push_back(std::move(r));
    }
    j["delta"] = std::move(delta);
    return j;
}

inline TuringMachine turing_machine_from_json(const json& j) {
    detail::expect_object(j, "turing machine",
                          {"states", "input_alphabet", "work_alphabet", "blank", "initial", "accept",
                           "delta"});
    TuringMachine m;
    m.states = detail::string_list(j.at("states"), "turing machine.states");
    m.input_alphabet = detail::string_list(j.at("input_alphabet"), "turing machine.input_alphabet");
    m.work_alphabet = detail::string_list(j.at("work_alphabet"), "turing machine.work_alphabet");
    if (!j.at("blank").is_string()) throw precondition_error("turing machine.blank: expected a string");
    m.blank = j.at("blank").get<std::string>();
    m.initial_states = detail::string_list(j.at("initial"), "turing machine.initial");
    if (!j.at("accept").is_array()) throw precondition_error("turing machine.accept: expected an array");
    for (const auto& pair : j.at("accept")) {
        auto items = detail::string_list(pair, "turing machine.accept");
        if (items.size() != 2)
            throw precondition_error("turing machine.accept: expected [state, symbol] pairs");
        m.accepting_pairs.insert({items[0], items[1]});
    }
    if (!j.at("delta").is_array()) throw precondition_error("turing machine.delta: expected an array");
    for (const auto& r : j.at("delta")) {
        detail::expect_object(r, "turing machine.delta entry", {"from", "to"});
        auto from = detail::string_list(r.at("from"), "turing machine.delta.from");
        auto to = detail::string_list(r.at("to"), "turing machine.delta.to");
        if (from.size() != 2 || to.size() != 3 || (to[2] != "L" && to[2] != "R"))
            throw precondition_error("turing machine.delta: expected {from:[q,s], to:[q,s,L|R]}");
        m.transitions.push_back({from[0], from[1], to[0], to[1], to[2][0]});
    }
    return m;
}

inline json to_json(const std::vector<TmConfiguration>& computation) {
    json configs = json::array();
    for (const auto& c : computation) {
        json j;
        j["state"] = c.state;
        j["head"] = c.head;
        j["tape"] = c.tape;
        configs.push_back(std::move(j));
    }
    json j;
    j["configurations"] = std::move(configs);
    return j;
}

inline std::vector<TmConfiguration> computation_from_json(const json& j) {
    detail::expect_object(j, "computation", {"configurations"});
    if (!j.at("configurations").is_array())
        throw precondition_error("computation.configurations: expected an array");
    std::vector<TmConfiguration> out;
    for (const auto& c : j.at("configurations")) {
        detail::expect_object(c, "configuration", {"state", "head", "tape"});
        TmConfiguration config;
        config.state = c.at("state").get<std::string>();
        if (!c.at("head").is_number_unsigned())
            throw precondition_error("configuration.head: expected a non-negative integer");
        config.head = c.at("head").get<std::size_t>();
        config.tape = detail::string_list(c.at("tape"), "configuration.tape");
        out.push_back(std::move(config));
    }
    return out;
}

inline json to_json(const ValidationReport& report) {
    json j;
    j["ok"] = report.ok;
    j["violations"] = report.violations;
    return j;
}

} // namespace graphsig
