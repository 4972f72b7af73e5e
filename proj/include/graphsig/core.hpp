#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace graphsig {

/// Thrown when an operation is invoked on inputs that violate its
/// preconditions (unbalanced vector, malformed computation, ...).
class precondition_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An alphabet for graphs: edge end-point labels (directions) with an
/// opposition involution, node labels, initial node labels, and the set of
/// directions attached to every node carrying a given label.
///
/// The order of `directions` is the fixed linear order used by star rays;
/// every `dirs_of_label` list follows it.
struct Signature {
    std::vector<std::string> directions;
    std::map<std::string, std::string> opposite;
    std::vector<std::string> labels;
    std::vector<std::string> initial_labels;
    std::map<std::string, std::vector<std::string>> dirs_of_label;

    bool has_direction(const std::string& d) const {
        return std::find(directions.begin(), directions.end(), d) != directions.end();
    }
    bool has_label(const std::string& a) const {
        return std::find(labels.begin(), labels.end(), a) != labels.end();
    }
    bool is_initial(const std::string& a) const {
        return std::find(initial_labels.begin(), initial_labels.end(), a) != initial_labels.end();
    }
    /// Direction set of a label; empty when the label has no entry.
    const std::vector<std::string>& dirs(const std::string& a) const {
        static const std::vector<std::string> none;
        auto it = dirs_of_label.find(a);
        return it == dirs_of_label.end() ? none : it->second;
    }
    std::optional<std::string> opposite_of(const std::string& d) const {
        auto it = opposite.find(d);
        if (it == opposite.end()) return std::nullopt;
        return it->second;
    }
};

/// A finite labelled graph over a signature. Edges are stored as the
/// per-node partial map direction -> neighbour; an edge between u and v with
/// end-point directions (d, -d) appears in both maps.
struct Graph {
    std::vector<std::string> nodes;
    std::string initial_node;
    std::map<std::string, std::map<std::string, std::string>> edges;
    std::map<std::string, std::string> labeling;

    const std::string& label_of(const std::string& v) const {
        auto it = labeling.find(v);
        if (it == labeling.end())
            throw precondition_error("node has no label: " + v);
        return it->second;
    }
    std::optional<std::string> neighbour(const std::string& v, const std::string& d) const {
        auto it = edges.find(v);
        if (it == edges.end()) return std::nullopt;
        auto jt = it->second.find(d);
        if (jt == it->second.end()) return std::nullopt;
        return jt->second;
    }
};

/// Outcome of a validation pass. Violations are data, not failures; `ok`
/// holds exactly when the list is empty.
struct ValidationReport {
    bool ok = true;
    std::vector<std::string> violations;

    void fail(std::string what) {
        ok = false;
        violations.push_back(std::move(what));
    }
};

inline ValidationReport validate_signature(const Signature& sig) {
    ValidationReport report;

    std::set<std::string> dir_set;
    for (const auto& d : sig.directions)
        if (!dir_set.insert(d).second)
            report.fail("duplicate direction: " + d);

    std::set<std::string> label_set;
    for (const auto& a : sig.labels)
        if (!label_set.insert(a).second)
            report.fail("duplicate label: " + a);

    for (const auto& d : sig.directions) {
        auto it = sig.opposite.find(d);
        if (it == sig.opposite.end()) {
            report.fail("opposite undefined on " + d);
            continue;
        }
        if (!dir_set.count(it->second)) {
            report.fail("opposite of " + d + " is not a direction: " + it->second);
            continue;
        }
        auto back = sig.opposite.find(it->second);
        if (back == sig.opposite.end() || back->second != d)
            report.fail("opposite not involution on " + d);
    }
    for (const auto& [d, od] : sig.opposite)
        if (!dir_set.count(d))
            report.fail("opposite defined on unknown direction: " + d);

    std::set<std::string> initial_set;
    for (const auto& a : sig.initial_labels) {
        if (!label_set.count(a))
            report.fail("initial label not a label: " + a);
        if (!initial_set.insert(a).second)
            report.fail("duplicate initial label: " + a);
    }

    for (const auto& [a, dirs] : sig.dirs_of_label)
        if (!label_set.count(a))
            report.fail("dirs_of_label keyed by unknown label: " + a);
    for (const auto& a : sig.labels) {
        auto it = sig.dirs_of_label.find(a);
        if (it == sig.dirs_of_label.end()) {
            report.fail("dirs_of_label missing entry for label: " + a);
            continue;
        }
        std::set<std::string> seen;
        for (const auto& d : it->second) {
            if (!dir_set.count(d))
                report.fail("dirs_of_label(" + a + ") contains unknown direction: " + d);
            if (!seen.insert(d).second)
                report.fail("dirs_of_label(" + a + ") contains duplicate direction: " + d);
        }
        // The per-label list must follow the global direction order.
        std::size_t pos = 0;
        bool ordered = true;
        for (const auto& d : it->second) {
            auto at = std::find(sig.directions.begin() + static_cast<long>(pos), sig.directions.end(), d);
            if (at == sig.directions.end()) {
                ordered = false;
                break;
            }
            pos = static_cast<std::size_t>(at - sig.directions.begin()) + 1;
        }
        if (!ordered && seen.size() == it->second.size())
            report.fail("dirs_of_label(" + a + ") not in signature direction order");
    }

    return report;
}

inline ValidationReport validate_graph(const Signature& sig, const Graph& g) {
    ValidationReport report;

    std::set<std::string> node_set;
    for (const auto& v : g.nodes)
        if (!node_set.insert(v).second)
            report.fail("duplicate node: " + v);

    if (!node_set.count(g.initial_node))
        report.fail("initial node not a node: " + g.initial_node);

    for (const auto& [v, a] : g.labeling) {
        if (!node_set.count(v))
            report.fail("labeling keyed by unknown node: " + v);
        else if (!sig.has_label(a))
            report.fail("node " + v + " carries unknown label: " + a);
    }
    for (const auto& v : g.nodes)
        if (!g.labeling.count(v))
            report.fail("node has no label: " + v);

    for (const auto& [v, out] : g.edges) {
        if (!node_set.count(v)) {
            report.fail("edges keyed by unknown node: " + v);
            continue;
        }
        for (const auto& [d, u] : out) {
            if (!sig.has_direction(d))
                report.fail("edge at " + v + " uses unknown direction: " + d);
            if (!node_set.count(u))
                report.fail("edge " + v + "+" + d + " targets unknown node: " + u);
        }
    }
    if (!report.ok)
        return report;

    // v+d defined iff d in D_{label(v)}, and edge ends carry opposite
    // directions: (v+d)+(-d) = v.
    for (const auto& v : g.nodes) {
        const auto& a = g.labeling.at(v);
        const auto& dirs = sig.dirs(a);
        std::set<std::string> allowed(dirs.begin(), dirs.end());
        auto it = g.edges.find(v);
        if (it != g.edges.end()) {
            for (const auto& [d, u] : it->second) {
                if (!allowed.count(d)) {
                    report.fail("edge " + v + "+" + d + " not allowed by label " + a);
                    continue;
                }
                const auto& od = sig.opposite.at(d);
                auto back = g.neighbour(u, od);
                if (!back || *back != v)
                    report.fail("edge " + v + "+" + d + "=" + u + " has no matching " + u + "+" + od + "=" + v);
            }
        }
        for (const auto& d : dirs) {
            if (!g.neighbour(v, d))
                report.fail("node " + v + " (label " + a + ") missing edge in direction " + d);
        }
    }

    for (const auto& v : g.nodes) {
        bool initial_label = sig.is_initial(g.labeling.at(v));
        if (v == g.initial_node && !initial_label)
            report.fail("initial node " + v + " carries non-initial label");
        if (v != g.initial_node && initial_label)
            report.fail("non-initial node " + v + " carries initial label");
    }

    return report;
}

/// Number of nodes per label, with explicit zeros for labels absent from the
/// graph. Counts sum to the node count.
inline std::map<std::string, std::uint64_t> label_counts(const Signature& sig, const Graph& g) {
    std::map<std::string, std::uint64_t> counts;
    for (const auto& a : sig.labels)
        counts[a] = 0;
    for (const auto& v : g.nodes)
        counts[g.label_of(v)] += 1;
    return counts;
}

/// Equality under node-identifier equality; no isomorphism search.
inline bool graphs_identical(const Graph& g1, const Graph& g2) {
    auto sorted = [](std::vector<std::string> v) {
        std::sort(v.begin(), v.end());
        return v;
    };
    return sorted(g1.nodes) == sorted(g2.nodes) && g1.initial_node == g2.initial_node &&
           g1.labeling == g2.labeling && g1.edges == g2.edges;
}

} // namespace graphsig
