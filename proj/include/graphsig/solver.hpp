#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <functional>
#include <limits>
#include <unordered_set>

#include "graphsig/core.hpp"

namespace graphsig {

using BigInt = boost::multiprecision::cpp_int;

/// The proper direction pairs {d, -d} with d != -d, each listed once in the
/// order of first appearance, plus the self-opposite directions.
struct DirectionPairing {
    std::vector<std::pair<std::string, std::string>> pairs;
    std::vector<std::string> self_opposite;
};

inline DirectionPairing direction_pairing(const Signature& sig) {
    DirectionPairing pairing;
    std::set<std::string> placed;
    for (const auto& d : sig.directions) {
        if (placed.count(d)) continue;
        const auto& od = sig.opposite.at(d);
        if (od == d) {
            pairing.self_opposite.push_back(d);
            placed.insert(d);
        } else {
            pairing.pairs.emplace_back(d, od);
            placed.insert(d);
            placed.insert(od);
        }
    }
    return pairing;
}

/// Net effect of one node with a given label on each direction-pair balance:
/// +1 when the label uses d_i but not -d_i, -1 in the symmetric case, else 0.
struct ContributionVector {
    std::vector<int> entries;
};

inline ContributionVector contribution_vector(const Signature& sig, const std::string& label,
                                              const DirectionPairing& pairing) {
    if (!sig.has_label(label))
        throw precondition_error("contribution_vector: unknown label " + label);
    const auto& dirs = sig.dirs(label);
    std::set<std::string> used(dirs.begin(), dirs.end());
    ContributionVector v;
    v.entries.reserve(pairing.pairs.size());
    for (const auto& [d, od] : pairing.pairs) {
        bool fwd = used.count(d) > 0;
        bool bwd = used.count(od) > 0;
        v.entries.push_back(fwd == bwd ? 0 : (fwd ? 1 : -1));
    }
    return v;
}

/// Node counts per label satisfying both balance conditions: exactly one
/// initial-labelled node, and equal demand for d and -d on every proper pair.
struct BalancedVector {
    std::map<std::string, std::uint64_t> counts;

    std::uint64_t total() const {
        std::uint64_t sum = 0;
        for (const auto& [a, x] : counts) sum += x;
        return sum;
    }
};

inline bool is_balanced(const Signature& sig, const std::map<std::string, std::uint64_t>& counts) {
    for (const auto& [a, x] : counts)
        if (!sig.has_label(a))
            throw precondition_error("is_balanced: unknown label " + a);
    auto count_of = [&](const std::string& a) -> std::uint64_t {
        auto it = counts.find(a);
        return it == counts.end() ? 0 : it->second;
    };

    std::uint64_t initial_total = 0;
    for (const auto& a : sig.initial_labels)
        initial_total += count_of(a);
    if (initial_total != 1) return false;

    const auto pairing = direction_pairing(sig);
    for (const auto& [d, od] : pairing.pairs) {
        std::uint64_t fwd = 0, bwd = 0;
        for (const auto& a : sig.labels) {
            const auto& dirs = sig.dirs(a);
            if (std::find(dirs.begin(), dirs.end(), d) != dirs.end()) fwd += count_of(a);
            if (std::find(dirs.begin(), dirs.end(), od) != dirs.end()) bwd += count_of(a);
        }
        if (fwd != bwd) return false;
    }
    return true;
}

inline BigInt bigint_pow(BigInt base, std::uint64_t exp) {
    BigInt result = 1;
    while (exp > 0) {
        if (exp & 1) result *= base;
        base *= base;
        exp >>= 1;
    }
    return result;
}

/// Upper bound on the node count of a minimal graph over a non-degenerate
/// signature: 2mr * min{r^r, k^(2r-2)} with m = |labels|, r = |D|/2 and
/// k = max |D_a|. Signatures outside the hypotheses (fewer than two
/// directions, or a label with no directions) fall back to the one-node
/// bound 1.
inline BigInt node_count_bound(const Signature& sig) {
    if (sig.directions.size() < 2) return 1;
    std::size_t k = 0;
    for (const auto& a : sig.labels) {
        if (sig.dirs(a).empty()) return 1;
        k = std::max(k, sig.dirs(a).size());
    }
    if (sig.labels.empty()) return 1;
    const std::uint64_t m = sig.labels.size();
    const std::uint64_t r = sig.directions.size() / 2;
    BigInt by_r = bigint_pow(BigInt(r), r);
    BigInt by_k = bigint_pow(BigInt(k), 2 * r - 2);
    return BigInt(2) * m * r * std::min(by_r, by_k);
}

enum class SearchStatus { found, exhausted, resource_limit };

struct SolverLimits {
    /// Maximum number of distinct search states before giving up with a
    /// resource-limit report.
    std::size_t max_states = 1u << 21;
};

struct BalanceSearchResult {
    SearchStatus status = SearchStatus::exhausted;
    std::optional<BalancedVector> vector;
    std::size_t states_explored = 0;
};

namespace detail {

/// Completeness cutoff for the balanced-vector search, computed from the
/// number of proper direction pairs and the distinct nonzero contribution
/// vectors of non-initial labels. Whenever any balanced vector exists, one
/// exists with total count within this cutoff.
inline BigInt balance_search_bound(const Signature& sig) {
    const auto pairing = direction_pairing(sig);
    const std::uint64_t n = pairing.pairs.size();
    if (n == 0) return 1;
    std::set<std::vector<int>> distinct;
    std::size_t max_nonzero = 0;
    for (const auto& a : sig.labels) {
        if (sig.is_initial(a)) continue;
        auto v = contribution_vector(sig, a, pairing).entries;
        std::size_t nonzero = 0;
        for (int e : v)
            if (e != 0) nonzero++;
        if (nonzero == 0) continue;
        if (distinct.insert(v).second)
            max_nonzero = std::max(max_nonzero, nonzero);
    }
    if (distinct.empty()) return 1;
    const std::uint64_t ell = distinct.size();
    BigInt by_n = bigint_pow(BigInt(n), n);
    BigInt by_k = bigint_pow(BigInt(max_nonzero), 2 * n - 2);
    return BigInt(1) + BigInt(2) * ell * n * std::min(by_n, by_k);
}

struct CountVectorHash {
    std::size_t operator()(const std::vector<std::uint32_t>& v) const {
        std::size_t h = 0xcbf29ce484222325ull;
        for (auto x : v) {
            h ^= x;
            h *= 0x100000001b3ull;
        }
        return h;
    }
};

} // namespace detail

/// Finds a balanced vector of minimum total count (ties broken by the
/// lexicographically least counts in label order), or reports that none
/// exists. The search grows candidate count vectors one node at a time,
/// extending only along labels whose contribution decreases the squared
/// residual, and cuts off at the completeness bound.
inline BalanceSearchResult find_balanced_vector(const Signature& sig, const SolverLimits& limits = {}) {
    BalanceSearchResult result;

    const auto pairing = direction_pairing(sig);
    const std::size_t n = pairing.pairs.size();
    const std::size_t m = sig.labels.size();

    // Column per label: contribution entries plus one extra coordinate that
    // counts initial-label uses. The start state owes one initial node.
    std::vector<std::vector<std::pair<std::size_t, int>>> sparse_cols(m);
    std::vector<bool> initial(m, false);
    for (std::size_t j = 0; j < m; ++j) {
        auto entries = contribution_vector(sig, sig.labels[j], pairing).entries;
        for (std::size_t i = 0; i < n; ++i)
            if (entries[i] != 0) sparse_cols[j].emplace_back(i, entries[i]);
        if (sig.is_initial(sig.labels[j])) {
            initial[j] = true;
            sparse_cols[j].emplace_back(n, 1);
        }
    }

    const BigInt depth_cutoff = detail::balance_search_bound(sig);

    struct State {
        std::vector<std::uint32_t> counts;
        std::vector<std::int64_t> residual;
        bool initial_used;
    };

    State start;
    start.counts.assign(m, 0);
    start.residual.assign(n + 1, 0);
    start.residual[n] = -1;
    start.initial_used = false;

    std::vector<State> level{start};
    std::unordered_set<std::vector<std::uint32_t>, detail::CountVectorHash> seen;
    seen.insert(start.counts);
    result.states_explored = 1;

    for (BigInt depth = 1; depth <= depth_cutoff && !level.empty(); ++depth) {
        std::vector<State> next;
        std::vector<const State*> solutions;
        for (const auto& state : level) {
            for (std::size_t j = 0; j < m; ++j) {
                if (initial[j] && state.initial_used) continue;
                std::int64_t dot = 0;
                for (const auto& [coord, value] : sparse_cols[j])
                    dot += state.residual[coord] * value;
                if (dot >= 0) continue;

                State child = state;
                child.counts[j] += 1;
                for (const auto& [coord, value] : sparse_cols[j])
                    child.residual[coord] += value;
                if (initial[j]) child.initial_used = true;
                if (!seen.insert(child.counts).second) continue;
                if (++result.states_explored > limits.max_states) {
                    result.status = SearchStatus::resource_limit;
                    return result;
                }
                next.push_back(std::move(child));
            }
        }
        for (const auto& state : next) {
            bool zero = true;
            for (auto r : state.residual)
                if (r != 0) { zero = false; break; }
            if (zero) solutions.push_back(&state);
        }
        if (!solutions.empty()) {
            const State* best = solutions.front();
            for (const State* s : solutions)
                if (s->counts < best->counts) best = s;
            BalancedVector vec;
            for (std::size_t j = 0; j < m; ++j)
                vec.counts[sig.labels[j]] = best->counts[j];
            result.status = SearchStatus::found;
            result.vector = std::move(vec);
            return result;
        }
        level = std::move(next);
    }

    result.status = SearchStatus::exhausted;
    return result;
}

/// Realizes a balanced vector as a concrete graph: allocate the nodes label
/// by label, give every self-opposite direction a loop, and for each proper
/// pair link the demand lists in ascending node order.
inline Graph build_graph(const Signature& sig, const BalancedVector& vector) {
    if (!is_balanced(sig, vector.counts))
        throw precondition_error("build_graph: vector is not balanced");

    Graph g;
    std::size_t next_id = 1;
    for (const auto& a : sig.labels) {
        auto it = vector.counts.find(a);
        const std::uint64_t x = it == vector.counts.end() ? 0 : it->second;
        for (std::uint64_t i = 0; i < x; ++i) {
            std::string id = std::to_string(next_id++);
            g.nodes.push_back(id);
            g.labeling[id] = a;
            g.edges[id] = {};
            if (sig.is_initial(a)) g.initial_node = id;
        }
    }

    std::map<std::string, std::vector<std::string>> demand;
    for (const auto& v : g.nodes)
        for (const auto& d : sig.dirs(g.labeling.at(v)))
            demand[d].push_back(v);

    const auto pairing = direction_pairing(sig);
    for (const auto& d : pairing.self_opposite)
        for (const auto& v : demand[d])
            g.edges[v][d] = v;
    for (const auto& [d, od] : pairing.pairs) {
        const auto& fwd = demand[d];
        const auto& bwd = demand[od];
        for (std::size_t i = 0; i < fwd.size(); ++i) {
            g.edges[fwd[i]][d] = bwd[i];
            g.edges[bwd[i]][od] = fwd[i];
        }
    }
    return g;
}

enum class Emptiness { nonempty, empty, resource_limit };

struct SignatureVerdict {
    Emptiness verdict = Emptiness::empty;
    std::optional<BalancedVector> vector;
    std::optional<Graph> witness;
};

/// Decides whether any graph over the signature exists; on the positive side
/// the witness realizes a minimal balanced vector.
inline SignatureVerdict signature_nonempty(const Signature& sig, const SolverLimits& limits = {}) {
    SignatureVerdict verdict;
    auto search = find_balanced_vector(sig, limits);
    switch (search.status) {
    case SearchStatus::resource_limit:
        verdict.verdict = Emptiness::resource_limit;
        return verdict;
    case SearchStatus::exhausted:
        verdict.verdict = Emptiness::empty;
        return verdict;
    case SearchStatus::found:
        break;
    }
    verdict.verdict = Emptiness::nonempty;
    verdict.vector = search.vector;
    verdict.witness = build_graph(sig, *search.vector);
    return verdict;
}

} // namespace graphsig
