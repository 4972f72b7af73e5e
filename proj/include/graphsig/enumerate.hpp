#pragma once

#include "graphsig/solver.hpp"

namespace graphsig {

namespace detail {

inline std::vector<BalancedVector> balanced_vectors_up_to(const Signature& sig, std::size_t max_nodes) {
    std::vector<BalancedVector> found;
    const std::size_t m = sig.labels.size();
    std::vector<std::uint64_t> counts(m, 0);

    // Counts are generated in (total, lexicographic) order.
    std::function<void(std::size_t, std::size_t)> walk = [&](std::size_t j, std::size_t left) {
        if (j == m) {
            if (left != 0) return;
            std::map<std::string, std::uint64_t> map;
            for (std::size_t i = 0; i < m; ++i)
                map[sig.labels[i]] = counts[i];
            if (is_balanced(sig, map)) {
                BalancedVector vec;
                vec.counts = std::move(map);
                found.push_back(std::move(vec));
            }
            return;
        }
        for (std::size_t c = 0; c <= left; ++c) {
            counts[j] = c;
            walk(j + 1, left - c);
        }
        counts[j] = 0;
    };
    for (std::size_t total = 1; total <= max_nodes; ++total)
        walk(0, total);
    return found;
}

} // namespace detail

/// Streams every graph over the signature with at most `max_nodes` nodes,
/// each exactly once under the canonical node naming 1..N (nodes allocated
/// label by label). For every balanced vector, all ways of matching the
/// d-demand list against the (-d)-demand list are produced; self-opposite
/// directions always close into loops. The order is deterministic: vectors
/// by total then lexicographically, matchings in permutation order.
class GraphEnumerator {
public:
    GraphEnumerator(const Signature& sig, std::size_t max_nodes)
        : sig_(sig), vectors_(detail::balanced_vectors_up_to(sig, max_nodes)) {
        if (max_nodes < 1)
            throw precondition_error("enumerate_graphs: max_nodes must be at least 1");
        pairing_ = direction_pairing(sig);
        if (!vectors_.empty()) prepare_vector();
    }

    std::optional<Graph> next() {
        if (vector_index_ >= vectors_.size()) return std::nullopt;
        Graph g = current_graph();
        advance();
        return g;
    }

private:
    void prepare_vector() {
        const auto& vec = vectors_[vector_index_];
        base_ = Graph{};
        std::size_t next_id = 1;
        for (const auto& a : sig_.labels) {
            auto it = vec.counts.find(a);
            const std::uint64_t x = it == vec.counts.end() ? 0 : it->second;
            for (std::uint64_t i = 0; i < x; ++i) {
                std::string id = std::to_string(next_id++);
                base_.nodes.push_back(id);
                base_.labeling[id] = a;
                base_.edges[id] = {};
                if (sig_.is_initial(a)) base_.initial_node = id;
            }
        }
        demand_.clear();
        for (const auto& v : base_.nodes)
            for (const auto& d : sig_.dirs(base_.labeling.at(v)))
                demand_[d].push_back(v);
        perms_.clear();
        for (const auto& [d, od] : pairing_.pairs) {
            std::vector<std::size_t> identity(demand_[d].size());
            for (std::size_t i = 0; i < identity.size(); ++i) identity[i] = i;
            perms_.push_back(std::move(identity));
        }
    }

    Graph current_graph() const {
        Graph g = base_;
        for (const auto& d : pairing_.self_opposite) {
            auto it = demand_.find(d);
            if (it == demand_.end()) continue;
            for (const auto& v : it->second)
                g.edges[v][d] = v;
        }
        for (std::size_t p = 0; p < pairing_.pairs.size(); ++p) {
            const auto& [d, od] = pairing_.pairs[p];
            auto fit = demand_.find(d);
            auto bit = demand_.find(od);
            const auto& fwd = fit == demand_.end() ? empty_ : fit->second;
            const auto& bwd = bit == demand_.end() ? empty_ : bit->second;
            for (std::size_t i = 0; i < fwd.size(); ++i) {
                const auto& target = bwd[perms_[p][i]];
                g.edges[fwd[i]][d] = target;
                g.edges[target][od] = fwd[i];
            }
        }
        return g;
    }

    void advance() {
        for (std::size_t p = perms_.size(); p-- > 0;) {
            if (std::next_permutation(perms_[p].begin(), perms_[p].end())) return;
        }
        ++vector_index_;
        if (vector_index_ < vectors_.size()) prepare_vector();
    }

    const Signature& sig_;
    std::vector<BalancedVector> vectors_;
    DirectionPairing pairing_;
    std::size_t vector_index_ = 0;
    Graph base_;
    std::map<std::string, std::vector<std::string>> demand_;
    std::vector<std::vector<std::size_t>> perms_;
    std::vector<std::string> empty_;
};

inline std::vector<Graph> enumerate_graphs(const Signature& sig, std::size_t max_nodes) {
    GraphEnumerator stream(sig, max_nodes);
    std::vector<Graph> graphs;
    while (auto g = stream.next())
        graphs.push_back(std::move(*g));
    return graphs;
}

/// Number of graphs the enumerator would yield, without materializing them.
inline BigInt enumeration_size(const Signature& sig, std::size_t max_nodes) {
    const auto pairing = direction_pairing(sig);
    BigInt total = 0;
    for (const auto& vec : detail::balanced_vectors_up_to(sig, max_nodes)) {
        BigInt ways = 1;
        for (const auto& [d, od] : pairing.pairs) {
            std::uint64_t size = 0;
            for (const auto& a : sig.labels) {
                const auto& dirs = sig.dirs(a);
                if (std::find(dirs.begin(), dirs.end(), d) != dirs.end()) {
                    auto it = vec.counts.find(a);
                    size += it == vec.counts.end() ? 0 : it->second;
                }
            }
            for (std::uint64_t i = 2; i <= size; ++i)
                ways *= i;
        }
        total += ways;
    }
    return total;
}

} // namespace graphsig
