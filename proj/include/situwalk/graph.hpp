#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "situwalk/errors.hpp"
#include "situwalk/text.hpp"

namespace situwalk {

/// Undirected weighted graph on dense node ids 0..n-1. No self-loops; adding
/// an existing edge accumulates weight rather than creating a parallel edge.
class SimpleGraph {
public:
    using Node = std::size_t;

    struct Edge {
        Node u, v;
        double weight;
    };

    SimpleGraph() = default;
    explicit SimpleGraph(std::size_t n) : adjacency_(n) {}

    std::size_t node_count() const noexcept { return adjacency_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }

    void add_edge(Node u, Node v, double weight = 1.0) {
        if (u >= node_count() || v >= node_count()) throw DomainError("edge endpoint out of range");
        if (u == v) throw DomainError("self-loops are not allowed");
        if (!(weight > 0)) throw DomainError("edge weight must be positive");
        if (u > v) std::swap(u, v);
        auto it = edge_index_.find({u, v});
        if (it != edge_index_.end()) {
            edges_[it->second].weight += weight;
        } else {
            edge_index_[{u, v}] = edges_.size();
            edges_.push_back({u, v, weight});
        }
        rebuild_needed_ = true;
    }

    bool has_edge(Node u, Node v) const {
        if (u > v) std::swap(u, v);
        return edge_index_.count({u, v}) > 0;
    }

    const std::vector<Edge>& edges() const noexcept { return edges_; }

    const std::vector<std::vector<std::pair<Node, double>>>& adjacency() const {
        if (rebuild_needed_) {
            for (auto& a : adjacency_) a.clear();
            for (const auto& e : edges_) {
                adjacency_[e.u].push_back({e.v, e.weight});
                adjacency_[e.v].push_back({e.u, e.weight});
            }
            for (auto& a : adjacency_) std::sort(a.begin(), a.end());
            rebuild_needed_ = false;
        }
        return adjacency_;
    }

    double degree(Node u) const {
        double d = 0;
        for (const auto& [v, w] : adjacency()[u]) d += w;
        return d;
    }

    double total_weight() const {
        double m = 0;
        for (const auto& e : edges_) m += e.weight;
        return m;
    }

    /// Subgraph induced on `nodes` (given in increasing order); returns the
    /// graph plus the mapping from new ids to original ids.
    std::pair<SimpleGraph, std::vector<Node>> induced(const std::vector<Node>& nodes) const {
        std::map<Node, Node> to_new;
        for (std::size_t i = 0; i < nodes.size(); ++i) to_new[nodes[i]] = i;
        SimpleGraph sub(nodes.size());
        for (const auto& e : edges_) {
            auto iu = to_new.find(e.u), iv = to_new.find(e.v);
            if (iu != to_new.end() && iv != to_new.end())
                sub.add_edge(iu->second, iv->second, e.weight);
        }
        return {std::move(sub), nodes};
    }

private:
    mutable std::vector<std::vector<std::pair<Node, double>>> adjacency_;
    std::vector<Edge> edges_;
    std::map<std::pair<Node, Node>, std::size_t> edge_index_;
    mutable bool rebuild_needed_ = false;
};

/// Disjoint blocks covering 0..n-1, ordered by smallest member.
struct Partition {
    std::vector<std::vector<SimpleGraph::Node>> blocks;

    std::size_t block_of(SimpleGraph::Node u) const {
        for (std::size_t b = 0; b < blocks.size(); ++b)
            for (auto v : blocks[b])
                if (v == u) return b;
        throw DomainError("node not covered by partition");
    }

    void canonicalize() {
        for (auto& b : blocks) std::sort(b.begin(), b.end());
        std::sort(blocks.begin(), blocks.end(),
                  [](const auto& a, const auto& b) { return a.front() < b.front(); });
    }
};

/// Edge-list file: TSV `u  v  [weight]` with nonnegative integer node ids;
/// the graph spans 0..max id.
inline SimpleGraph load_edge_list(const std::string& path) {
    struct Row {
        SimpleGraph::Node u, v;
        double w;
    };
    std::vector<Row> parsed;
    std::size_t max_node = 0;
    bool any = false;
    for (const auto& row : read_tsv(path)) {
        if (row.fields.size() != 2 && row.fields.size() != 3)
            throw ParseError("expected `u v [weight]`", row.line);
        try {
            const auto u = static_cast<SimpleGraph::Node>(std::stoull(row.fields[0]));
            const auto v = static_cast<SimpleGraph::Node>(std::stoull(row.fields[1]));
            const double w = row.fields.size() == 3 ? std::stod(row.fields[2]) : 1.0;
            parsed.push_back({u, v, w});
            max_node = std::max({max_node, u, v});
            any = true;
        } catch (const std::exception&) {
            throw ParseError("bad edge fields", row.line);
        }
    }
    SimpleGraph g(any ? max_node + 1 : 0);
    for (const auto& r : parsed) g.add_edge(r.u, r.v, r.w);
    return g;
}

inline void write_partition(std::ostream& out, const Partition& p) {
    std::map<SimpleGraph::Node, std::size_t> block_of;
    for (std::size_t b = 0; b < p.blocks.size(); ++b)
        for (const auto node : p.blocks[b]) block_of[node] = b;
    for (const auto& [node, b] : block_of) out << node << '\t' << b << '\n';
}

inline Partition connected_components(const SimpleGraph& g) {
    const std::size_t n = g.node_count();
    std::vector<int> comp(n, -1);
    Partition p;
    for (std::size_t start = 0; start < n; ++start) {
        if (comp[start] != -1) continue;
        std::vector<SimpleGraph::Node> block;
        std::vector<SimpleGraph::Node> stack{start};
        comp[start] = static_cast<int>(p.blocks.size());
        while (!stack.empty()) {
            auto u = stack.back();
            stack.pop_back();
            block.push_back(u);
            for (const auto& [v, w] : g.adjacency()[u]) {
                if (comp[v] == -1) {
                    comp[v] = comp[u];
                    stack.push_back(v);
                }
            }
        }
        std::sort(block.begin(), block.end());
        p.blocks.push_back(std::move(block));
    }
    return p; // blocks discovered from increasing start node, so already ordered
}

} // namespace situwalk
