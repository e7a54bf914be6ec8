#pragma once

#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <numeric>
#include <vector>

#include "situwalk/errors.hpp"
#include "situwalk/graph.hpp"

namespace situwalk {

/// Row-stochastic t-step transition probabilities of the walk that moves to a
/// uniformly random (weight-proportional) neighbor, plus node degrees.
struct TransitionModel {
    std::size_t n = 0;
    int t = 1;
    std::vector<double> degrees;
    std::vector<double> pt; // row-major n*n

    const double* row(std::size_t i) const { return pt.data() + i * n; }
};

/// How P^t is computed. Dense multiplies full n*n matrices; Sparse pushes
/// each unit row through the adjacency lists t times (O(n*m*t)), which wins
/// on large sparse graphs. Both produce the same model.
enum class WalkBackend { Dense, Sparse };

inline TransitionModel transition_matrix(const SimpleGraph& g, int t = 1,
                                         WalkBackend backend = WalkBackend::Dense) {
    if (t < 1) throw DomainError("walk length must be >= 1");
    const std::size_t n = g.node_count();
    TransitionModel tm;
    tm.n = n;
    tm.t = t;
    tm.degrees.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        tm.degrees[i] = g.degree(i);
        if (!(tm.degrees[i] > 0))
            throw DomainError("isolated node " + std::to_string(i) +
                              " has no transition probabilities");
    }

    if (backend == WalkBackend::Sparse) {
        tm.pt.assign(n * n, 0.0);
        std::vector<double> row(n), next(n);
        for (std::size_t i = 0; i < n; ++i) {
            std::fill(row.begin(), row.end(), 0.0);
            row[i] = 1.0;
            for (int step = 0; step < t; ++step) {
                std::fill(next.begin(), next.end(), 0.0);
                for (std::size_t k = 0; k < n; ++k) {
                    const double mass = row[k];
                    if (mass == 0.0) continue;
                    for (const auto& [j, w] : g.adjacency()[k])
                        next[j] += mass * w / tm.degrees[k];
                }
                row.swap(next);
            }
            std::copy(row.begin(), row.end(), tm.pt.begin() + i * n);
        }
        return tm;
    }

    std::vector<double> p(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (const auto& [j, w] : g.adjacency()[i]) p[i * n + j] = w / tm.degrees[i];

    // P^t by iterated multiplication; t stays small (default 4).
    std::vector<double> acc = p, tmp(n * n);
    for (int step = 1; step < t; ++step) {
        std::fill(tmp.begin(), tmp.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) {
                const double a = acc[i * n + k];
                if (a == 0.0) continue;
                const double* prow = p.data() + k * n;
                double* trow = tmp.data() + i * n;
                for (std::size_t j = 0; j < n; ++j) trow[j] += a * prow[j];
            }
        acc.swap(tmp);
    }
    tm.pt = std::move(acc);
    return tm;
}

/// Random-walk distance between nodes: the degree-weighted L2 gap between
/// their t-step probability profiles.
inline double walk_distance(const TransitionModel& tm, std::size_t i, std::size_t j) {
    if (i >= tm.n || j >= tm.n) throw DomainError("node out of range");
    const double *ri = tm.row(i), *rj = tm.row(j);
    double sum = 0.0;
    for (std::size_t k = 0; k < tm.n; ++k) {
        const double d = ri[k] - rj[k];
        sum += d * d / tm.degrees[k];
    }
    return std::sqrt(sum);
}

/// Agglomerative merge history. Community ids: leaves are 0..n-1, the merge
/// at step s creates id n+s. Level k is the partition after k merges.
struct Dendrogram {
    struct Merge {
        std::size_t left, right;
        double delta_sigma;
    };

    std::size_t n = 0;
    std::vector<Merge> merges;
    std::vector<double> modularity_by_level; // size n (levels 0..n-1)

    std::size_t levels() const { return modularity_by_level.size(); }

    Partition partition_at(std::size_t level) const {
        if (level >= levels()) throw DomainError("dendrogram level out of range");
        std::vector<std::size_t> parent(n + level);
        std::iota(parent.begin(), parent.end(), 0);
        std::vector<std::vector<SimpleGraph::Node>> members(n + level);
        for (std::size_t i = 0; i < n; ++i) members[i] = {i};
        for (std::size_t s = 0; s < level; ++s) {
            const std::size_t id = n + s;
            auto& into = members[id];
            into = std::move(members[merges[s].left]);
            auto& from = members[merges[s].right];
            into.insert(into.end(), from.begin(), from.end());
            from.clear();
            members[merges[s].left].clear();
        }
        Partition p;
        for (auto& m : members)
            if (!m.empty()) p.blocks.push_back(std::move(m));
        p.canonicalize();
        return p;
    }
};

/// Newman modularity of a partition: intra-community edge fraction minus the
/// degree-based expectation. Zero for an edgeless graph.
inline double modularity(const SimpleGraph& g, const Partition& p) {
    const std::size_t n = g.node_count();
    std::vector<std::size_t> block(n, SIZE_MAX);
    std::size_t covered = 0;
    for (std::size_t b = 0; b < p.blocks.size(); ++b)
        for (auto v : p.blocks[b]) {
            if (v >= n || block[v] != SIZE_MAX) throw DomainError("partition does not cover graph");
            block[v] = b;
            ++covered;
        }
    if (covered != n) throw DomainError("partition does not cover graph");
    const double m = g.total_weight();
    if (m == 0.0) return 0.0;
    std::vector<double> internal(p.blocks.size(), 0.0), degree(p.blocks.size(), 0.0);
    for (const auto& e : g.edges()) {
        degree[block[e.u]] += e.weight;
        degree[block[e.v]] += e.weight;
        if (block[e.u] == block[e.v]) internal[block[e.u]] += e.weight;
    }
    double q = 0.0;
    for (std::size_t b = 0; b < p.blocks.size(); ++b) {
        const double a = degree[b] / (2.0 * m);
        q += internal[b] / m - a * a;
    }
    return q;
}

/// Agglomerative random-walk clustering of a connected graph: starting from
/// singletons, repeatedly merge the adjacent pair with the smallest
///   Δσ = (1/n) · |C1||C2|/(|C1|+|C2|) · r²(C1,C2),
/// where community profiles are the means of their members' t-step rows.
/// Ties pick the pair with the smallest (min node, min node) ids. Modularity
/// is recorded at every level.
inline Dendrogram walktrap(const SimpleGraph& g, int t = 4,
                           WalkBackend backend = WalkBackend::Dense) {
    const std::size_t n = g.node_count();
    if (n == 0) throw DomainError("walktrap on an empty graph");
    if (connected_components(g).blocks.size() != 1)
        throw DomainError("walktrap requires a connected graph (run per component)");

    Dendrogram dendro;
    dendro.n = n;
    if (n == 1) {
        dendro.modularity_by_level = {0.0};
        return dendro;
    }

    const TransitionModel tm = transition_matrix(g, t, backend);
    const double m = g.total_weight();

    struct Community {
        bool alive = false;
        std::size_t size = 0;
        std::size_t min_node = 0;
        double degree_sum = 0.0;
        double internal = 0.0;
        std::vector<double> profile;
    };
    std::vector<Community> comm(2 * n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        comm[i] = {true, 1, i, tm.degrees[i], 0.0,
                   std::vector<double>(tm.row(i), tm.row(i) + n)};
    }

    auto r2 = [&](const Community& a, const Community& b) {
        double sum = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double d = a.profile[k] - b.profile[k];
            sum += d * d / tm.degrees[k];
        }
        return sum;
    };
    auto delta_sigma = [&](const Community& a, const Community& b) {
        const double prod = static_cast<double>(a.size) * static_cast<double>(b.size);
        return prod / static_cast<double>(a.size + b.size) / static_cast<double>(n) * r2(a, b);
    };

    struct PairInfo {
        double weight = 0.0;
        double delta = 0.0;
    };
    std::map<std::pair<std::size_t, std::size_t>, PairInfo> pairs;
    for (const auto& e : g.edges()) {
        auto key = std::minmax(e.u, e.v);
        auto [it, fresh] = pairs.try_emplace({key.first, key.second});
        it->second.weight += e.weight;
        if (fresh) it->second.delta = delta_sigma(comm[e.u], comm[e.v]);
    }

    auto level_modularity = [&]() {
        double q = 0.0;
        for (const auto& c : comm) {
            if (!c.alive) continue;
            const double a = c.degree_sum / (2.0 * m);
            q += c.internal / m - a * a;
        }
        return q;
    };

    dendro.modularity_by_level.push_back(level_modularity());

    for (std::size_t step = 0; step < n - 1; ++step) {
        // smallest Δσ, ties by the communities' smallest node ids
        auto best = pairs.end();
        for (auto it = pairs.begin(); it != pairs.end(); ++it) {
            if (best == pairs.end()) {
                best = it;
                continue;
            }
            const auto rank = [&](const decltype(it)& p) {
                const auto [x, y] = p->first;
                auto lo = std::min(comm[x].min_node, comm[y].min_node);
                auto hi = std::max(comm[x].min_node, comm[y].min_node);
                return std::tuple(p->second.delta, lo, hi);
            };
            if (rank(it) < rank(best)) best = it;
        }
        if (best == pairs.end()) throw DomainError("graph disconnected during merge");

        const auto [a, b] = best->first;
        const double between = best->second.weight;
        const std::size_t id = n + step;
        Community& na = comm[a];
        Community& nb = comm[b];
        Community merged;
        merged.alive = true;
        merged.size = na.size + nb.size;
        merged.min_node = std::min(na.min_node, nb.min_node);
        merged.degree_sum = na.degree_sum + nb.degree_sum;
        merged.internal = na.internal + nb.internal + between;
        merged.profile.resize(n);
        const double wa = static_cast<double>(na.size) / static_cast<double>(merged.size);
        const double wb = static_cast<double>(nb.size) / static_cast<double>(merged.size);
        for (std::size_t k = 0; k < n; ++k)
            merged.profile[k] = wa * na.profile[k] + wb * nb.profile[k];

        dendro.merges.push_back({a, b, best->second.delta});
        na.alive = nb.alive = false;
        na.profile.clear();
        nb.profile.clear();
        comm[id] = std::move(merged);

        // contract: neighbors of a or b become neighbors of the merged id
        std::map<std::size_t, double> neighbor_weight;
        for (auto it = pairs.begin(); it != pairs.end();) {
            const auto [x, y] = it->first;
            if (x == a || x == b || y == a || y == b) {
                const std::size_t other = (x == a || x == b) ? y : x;
                if (other != a && other != b) neighbor_weight[other] += it->second.weight;
                it = pairs.erase(it);
            } else {
                ++it;
            }
        }
        for (const auto& [other, w] : neighbor_weight) {
            PairInfo info{w, delta_sigma(comm[id], comm[other])};
            pairs.emplace(std::minmax(other, id), info);
        }

        dendro.modularity_by_level.push_back(level_modularity());
    }
    return dendro;
}

/// The dendrogram level with maximum modularity; ties go to the coarser
/// level.
inline Partition best_partition(const Dendrogram& d) {
    if (d.levels() == 0) throw DomainError("empty dendrogram");
    std::size_t best = 0;
    for (std::size_t level = 1; level < d.levels(); ++level)
        if (d.modularity_by_level[level] >= d.modularity_by_level[best]) best = level;
    return d.partition_at(best);
}

/// Brandes' edge betweenness over unweighted shortest paths, counted once
/// per unordered source-target pair. `Real` selects double (fast path) or an
/// exact type such as Rational.
template <typename Real>
std::map<std::pair<SimpleGraph::Node, SimpleGraph::Node>, Real> edge_betweenness_as(
    const SimpleGraph& g) {
    using Node = SimpleGraph::Node;
    const std::size_t n = g.node_count();
    std::map<std::pair<Node, Node>, Real> score;
    for (const auto& e : g.edges()) score[std::minmax(e.u, e.v)] = Real(0);

    std::vector<std::int64_t> sigma(n);
    std::vector<int> dist(n);
    std::vector<Real> delta(n);
    std::vector<std::vector<Node>> preds(n);
    std::vector<Node> order;
    order.reserve(n);

    for (Node s = 0; s < n; ++s) {
        std::fill(sigma.begin(), sigma.end(), 0);
        std::fill(dist.begin(), dist.end(), -1);
        for (auto& p : preds) p.clear();
        order.clear();
        sigma[s] = 1;
        dist[s] = 0;
        std::deque<Node> queue{s};
        while (!queue.empty()) {
            const Node v = queue.front();
            queue.pop_front();
            order.push_back(v);
            for (const auto& [w, weight] : g.adjacency()[v]) {
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
                if (dist[w] == dist[v] + 1) {
                    sigma[w] += sigma[v];
                    preds[w].push_back(v);
                }
            }
        }
        std::fill(delta.begin(), delta.end(), Real(0));
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            const Node w = *it;
            for (const Node v : preds[w]) {
                const Real share =
                    Real(sigma[v]) / Real(sigma[w]) * (Real(1) + delta[w]);
                score[std::minmax(v, w)] += share;
                delta[v] += share;
            }
        }
    }
    for (auto& [edge, value] : score) value = value / Real(2);
    return score;
}

inline std::map<std::pair<SimpleGraph::Node, SimpleGraph::Node>, double> edge_betweenness(
    const SimpleGraph& g) {
    return edge_betweenness_as<double>(g);
}

/// Divisive clustering: repeatedly remove the highest-betweenness edge
/// (ties: lexicographically first edge) and keep the component structure
/// with the highest modularity seen, measured on the original graph.
/// Ties keep the earliest (coarsest) structure.
inline Partition girvan_newman(const SimpleGraph& g) {
    const std::size_t n = g.node_count();
    SimpleGraph work(n);
    for (const auto& e : g.edges()) work.add_edge(e.u, e.v, e.weight);

    Partition best = connected_components(work);
    double best_q = modularity(g, best);

    while (work.edge_count() > 0) {
        const auto scores = edge_betweenness(work);
        auto top = scores.begin();
        for (auto it = scores.begin(); it != scores.end(); ++it)
            if (it->second > top->second) top = it;

        SimpleGraph next(n);
        for (const auto& e : work.edges()) {
            const std::pair<SimpleGraph::Node, SimpleGraph::Node> key =
                std::minmax(e.u, e.v);
            if (key != top->first) next.add_edge(e.u, e.v, e.weight);
        }
        work = std::move(next);

        Partition p = connected_components(work);
        const double q = modularity(g, p);
        if (q > best_q) {
            best_q = q;
            best = std::move(p);
        }
    }
    return best;
}

/// Whole-graph community detection: Walktrap per connected component,
/// isolated nodes kept as singleton communities.
inline Partition detect_walktrap(const SimpleGraph& g, int t = 4,
                                 WalkBackend backend = WalkBackend::Dense) {
    Partition out;
    for (const auto& block : connected_components(g).blocks) {
        if (block.size() == 1) {
            out.blocks.push_back(block);
            continue;
        }
        auto [sub, back] = g.induced(block);
        const Partition local = best_partition(walktrap(sub, t, backend));
        for (const auto& lb : local.blocks) {
            std::vector<SimpleGraph::Node> mapped;
            mapped.reserve(lb.size());
            for (auto v : lb) mapped.push_back(back[v]);
            out.blocks.push_back(std::move(mapped));
        }
    }
    out.canonicalize();
    return out;
}

inline Partition detect_girvan_newman(const SimpleGraph& g) {
    Partition p = girvan_newman(g);
    p.canonicalize();
    return p;
}

} // namespace situwalk
