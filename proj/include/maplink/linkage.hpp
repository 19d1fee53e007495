#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <type_traits>
#include <unordered_map>
#include <utility>
#include <vector>

#include "maplink/cost_model.hpp"
#include "maplink/errors.hpp"

namespace maplink {

struct GraphEdge {
    int a{0};  // smaller label id
    int b{0};  // larger label id
    double cost{0.0};
};

/// Sparse undirected graph over label ids. MST construction yields exactly
/// n-1 edges, connected and acyclic; the threshold baseline can produce
/// cycles and isolated vertices.
struct LinkageGraph {
    std::vector<int> label_ids;    // sorted ascending
    std::vector<GraphEdge> edges;  // sorted by (a, b), a < b

    bool has_edge(int a, int b) const {
        if (a > b) std::swap(a, b);
        auto it = std::lower_bound(edges.begin(), edges.end(), std::pair{a, b},
                                   [](const GraphEdge& e, std::pair<int, int> k) {
                                       return e.a != k.first ? e.a < k.first : e.b < k.second;
                                   });
        return it != edges.end() && it->a == a && it->b == b;
    }

    double total_cost() const {
        double sum = 0.0;
        for (const GraphEdge& e : edges) sum += e.cost;
        return sum;
    }

    /// Neighbor lists keyed by label id, each sorted ascending.
    std::unordered_map<int, std::vector<int>> adjacency() const {
        std::unordered_map<int, std::vector<int>> adj;
        adj.reserve(label_ids.size());
        for (int id : label_ids) adj[id];
        for (const GraphEdge& e : edges) {
            adj[e.a].push_back(e.b);
            adj[e.b].push_back(e.a);
        }
        for (auto& [id, nbrs] : adj) std::sort(nbrs.begin(), nbrs.end());
        return adj;
    }
};

namespace detail {

inline std::vector<std::size_t> order_by_id(const std::vector<TextLabel>& labels) {
    std::vector<std::size_t> order(labels.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return labels[x].id < labels[y].id; });
    for (std::size_t i = 1; i < order.size(); ++i) {
        if (labels[order[i]].id == labels[order[i - 1]].id) {
            throw InputError("duplicate label id " + std::to_string(labels[order[i]].id));
        }
    }
    return order;
}

inline std::pair<int, int> edge_key(int id_u, int id_v) {
    return id_u < id_v ? std::pair{id_u, id_v} : std::pair{id_v, id_u};
}

}  // namespace detail

/// Prim's algorithm over the complete pairwise graph, dense O(n^2) with
/// costs evaluated lazily (each unordered pair exactly once, no n^2 matrix).
/// Equal costs are broken toward the smaller (min id, max id) edge key, so
/// the tree is reproducible across runs and platforms.
template <typename PairCost>
LinkageGraph build_mst_indexed(const std::vector<TextLabel>& labels, PairCost&& cost) {
    if (labels.empty()) throw InputError("build_mst: empty label list");
    const std::size_t n = labels.size();
    std::vector<std::size_t> order = detail::order_by_id(labels);

    LinkageGraph g;
    g.label_ids.reserve(n);
    for (std::size_t i : order) g.label_ids.push_back(labels[i].id);
    if (n == 1) return g;

    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<char> in_tree(n, 0);
    std::vector<double> best_cost(n, kInf);
    std::vector<std::size_t> best_from(n, 0);

    std::size_t start = order[0];  // smallest label id
    in_tree[start] = 1;
    for (std::size_t v : order) {
        if (v == start) continue;
        best_cost[v] = cost(start, v);
        best_from[v] = start;
    }

    g.edges.reserve(n - 1);
    for (std::size_t added = 1; added < n; ++added) {
        std::size_t pick = n;
        double pick_cost = kInf;
        std::pair<int, int> pick_key{0, 0};
        for (std::size_t v : order) {
            if (in_tree[v]) continue;
            auto key = detail::edge_key(labels[best_from[v]].id, labels[v].id);
            if (best_cost[v] < pick_cost || (best_cost[v] == pick_cost && key < pick_key)) {
                pick = v;
                pick_cost = best_cost[v];
                pick_key = key;
            }
        }
        if (pick == n) throw InputError("build_mst: non-finite pairwise cost");
        auto [a, b] = detail::edge_key(labels[best_from[pick]].id, labels[pick].id);
        g.edges.push_back(GraphEdge{a, b, pick_cost});
        in_tree[pick] = 1;
        for (std::size_t v : order) {
            if (in_tree[v]) continue;
            double c = cost(pick, v);
            auto key = detail::edge_key(labels[pick].id, labels[v].id);
            auto cur = detail::edge_key(labels[best_from[v]].id, labels[v].id);
            if (c < best_cost[v] || (c == best_cost[v] && key < cur)) {
                best_cost[v] = c;
                best_from[v] = pick;
            }
        }
    }

    std::sort(g.edges.begin(), g.edges.end(),
              [](const GraphEdge& x, const GraphEdge& y) { return x.a != y.a ? x.a < y.a : x.b < y.b; });
    return g;
}

/// MST under an arbitrary label-pair cost function.
template <typename PairCost>
    requires std::is_invocable_r_v<double, PairCost, const TextLabel&, const TextLabel&>
LinkageGraph build_mst(const std::vector<TextLabel>& labels, PairCost&& cost) {
    return build_mst_indexed(labels, [&](std::size_t i, std::size_t j) { return cost(labels[i], labels[j]); });
}

/// MST under the product edge cost.
inline LinkageGraph build_mst_penalized(const std::vector<TextLabel>& labels) {
    PairFeatureContext ctx(labels);
    return build_mst_indexed(labels, [&](std::size_t i, std::size_t j) { return ctx.penalized_cost(i, j); });
}

/// MST under the Mahalanobis cost for a learned metric.
inline LinkageGraph build_mst_mahalanobis(const std::vector<TextLabel>& labels, const MetricMatrix& m) {
    PairFeatureContext ctx(labels);
    return build_mst_indexed(labels, [&](std::size_t i, std::size_t j) { return ctx.mahalanobis(i, j, m); });
}

/// Character-distance-threshold baseline: link every pair whose box gap is
/// within two mean character widths, where a label's character width is its
/// box width divided by its word length (in codepoints).
inline LinkageGraph build_char_threshold_graph(const std::vector<TextLabel>& labels) {
    if (labels.empty()) throw InputError("build_char_threshold_graph: empty label list");
    const std::size_t n = labels.size();
    std::vector<std::size_t> order = detail::order_by_id(labels);

    std::vector<double> char_width(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t len = text::codepoint_count(labels[i].text);
        char_width[i] = labels[i].box.width / static_cast<double>(len);
    }

    PairFeatureContext ctx(labels);
    LinkageGraph g;
    g.label_ids.reserve(n);
    for (std::size_t i : order) g.label_ids.push_back(labels[i].id);
    for (std::size_t oi = 0; oi < n; ++oi) {
        for (std::size_t oj = oi + 1; oj < n; ++oj) {
            std::size_t i = order[oi], j = order[oj];
            double d = ctx.distance(i, j);
            double threshold = char_width[i] + char_width[j];  // 2 * mean(cw_i, cw_j)
            if (d <= threshold) {
                g.edges.push_back(GraphEdge{labels[i].id, labels[j].id, d});
            }
        }
    }
    std::sort(g.edges.begin(), g.edges.end(),
              [](const GraphEdge& x, const GraphEdge& y) { return x.a != y.a ? x.a < y.a : x.b < y.b; });
    return g;
}

struct DegreeStats {
    int min_degree{0};
    int max_degree{0};
    double mean_degree{0.0};
    std::size_t edge_count{0};
};

inline DegreeStats graph_degree_stats(const LinkageGraph& g) {
    DegreeStats s;
    s.edge_count = g.edges.size();
    if (g.label_ids.empty()) return s;
    std::unordered_map<int, int> degree;
    degree.reserve(g.label_ids.size());
    for (int id : g.label_ids) degree[id] = 0;
    for (const GraphEdge& e : g.edges) {
        ++degree[e.a];
        ++degree[e.b];
    }
    s.min_degree = std::numeric_limits<int>::max();
    s.max_degree = 0;
    long long total = 0;
    for (int id : g.label_ids) {
        int d = degree[id];
        s.min_degree = std::min(s.min_degree, d);
        s.max_degree = std::max(s.max_degree, d);
        total += d;
    }
    s.mean_degree = static_cast<double>(total) / static_cast<double>(g.label_ids.size());
    return s;
}

}  // namespace maplink
