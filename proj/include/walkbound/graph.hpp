#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace walkbound {

using node_id = std::uint32_t;
using edge_id = std::uint32_t;

struct incidence {
    node_id to;
    edge_id edge;
    friend bool operator==(const incidence&, const incidence&) = default;
};

/// Undirected multigraph with dense node and edge ids. Immutable once built.
class graph {
public:
    graph() = default;

    std::size_t n() const { return adj_.size(); }
    std::size_t m() const { return ends_.size(); }

    std::span<const incidence> adj(node_id v) const { return adj_[v]; }
    std::size_t degree(node_id v) const { return adj_[v].size(); }
    std::pair<node_id, node_id> endpoints(edge_id e) const { return ends_[e]; }
    const std::vector<std::pair<node_id, node_id>>& edges() const { return ends_; }

    node_id other(edge_id e, node_id v) const {
        auto [a, b] = ends_[e];
        return a == v ? b : a;
    }

    // Position of edge e inside v's adjacency list, or degree(v) if absent.
    std::size_t slot(node_id v, edge_id e) const {
        const auto& a = adj_[v];
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i].edge == e) return i;
        return a.size();
    }

private:
    friend graph build_graph(std::size_t, const std::vector<std::pair<node_id, node_id>>&);
    std::vector<std::vector<incidence>> adj_;
    std::vector<std::pair<node_id, node_id>> ends_;
};

struct graph_stats {
    std::size_t max_degree = 0;
    std::size_t diameter = 0;
    bool planar_note = false;  // set by generators only, never computed
};

namespace detail {

inline std::vector<std::size_t> bfs(const graph& g, node_id src) {
    constexpr auto unseen = static_cast<std::size_t>(-1);
    std::vector<std::size_t> dist(g.n(), unseen);
    std::deque<node_id> q{src};
    dist[src] = 0;
    while (!q.empty()) {
        node_id v = q.front();
        q.pop_front();
        for (auto [w, e] : g.adj(v)) {
            if (dist[w] != unseen) continue;
            dist[w] = dist[v] + 1;
            q.push_back(w);
        }
    }
    return dist;
}

}  // namespace detail

/// Builds a graph with edge ids in input order. Rejects self-loops,
/// out-of-range endpoints and disconnected results.
inline graph build_graph(std::size_t node_count,
                         const std::vector<std::pair<node_id, node_id>>& edge_list) {
    if (node_count < 1) throw graph_error("graph needs at least one node");
    graph g;
    g.adj_.assign(node_count, {});
    g.ends_.reserve(edge_list.size());
    for (std::size_t i = 0; i < edge_list.size(); ++i) {
        auto [u, v] = edge_list[i];
        if (u >= node_count || v >= node_count)
            throw graph_error("edge " + std::to_string(i) + " has endpoint out of range");
        if (u == v)
            throw graph_error("edge " + std::to_string(i) + " is a self-loop at node " +
                              std::to_string(u));
        auto e = static_cast<edge_id>(i);
        g.ends_.emplace_back(u, v);
        g.adj_[u].push_back({v, e});
        g.adj_[v].push_back({u, e});
    }
    auto dist = detail::bfs(g, 0);
    for (std::size_t v = 0; v < node_count; ++v)
        if (dist[v] == static_cast<std::size_t>(-1))
            throw disconnected_error("graph is disconnected; component containing node " +
                                         std::to_string(v) + " is unreachable from node 0",
                                     static_cast<std::uint32_t>(v));
    return g;
}

inline graph_stats stats(const graph& g) {
    graph_stats s;
    for (node_id v = 0; v < g.n(); ++v) s.max_degree = std::max(s.max_degree, g.degree(v));
    for (node_id v = 0; v < g.n(); ++v) {
        auto dist = detail::bfs(g, v);
        s.diameter = std::max(s.diameter, *std::max_element(dist.begin(), dist.end()));
    }
    return s;
}

}  // namespace walkbound
