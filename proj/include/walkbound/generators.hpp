#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "graph.hpp"
#include "walk.hpp"

namespace walkbound {

struct predicted_value {
    std::string formula;
    double value = 0;
};

using priority_lists = std::vector<std::vector<edge_id>>;

struct generated_instance {
    graph g;
    node_id start = 0;
    priority_lists priorities;                       // default bundled schedule
    std::map<policy, priority_lists> policy_priorities;  // per-policy overrides
    std::string family;
    std::vector<std::pair<std::string, std::int64_t>> params;
    std::optional<predicted_value> predicted;
    std::size_t degree_bound = 0;  // 0 means unbounded
    bool planar_dual = false;

    const priority_lists& priorities_for(policy p) const {
        auto it = policy_priorities.find(p);
        return it == policy_priorities.end() ? priorities : it->second;
    }

    tie_breaker tie_breaker_for(policy p) const {
        return tie_breaker::static_priority(g, priorities_for(p));
    }

    graph_stats instance_stats() const {
        auto s = stats(g);
        s.planar_note = planar_dual;
        return s;
    }
};

namespace detail {

struct builder {
    std::size_t n = 0;
    std::vector<std::pair<node_id, node_id>> edges;

    node_id add_node() { return static_cast<node_id>(n++); }
    edge_id add_edge(node_id u, node_id v) {
        edges.emplace_back(u, v);
        return static_cast<edge_id>(edges.size() - 1);
    }
};

// Incidences of every node ordered by (neighbor id, edge id).
inline priority_lists lowest_index_order(const graph& g) {
    priority_lists out(g.n());
    for (node_id v = 0; v < g.n(); ++v) {
        std::vector<incidence> a(g.adj(v).begin(), g.adj(v).end());
        std::sort(a.begin(), a.end(), [](const incidence& x, const incidence& y) {
            return x.to != y.to ? x.to < y.to : x.edge < y.edge;
        });
        for (const auto& i : a) out[v].push_back(i.edge);
    }
    return out;
}

inline void require(bool ok, const std::string& msg) {
    if (!ok) throw param_error(msg);
}

}  // namespace detail

struct caterpillar_params {
    int b = 4;
    int c = 11;
    int l = 3;
};

/// Caterpillar tree: path 0..l+1, root with b+c+1 leaves, node i with b-i+1
/// leaves, last node with b+1 leaves. Start is the root.
inline generated_instance caterpillar(caterpillar_params p) {
    detail::require(p.l >= 1 && p.l % 2 == 1, "caterpillar: l must be odd and positive");
    detail::require(p.c >= 11, "caterpillar: c must be at least 11");
    detail::require(p.b >= p.l + 1, "caterpillar: b must be at least l+1");
    const int L = p.l;
    detail::builder bld;
    for (int i = 0; i <= L + 1; ++i) bld.add_node();
    std::vector<edge_id> path(L + 1);
    for (int i = 0; i <= L; ++i) path[i] = bld.add_edge(i, i + 1);

    auto leaf_count = [&](int i) {
        if (i == 0) return p.b + p.c + 1;
        if (i == L + 1) return p.b + 1;
        return p.b - i + 1;
    };
    std::vector<std::vector<edge_id>> leaves(L + 2);
    std::vector<node_id> leaf_nodes;
    for (int i = 0; i <= L + 1; ++i)
        for (int k = 0; k < leaf_count(i); ++k) {
            node_id x = bld.add_node();
            leaves[i].push_back(bld.add_edge(i, x));
            leaf_nodes.push_back(x);
        }

    generated_instance inst;
    inst.g = build_graph(bld.n, bld.edges);
    inst.priorities.assign(bld.n, {});
    auto& pr = inst.priorities;

    // Root: all leaves save one, then down the path, then the spare leaf.
    pr[0].assign(leaves[0].begin(), leaves[0].end() - 1);
    pr[0].push_back(path[0]);
    pr[0].push_back(leaves[0].back());

    for (int i = 1; i <= L; ++i) {
        edge_id up = path[i - 1], down = path[i];
        auto& o = pr[i];
        if (i % 2 == 1) {
            o = {down, up};
            o.insert(o.end(), leaves[i].begin(), leaves[i].end());
        } else {
            // A few leaves outrank the parent so that, on the way up, one extra
            // leaf is taken before moving on.
            auto head = std::min<std::size_t>(3, leaves[i].size());
            o.assign(leaves[i].begin(), leaves[i].begin() + head);
            o.push_back(up);
            o.insert(o.end(), leaves[i].begin() + head, leaves[i].end());
            o.push_back(down);
        }
    }
    pr[L + 1] = {path[L]};
    pr[L + 1].insert(pr[L + 1].end(), leaves[L + 1].begin(), leaves[L + 1].end());
    for (node_id x : leaf_nodes) pr[x] = {inst.g.adj(x)[0].edge};

    inst.start = 0;
    inst.family = "caterpillar";
    inst.params = {{"b", p.b}, {"c", p.c}, {"l", p.l}};
    double deg = p.l - 2 > 0 ? p.l - 2 : 1;
    inst.predicted = predicted_value{"b^max(l-2,1)", std::pow(double(p.b), deg)};
    return inst;
}

/// Node count of caterpillar(p) in closed form.
inline std::size_t caterpillar_node_count(caterpillar_params p) {
    std::size_t n = (p.l + 2) + (p.b + p.c + 1) + (p.b + 1);
    for (int i = 1; i <= p.l; ++i) n += p.b - i + 1;
    return n;
}

inline constexpr std::pair<int, int> lrv_v_gadget_edges[] = {
    {0, 2}, {0, 7}, {1, 2}, {1, 6}, {2, 5}, {3, 4}, {3, 7}, {4, 5}, {6, 8}, {7, 8}};

/// Chain of k nine-node components behind a start node s = 0. Component j
/// occupies nodes 1+9j .. 9+9j; local 0 is its left port, local 8 its right port.
inline generated_instance lrv_v_chain(int k) {
    detail::require(k >= 1, "lrv_v_chain: k must be at least 1");
    detail::builder bld;
    node_id s = bld.add_node();
    node_id prev = s;
    for (int j = 0; j < k; ++j) {
        node_id o = bld.n;
        for (int x = 0; x < 9; ++x) bld.add_node();
        bld.add_edge(prev, o);
        for (auto [a, b] : lrv_v_gadget_edges) bld.add_edge(o + a, o + b);
        prev = o + 8;
    }
    generated_instance inst;
    inst.g = build_graph(bld.n, bld.edges);
    inst.priorities = detail::lowest_index_order(inst.g);
    inst.start = s;
    inst.family = "lrv-v-chain";
    inst.params = {{"k", k}};
    inst.predicted = predicted_value{"cycle_time_ratio", 2.0};
    inst.degree_bound = 3;
    inst.planar_dual = true;
    return inst;
}

/// Entry port (local 0) of component j in lrv_v_chain.
inline node_id lrv_v_chain_entry(int j) { return static_cast<node_id>(1 + 9 * j); }

/// k components p-a-b-c-d-q: square a-b-c-d, stem p-a, exit b-q, and q linked
/// to the next component's p.
inline generated_instance four_cycle_chain(int k) {
    detail::require(k >= 1, "four_cycle_chain: k must be at least 1");
    enum role { P, A, B, C, D, Q };
    struct comp {
        std::optional<edge_id> in, out;
        edge_id pa, ab, bc, cd, da, bq;
    };
    detail::builder bld;
    std::vector<comp> cs(k);
    for (int j = 0; j < k; ++j) {
        for (int x = 0; x < 6; ++x) bld.add_node();
        node_id p = 6 * j;
        auto& c = cs[j];
        if (j > 0) {
            c.in = bld.add_edge(p - 1, p);
            cs[j - 1].out = c.in;
        }
        c.pa = bld.add_edge(p + P, p + A);
        c.ab = bld.add_edge(p + A, p + B);
        c.bc = bld.add_edge(p + B, p + C);
        c.cd = bld.add_edge(p + C, p + D);
        c.da = bld.add_edge(p + D, p + A);
        c.bq = bld.add_edge(p + B, p + Q);
    }
    generated_instance inst;
    inst.g = build_graph(bld.n, bld.edges);

    auto lay = [&](bool square_first) {
        priority_lists pr(bld.n);
        for (int j = 0; j < k; ++j) {
            const auto& c = cs[j];
            node_id p = 6 * j;
            auto& op = pr[p + P];
            if (c.in) op.push_back(*c.in);
            op.push_back(c.pa);
            pr[p + A] = square_first ? std::vector<edge_id>{c.da, c.ab, c.pa}
                                     : std::vector<edge_id>{c.pa, c.ab, c.da};
            pr[p + B] = {c.ab, c.bc, c.bq};
            pr[p + C] = {c.bc, c.cd};
            pr[p + D] = square_first ? std::vector<edge_id>{c.cd, c.da}
                                     : std::vector<edge_id>{c.da, c.cd};
            auto& oq = pr[p + Q];
            oq.push_back(c.bq);
            if (c.out) oq.push_back(*c.out);
        }
        return pr;
    };
    inst.priorities = lay(false);
    inst.policy_priorities[policy::lrv_e] = lay(true);
    inst.start = 0;
    inst.family = "four-cycle-chain";
    inst.params = {{"k", k}};
    double n = 6.0 * k;
    inst.predicted = predicted_value{"n(n-6)/72", n * (n - 6) / 72.0};
    inst.degree_bound = 3;
    inst.planar_dual = true;
    return inst;
}

/// Layout of a flower path, for callers that inspect it.
struct flower_layout {
    std::vector<node_id> path;     // left to right
    std::vector<node_id> centers;  // flower centers, left to right
};

inline constexpr int flower_half_segment = 2;

inline flower_layout flower_path_layout(int segments) {
    flower_layout f;
    node_id v = 0;
    for (int h = 0; h < flower_half_segment; ++h) f.path.push_back(v++);
    for (int s = 0; s < segments; ++s) {
        f.centers.push_back(v);
        f.path.push_back(v++);
        for (int h = 0; h < flower_half_segment; ++h) f.path.push_back(v++);
    }
    return f;
}

/// A path carrying petals_per_barrier pendant petals on each of `segments`
/// centers. Centers take petals first, then go right. Start is the left end.
inline generated_instance flower_path(int segments, int petals_per_barrier) {
    detail::require(segments >= 1, "flower_path: segments must be at least 1");
    detail::require(petals_per_barrier >= 0, "flower_path: petals must be non-negative");
    auto lay = flower_path_layout(segments);
    detail::builder bld;
    bld.n = lay.path.size();
    std::vector<edge_id> right(bld.n), left(bld.n);
    for (std::size_t i = 0; i + 1 < lay.path.size(); ++i) {
        auto e = bld.add_edge(lay.path[i], lay.path[i + 1]);
        right[lay.path[i]] = e;
        left[lay.path[i + 1]] = e;
    }
    std::map<node_id, std::vector<edge_id>> petals;
    for (node_id c : lay.centers)
        for (int q = 0; q < petals_per_barrier; ++q) petals[c].push_back(bld.add_edge(c, bld.add_node()));

    generated_instance inst;
    inst.g = build_graph(bld.n, bld.edges);
    inst.priorities.assign(bld.n, {});
    for (std::size_t i = 0; i < lay.path.size(); ++i) {
        node_id v = lay.path[i];
        auto& o = inst.priorities[v];
        if (auto it = petals.find(v); it != petals.end()) o = it->second;
        if (i + 1 < lay.path.size()) o.push_back(right[v]);
        if (i > 0) o.push_back(left[v]);
    }
    for (node_id v = lay.path.size(); v < bld.n; ++v) inst.priorities[v] = {inst.g.adj(v)[0].edge};
    inst.start = lay.path.front();
    inst.family = "flower-path";
    inst.params = {{"segments", segments}, {"petals", petals_per_barrier}};
    inst.predicted = predicted_value{"center_freq_after_first_pass", petals_per_barrier + 1.0};
    return inst;
}

inline constexpr std::size_t ratio_config_max_nodes = 1'000'000;

/// Start s = 0 with neighbors 1..delta-1 and u = delta. Every neighbor other
/// than u reaches u through a shared barrier node x = delta+1, which carries
/// k*delta-1 petals. The walk first pumps x via u, then bounces around s.
inline generated_instance ratio_config(int delta, int k) {
    detail::require(delta >= 3, "ratio_config: delta must be at least 3");
    detail::require(k >= 1, "ratio_config: k must be at least 1");
    const std::size_t petal_count = static_cast<std::size_t>(k) * delta - 1;
    detail::require(delta + 2 + petal_count <= ratio_config_max_nodes,
                    "ratio_config: instance too large");
    detail::builder bld;
    node_id s = bld.add_node();
    std::vector<node_id> w;
    for (int i = 1; i < delta; ++i) w.push_back(bld.add_node());
    node_id u = bld.add_node();
    node_id x = bld.add_node();

    std::vector<edge_id> sw, wx;
    for (node_id v : w) sw.push_back(bld.add_edge(s, v));
    edge_id su = bld.add_edge(s, u);
    edge_id ux = bld.add_edge(u, x);
    for (node_id v : w) wx.push_back(bld.add_edge(v, x));
    std::vector<edge_id> petals;
    for (std::size_t q = 0; q < petal_count; ++q) petals.push_back(bld.add_edge(x, bld.add_node()));

    generated_instance inst;
    inst.g = build_graph(bld.n, bld.edges);
    auto& pr = inst.priorities;
    pr.assign(bld.n, {});
    pr[s] = {su};
    pr[s].insert(pr[s].end(), sw.begin(), sw.end());
    for (std::size_t i = 0; i < w.size(); ++i) pr[w[i]] = {sw[i], wx[i]};
    pr[u] = {ux, su};
    pr[x] = petals;
    pr[x].insert(pr[x].end(), wx.begin(), wx.end());
    pr[x].push_back(ux);
    for (std::size_t q = 0; q < petals.size(); ++q) pr[x + 1 + q] = {petals[q]};
    inst.start = s;
    inst.family = "ratio";
    inst.params = {{"delta", delta}, {"k", k}};
    inst.predicted = predicted_value{"freq(s)=k*delta", double(k) * delta};
    return inst;
}

/// The distinguished neighbor u of ratio_config(delta, k).
inline node_id ratio_config_u(int delta) { return static_cast<node_id>(delta); }

/// Random connected graph with max degree <= delta_max: a random tree, then
/// extra edges between nodes with spare degree. Deterministic in seed.
inline generated_instance random_bounded_degree(int n, int delta_max, std::uint64_t seed) {
    detail::require(n >= 2, "random_bounded_degree: n must be at least 2");
    detail::require(delta_max >= 2, "random_bounded_degree: delta_max must be at least 2");
    std::mt19937_64 rng(seed);
    auto pick = [&](std::size_t bound) { return static_cast<std::size_t>(rng() % bound); };

    std::vector<node_id> order(n);
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = order.size() - 1; i > 0; --i) std::swap(order[i], order[pick(i + 1)]);

    std::vector<int> deg(n, 0);
    std::vector<std::pair<node_id, node_id>> edges;
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    auto link = [&](node_id a, node_id b) {
        edges.emplace_back(std::min(a, b), std::max(a, b));
        ++deg[a];
        ++deg[b];
        adj[a][b] = adj[b][a] = true;
    };
    for (int i = 1; i < n; ++i) {
        std::vector<node_id> open;
        for (int j = 0; j < i; ++j)
            if (deg[order[j]] < delta_max) open.push_back(order[j]);
        link(order[i], open[pick(open.size())]);
    }
    int extra = static_cast<int>(pick(static_cast<std::size_t>(n)));
    for (int tries = 0; tries < 4 * extra + 4 && extra > 0; ++tries) {
        node_id a = pick(n), b = pick(n);
        if (a == b || adj[a][b] || deg[a] >= delta_max || deg[b] >= delta_max) continue;
        link(a, b);
        --extra;
    }
    generated_instance inst;
    inst.g = build_graph(n, edges);
    inst.priorities = detail::lowest_index_order(inst.g);
    inst.start = 0;
    inst.family = "random";
    inst.params = {{"n", n}, {"delta_max", delta_max}, {"seed", static_cast<std::int64_t>(seed)}};
    inst.degree_bound = delta_max;
    return inst;
}

}  // namespace walkbound
