#pragma once

#include <cctype>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "error.hpp"
#include "graph.hpp"

namespace walkbound {

enum class policy { lrv_v, lrv_e, lfv_v, lfv_e };

inline constexpr policy all_policies[] = {policy::lrv_v, policy::lrv_e, policy::lfv_v,
                                          policy::lfv_e};

inline std::string_view to_string(policy p) {
    switch (p) {
        case policy::lrv_v: return "LRV-v";
        case policy::lrv_e: return "LRV-e";
        case policy::lfv_v: return "LFV-v";
        case policy::lfv_e: return "LFV-e";
    }
    return "?";
}

/// Accepts "LRV-v", "lrv-v", "lrv_v" and so on.
inline policy parse_policy(std::string_view s) {
    std::string k;
    for (char c : s) k += (c == '_') ? '-' : static_cast<char>(std::tolower(c));
    for (policy p : all_policies) {
        std::string name;
        for (char c : to_string(p)) name += static_cast<char>(std::tolower(c));
        if (k == name) return p;
    }
    throw param_error("unknown policy '" + std::string(s) + "'");
}

inline constexpr bool scores_edges(policy p) { return p == policy::lrv_e || p == policy::lfv_e; }

inline constexpr std::int64_t never = -1;

struct walk_state {
    node_id current = 0;
    std::uint64_t t = 0;
    std::vector<std::int64_t> node_last;
    std::vector<std::uint64_t> node_freq;
    std::vector<std::int64_t> edge_last;
    std::vector<std::uint64_t> edge_freq;

    // Placement at start: no frequency increment, timestamp 0.
    static walk_state initial(const graph& g, node_id start) {
        if (start >= g.n()) throw param_error("start node out of range");
        walk_state s;
        s.current = start;
        s.node_last.assign(g.n(), never);
        s.node_freq.assign(g.n(), 0);
        s.edge_last.assign(g.m(), never);
        s.edge_freq.assign(g.m(), 0);
        s.node_last[start] = 0;
        return s;
    }

    bool visited(node_id v) const { return node_last[v] != never; }

    friend bool operator==(const walk_state&, const walk_state&) = default;
};

inline std::int64_t score(const walk_state& s, policy p, const incidence& i) {
    switch (p) {
        case policy::lrv_v: return s.node_last[i.to];
        case policy::lrv_e: return s.edge_last[i.edge];
        case policy::lfv_v: return static_cast<std::int64_t>(s.node_freq[i.to]);
        case policy::lfv_e: return static_cast<std::int64_t>(s.edge_freq[i.edge]);
    }
    return 0;
}

/// Incidences of the current node attaining the minimum score, in adjacency order.
inline std::vector<incidence> candidates(const graph& g, const walk_state& s, policy p) {
    std::vector<incidence> out;
    auto best = std::numeric_limits<std::int64_t>::max();
    for (const auto& i : g.adj(s.current)) {
        auto sc = score(s, p, i);
        if (sc < best) {
            best = sc;
            out.clear();
        }
        if (sc == best) out.push_back(i);
    }
    return out;
}

/// Chooses among argmin incidences.
class tie_breaker {
public:
    enum class kind { static_priority, lowest_index, seeded_random, scripted };

    static tie_breaker lowest_index() { return tie_breaker(kind::lowest_index); }

    static tie_breaker seeded_random(std::uint64_t seed) {
        tie_breaker tb(kind::seeded_random);
        tb.seed_ = seed;
        tb.rng_.seed(seed);
        return tb;
    }

    /// order[v] lists the edge ids incident to v, most preferred first.
    static tie_breaker static_priority(const graph& g, std::vector<std::vector<edge_id>> order) {
        if (order.size() != g.n()) throw param_error("priority lists must cover every node");
        tie_breaker tb(kind::static_priority);
        tb.rank_.resize(g.n());
        for (node_id v = 0; v < g.n(); ++v) {
            const auto& o = order[v];
            if (o.size() != g.degree(v))
                throw param_error("priority list of node " + std::to_string(v) +
                                  " is not a permutation of its incidences");
            auto& r = tb.rank_[v];
            r.assign(o.size(), std::numeric_limits<std::uint32_t>::max());
            for (std::uint32_t k = 0; k < o.size(); ++k) {
                auto at = g.slot(v, o[k]);
                if (at == g.degree(v) || r[at] != std::numeric_limits<std::uint32_t>::max())
                    throw param_error("priority list of node " + std::to_string(v) +
                                      " is not a permutation of its incidences");
                r[at] = k;
            }
        }
        tb.order_ = std::move(order);
        return tb;
    }

    /// One edge per move; each must belong to the argmin set at its step.
    static tie_breaker scripted(std::vector<edge_id> witness) {
        tie_breaker tb(kind::scripted);
        tb.script_ = std::move(witness);
        return tb;
    }

    kind type() const { return kind_; }
    std::uint64_t seed() const { return seed_; }
    const std::vector<std::vector<edge_id>>& order() const { return order_; }
    const std::vector<edge_id>& script() const { return script_; }

    // Rewinds any internal state (rng stream, script cursor).
    void reset() {
        rng_.seed(seed_);
        pos_ = 0;
    }

    std::string describe() const {
        switch (kind_) {
            case kind::static_priority: return "static-priority";
            case kind::lowest_index: return "lowest-index";
            case kind::seeded_random: return "seeded-random:" + std::to_string(seed_);
            case kind::scripted: return "scripted";
        }
        return "?";
    }

    incidence choose(const graph& g, node_id at, const std::vector<incidence>& cands,
                     std::uint64_t step) {
        switch (kind_) {
            case kind::lowest_index: {
                auto best = cands.front();
                for (const auto& c : cands)
                    if (c.to < best.to || (c.to == best.to && c.edge < best.edge)) best = c;
                return best;
            }
            case kind::seeded_random:
                if (cands.size() == 1) return cands.front();
                return cands[rng_() % cands.size()];
            case kind::static_priority: {
                const auto& r = rank_[at];
                auto best = cands.front();
                auto best_rank = r[g.slot(at, best.edge)];
                for (const auto& c : cands) {
                    auto rk = r[g.slot(at, c.edge)];
                    if (rk < best_rank) {
                        best = c;
                        best_rank = rk;
                    }
                }
                return best;
            }
            case kind::scripted: {
                if (pos_ >= script_.size()) throw walk_error("scripted witness exhausted", step);
                edge_id e = script_[pos_++];
                for (const auto& c : cands)
                    if (c.edge == e) return c;
                throw walk_error("scripted choice edge " + std::to_string(e) +
                                     " is not in the argmin set",
                                 step);
            }
        }
        return cands.front();
    }

private:
    explicit tie_breaker(kind k) : kind_(k) {}

    kind kind_;
    std::uint64_t seed_ = 0;
    std::mt19937_64 rng_;
    std::vector<std::vector<std::uint32_t>> rank_;
    std::vector<std::vector<edge_id>> order_;
    std::vector<edge_id> script_;
    std::size_t pos_ = 0;
};

struct move {
    edge_id edge;
    node_id to;
    friend bool operator==(const move&, const move&) = default;
};

struct trace {
    node_id start = 0;
    std::vector<move> moves;
    policy pol = policy::lrv_v;
    std::string tiebreak;
};

/// Advances s by one move. All four counter families are updated.
inline move step(const graph& g, walk_state& s, policy p, tie_breaker& tb) {
    if (g.degree(s.current) == 0) throw walk_error("current node has no incidences", s.t);
    auto cands = candidates(g, s, p);
    auto c = tb.choose(g, s.current, cands, s.t);
    constexpr auto top = std::numeric_limits<std::uint64_t>::max();
    if (s.node_freq[c.to] == top || s.edge_freq[c.edge] == top || s.t == top)
        throw walk_error("counter overflow", s.t);
    ++s.t;
    auto now = static_cast<std::int64_t>(s.t);
    ++s.node_freq[c.to];
    s.node_last[c.to] = now;
    ++s.edge_freq[c.edge];
    s.edge_last[c.edge] = now;
    s.current = c.to;
    return {c.edge, c.to};
}

struct run_metrics {
    std::optional<std::uint64_t> cover_time;
    bool covered = false;
    std::uint64_t max_freq = 0;
    std::uint64_t steps = 0;
    bool latency_available = false;
    std::vector<std::uint64_t> max_latency;  // per node, over the trailing window
    std::map<std::uint64_t, std::uint64_t> histogram;  // frequency -> node count
};

struct run_result {
    trace tr;
    walk_state state;
    run_metrics metrics;
    std::vector<node_id> unvisited;
};

struct no_hook {
    bool operator()(const walk_state&, const move&) const { return false; }
};

struct run_options {
    bool record_trace = true;
    bool stop_at_cover = true;
};

namespace detail {

inline void finish_metrics(run_result& r) {
    r.metrics.steps = r.state.t;
    r.metrics.max_freq = 0;
    for (auto f : r.state.node_freq) {
        r.metrics.max_freq = std::max(r.metrics.max_freq, f);
        ++r.metrics.histogram[f];
    }
    for (node_id v = 0; v < r.state.node_freq.size(); ++v)
        if (!r.state.visited(v)) r.unvisited.push_back(v);
    r.metrics.covered = r.unvisited.empty();
}

template <class Hook>
run_result run(const graph& g, policy p, tie_breaker& tb, node_id start, std::uint64_t limit,
               Hook&& hook, run_options opt) {
    run_result r;
    r.state = walk_state::initial(g, start);
    r.tr.start = start;
    r.tr.pol = p;
    r.tr.tiebreak = tb.describe();
    std::size_t seen = 1;
    if (g.n() == 1) r.metrics.cover_time = 0;
    while (r.state.t < limit) {
        if (opt.stop_at_cover && r.metrics.cover_time) break;
        auto mv = step(g, r.state, p, tb);
        if (r.state.node_freq[mv.to] == 1 && mv.to != start) {
            if (++seen == g.n()) r.metrics.cover_time = r.state.t;
        }
        if (opt.record_trace) r.tr.moves.push_back(mv);
        if constexpr (std::is_same_v<std::invoke_result_t<Hook&, const walk_state&, const move&>,
                                     bool>) {
            if (hook(std::as_const(r.state), mv)) break;
        } else {
            hook(std::as_const(r.state), mv);
        }
    }
    finish_metrics(r);
    return r;
}

}  // namespace detail

/// Walks until every node is visited or step_cap moves were made. An uncovered
/// result lists the unvisited nodes; it is not an exception.
template <class Hook = no_hook>
run_result run_until_covered(const graph& g, policy p, tie_breaker& tb, node_id start,
                             std::uint64_t step_cap, Hook&& hook = {}, run_options opt = {}) {
    if (step_cap < 1) throw param_error("step cap must be at least 1");
    opt.stop_at_cover = true;
    return detail::run(g, p, tb, start, step_cap, std::forward<Hook>(hook), opt);
}

/// Walks exactly T moves (unless the hook stops early).
template <class Hook = no_hook>
run_result run_steps(const graph& g, policy p, tie_breaker& tb, node_id start, std::uint64_t T,
                     Hook&& hook = {}, run_options opt = {}) {
    opt.stop_at_cover = false;
    return detail::run(g, p, tb, start, T, std::forward<Hook>(hook), opt);
}

/// The edge sequence of a trace, usable as a scripted witness.
inline std::vector<edge_id> witness_of(const trace& tr) {
    std::vector<edge_id> w;
    w.reserve(tr.moves.size());
    for (const auto& mv : tr.moves) w.push_back(mv.edge);
    return w;
}

/// Checks that consecutive moves form a walk from tr.start.
inline bool is_walk(const graph& g, const trace& tr) {
    node_id at = tr.start;
    for (const auto& mv : tr.moves) {
        if (mv.edge >= g.m()) return false;
        auto [a, b] = g.endpoints(mv.edge);
        if (at != a && at != b) return false;
        if (g.other(mv.edge, at) != mv.to) return false;
        at = mv.to;
    }
    return true;
}

}  // namespace walkbound
