#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "graph.hpp"
#include "walk.hpp"

namespace walkbound {

struct oracle_result {
    std::uint64_t max_cover_time = 0;
    std::vector<edge_id> witness;  // full move sequence, replayable as a scripted tie-breaker
    std::uint64_t nodes_explored = 0;
    bool lower_bound_only = false;  // some branch hit the step cap
};

inline constexpr std::uint64_t default_oracle_cap = 10'000;

namespace detail {

class oracle_search {
public:
    oracle_search(const graph& g, policy p, node_id start, std::uint64_t cap)
        : g_(g), p_(p), cap_(cap), st_(walk_state::initial(g, start)) {
        unseen_ = g.n() - 1;
    }

    oracle_result run() {
        if (unseen_ == 0) return res_;
        dfs();
        return res_;
    }

private:
    struct undo {
        node_id from;
        incidence to;
        std::int64_t node_last, edge_last;
    };

    void apply(const incidence& c, std::vector<undo>& log) {
        log.push_back({st_.current, c, st_.node_last[c.to], st_.edge_last[c.edge]});
        bool fresh = !st_.visited(c.to);
        ++st_.t;
        ++st_.node_freq[c.to];
        st_.node_last[c.to] = static_cast<std::int64_t>(st_.t);
        ++st_.edge_freq[c.edge];
        st_.edge_last[c.edge] = static_cast<std::int64_t>(st_.t);
        st_.current = c.to;
        path_.push_back(c.edge);
        if (fresh) --unseen_;
    }

    void revert(std::vector<undo>& log) {
        while (!log.empty()) {
            auto u = log.back();
            log.pop_back();
            --st_.t;
            --st_.node_freq[u.to.to];
            st_.node_last[u.to.to] = u.node_last;
            --st_.edge_freq[u.to.edge];
            st_.edge_last[u.to.edge] = u.edge_last;
            st_.current = u.from;
            path_.pop_back();
            if (!st_.visited(u.to.to)) ++unseen_;
        }
    }

    void leaf(std::uint64_t value, bool capped) {
        if (capped) res_.lower_bound_only = true;
        if (value > res_.max_cover_time || res_.witness.empty()) {
            res_.max_cover_time = value;
            res_.witness = path_;
        }
    }

    // Follows forced moves iteratively and branches only on genuine ties.
    void dfs() {
        ++res_.nodes_explored;
        std::vector<undo> log;
        while (true) {
            if (unseen_ == 0) {
                leaf(st_.t, false);
                break;
            }
            if (st_.t >= cap_) {
                leaf(st_.t, true);
                break;
            }
            auto cands = candidates(g_, st_, p_);
            if (cands.size() == 1) {
                apply(cands.front(), log);
                continue;
            }
            for (const auto& c : cands) {
                std::vector<undo> one;
                apply(c, one);
                dfs();
                revert(one);
            }
            break;
        }
        revert(log);
    }

    const graph& g_;
    policy p_;
    std::uint64_t cap_;
    walk_state st_;
    std::size_t unseen_ = 0;
    std::vector<edge_id> path_;
    oracle_result res_;
};

template <class Goal, class Prune>
bool reach(const graph& g, policy p, walk_state& st, std::vector<edge_id>& path,
           std::uint64_t cap, Goal& goal, Prune& prune, std::uint64_t& explored) {
    ++explored;
    if (goal(std::as_const(st))) return true;
    if (st.t >= cap || prune(std::as_const(st))) return false;
    for (const auto& c : candidates(g, st, p)) {
        auto saved = st;
        tie_breaker only = tie_breaker::scripted({c.edge});
        step(g, st, p, only);
        path.push_back(c.edge);
        if (reach(g, p, st, path, cap, goal, prune, explored)) return true;
        path.pop_back();
        st = std::move(saved);
    }
    return false;
}

}  // namespace detail

/// Searches every tie resolution for a state satisfying goal; branches where
/// prune holds are abandoned. Returns the move sequence reaching it.
template <class Goal, class Prune>
std::optional<std::vector<edge_id>> find_reachable(const graph& g, policy p, node_id start,
                                                   Goal goal, Prune prune,
                                                   std::uint64_t step_cap = default_oracle_cap) {
    auto st = walk_state::initial(g, start);
    std::vector<edge_id> path;
    std::uint64_t explored = 0;
    if (detail::reach(g, p, st, path, step_cap, goal, prune, explored)) return path;
    return std::nullopt;
}

/// Maximum cover time over every tie resolution, by exhaustive depth-first
/// search. Intended for graphs of about a dozen nodes.
inline oracle_result worst_case_cover(const graph& g, policy p, node_id start,
                                      std::uint64_t step_cap = default_oracle_cap) {
    return detail::oracle_search(g, p, start, step_cap).run();
}

}  // namespace walkbound
