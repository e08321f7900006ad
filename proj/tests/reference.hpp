// Deliberately naive re-implementation of the walk rules, used as an
// independent oracle. Works from the raw edge list only.
#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

namespace ref {

struct state {
    std::uint32_t cur = 0;
    std::int64_t t = 0;
    std::vector<std::int64_t> nlast, nfreq, elast, efreq;
    std::vector<bool> seen;
    std::size_t seen_count = 1;
};

struct option {
    std::uint32_t to;
    std::uint32_t edge;
};

// policy: 0 LRV-v, 1 LRV-e, 2 LFV-v, 3 LFV-e
class walker {
public:
    walker(std::size_t n, std::vector<std::pair<std::uint32_t, std::uint32_t>> edges, int policy)
        : n_(n), edges_(std::move(edges)), policy_(policy) {}

    state start(std::uint32_t s) const {
        state st;
        st.cur = s;
        st.nlast.assign(n_, -1);
        st.nfreq.assign(n_, 0);
        st.elast.assign(edges_.size(), -1);
        st.efreq.assign(edges_.size(), 0);
        st.seen.assign(n_, false);
        st.seen[s] = true;
        st.nlast[s] = 0;
        return st;
    }

    std::vector<option> best(const state& st) const {
        std::vector<option> opts;
        for (std::uint32_t e = 0; e < edges_.size(); ++e) {
            auto [a, b] = edges_[e];
            if (a == st.cur) opts.push_back({b, e});
            else if (b == st.cur) opts.push_back({a, e});
        }
        auto key = [&](const option& o) -> std::int64_t {
            switch (policy_) {
                case 0: return st.nlast[o.to];
                case 1: return st.elast[o.edge];
                case 2: return st.nfreq[o.to];
                default: return st.efreq[o.edge];
            }
        };
        std::int64_t lo = key(opts.front());
        for (const auto& o : opts) lo = std::min(lo, key(o));
        std::vector<option> out;
        for (const auto& o : opts)
            if (key(o) == lo) out.push_back(o);
        return out;
    }

    static option lowest(const std::vector<option>& opts) {
        return *std::min_element(opts.begin(), opts.end(), [](const option& x, const option& y) {
            return std::pair(x.to, x.edge) < std::pair(y.to, y.edge);
        });
    }

    void apply(state& st, option o) const {
        ++st.t;
        st.cur = o.to;
        st.nlast[o.to] = st.t;
        st.elast[o.edge] = st.t;
        ++st.nfreq[o.to];
        ++st.efreq[o.edge];
        if (!st.seen[o.to]) {
            st.seen[o.to] = true;
            ++st.seen_count;
        }
    }

    bool covered(const state& st) const { return st.seen_count == n_; }

    // Maximum cover time over every tie resolution, capped.
    std::int64_t worst_cover(const state& st, std::int64_t cap) const {
        if (covered(st)) return st.t;
        if (st.t >= cap) return cap;
        std::int64_t worst = 0;
        for (auto o : best(st)) {
            state next = st;
            apply(next, o);
            worst = std::max(worst, worst_cover(next, cap));
        }
        return worst;
    }

private:
    std::size_t n_;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges_;
    int policy_;
};

}  // namespace ref
