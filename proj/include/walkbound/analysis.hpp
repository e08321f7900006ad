#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "generators.hpp"
#include "graph.hpp"
#include "walk.hpp"

namespace walkbound {

struct verdict {
    std::string name;
    bool pass = false;
    std::string details;
};

/// Metrics recomputed from a trace alone. Latency (largest gap between
/// consecutive visits of a node) is taken over the last post_window moves; a
/// node visited fewer than twice there gets post_window + 1.
inline run_metrics metrics(const trace& tr, const graph& g, std::uint64_t post_window) {
    run_metrics m;
    std::vector<std::uint64_t> freq(g.n(), 0);
    std::vector<bool> seen(g.n(), false);
    seen[tr.start] = true;
    std::size_t unseen = g.n() - 1;
    if (unseen == 0) m.cover_time = 0;
    for (std::size_t i = 0; i < tr.moves.size(); ++i) {
        node_id v = tr.moves[i].to;
        ++freq[v];
        if (!seen[v]) {
            seen[v] = true;
            if (--unseen == 0) m.cover_time = i + 1;
        }
    }
    m.covered = unseen == 0;
    m.steps = tr.moves.size();
    for (auto f : freq) {
        m.max_freq = std::max(m.max_freq, f);
        ++m.histogram[f];
    }
    if (post_window == 0 || post_window > tr.moves.size()) return m;

    m.latency_available = true;
    m.max_latency.assign(g.n(), 0);
    std::vector<std::int64_t> last(g.n(), -1);
    const std::uint64_t T = tr.moves.size(), from = T - post_window;
    for (std::uint64_t i = from; i < T; ++i) {
        node_id v = tr.moves[i].to;
        auto t = static_cast<std::int64_t>(i + 1);
        if (last[v] >= 0)
            m.max_latency[v] = std::max<std::uint64_t>(m.max_latency[v], t - last[v]);
        last[v] = t;
    }
    std::vector<int> hits(g.n(), 0);
    for (std::uint64_t i = from; i < T; ++i) ++hits[tr.moves[i].to];
    for (node_id v = 0; v < g.n(); ++v)
        if (hits[v] < 2) m.max_latency[v] = post_window + 1;
    return m;
}

/// Frequency lemma at start node s: with g = freq(s) and delta = deg(s), every
/// neighbor has at least g/delta and at least g mod delta have one more.
inline verdict check_frequency_lemma(const graph& g, const walk_state& st, node_id s) {
    verdict v{"frequency-lemma", true, ""};
    const std::uint64_t gs = st.node_freq[s];
    const std::uint64_t d = g.degree(s);
    if (d == 0) return v;
    const std::uint64_t q = gs / d, r = gs % d;
    std::uint64_t above = 0;
    for (auto [w, e] : g.adj(s)) {
        if (st.node_freq[w] < q) {
            v.pass = false;
            v.details = "t=" + std::to_string(st.t) + " neighbor " + std::to_string(w) +
                        " has freq " + std::to_string(st.node_freq[w]) + " < " + std::to_string(q);
            return v;
        }
        if (st.node_freq[w] >= q + 1) ++above;
    }
    if (above < r) {
        v.pass = false;
        v.details = "t=" + std::to_string(st.t) + " only " + std::to_string(above) +
                    " neighbors reach " + std::to_string(q + 1) + ", need " + std::to_string(r);
    }
    return v;
}

/// Integer power saturating at uint64 max.
inline std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base)
            return std::numeric_limits<std::uint64_t>::max();
        r *= base;
    }
    return r;
}

inline verdict check_delta_d_bound(const graph_stats& gs, const walk_state& st) {
    auto bound = saturating_pow(gs.max_degree, gs.diameter);
    auto top = *std::max_element(st.node_freq.begin(), st.node_freq.end());
    verdict v{"delta-d-bound", top <= bound, ""};
    if (!v.pass)
        v.details = "t=" + std::to_string(st.t) + " max freq " + std::to_string(top) + " > " +
                    std::to_string(bound);
    return v;
}

inline verdict check_delta_d_bound(const graph& g, const walk_state& st) {
    return check_delta_d_bound(stats(g), st);
}

/// Deg(i, j) for i in [1, l+1], j in [3, l-2], exactly as the piecewise
/// definition reads. Entries may come out negative.
struct degree_table {
    int l = 0;
    std::map<std::pair<int, int>, int> deg;

    std::optional<int> at(int i, int j) const {
        auto it = deg.find({i, j});
        if (it == deg.end()) return std::nullopt;
        return it->second;
    }
};

inline int degree_formula(int l, int i, int j) {
    if (i == l + 1) return j % 2 == 1 ? j : j - 1;
    const bool even = i % 2 == 0;
    if (j < l - i) return even ? 2 : 3;
    if (even) return j % 2 == 1 ? j - l - i : j - l - i + 1;
    return j % 2 == 1 ? j - l - i + 2 : j - l - i + 1;
}

inline degree_table make_degree_table(int l) {
    if (l < 3 || l % 2 == 0) throw param_error("degree_table: l must be odd and at least 3");
    degree_table t;
    t.l = l;
    for (int i = 1; i <= l + 1; ++i)
        for (int j = 3; j <= l - 2; ++j) t.deg[{i, j}] = degree_formula(l, i, j);
    return t;
}

/// The printed table of degrees for l = 13: rows are path nodes 0..14,
/// entries are columns left to right; -1 marks a printed dot.
inline const std::vector<std::vector<int>>& printed_degree_table() {
    static const std::vector<std::vector<int>> rows = {
        {1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1},
        {0, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2},
        {1, 1, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3},
        {0, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 4, 4},
        {1, 1, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 5},
        {0, 2, 2, 2, 2, 2, 2, 2, 2, 4, 4, 4, 4},
        {1, 1, 3, 3, 3, 3, 3, 3, 3, 3, 5, 5, -1},
        {0, 2, 2, 2, 2, 2, 2, 4, 4, 4, 6, 6, -1},
        {1, 1, 3, 3, 3, 3, 3, 3, 5, 5, 7, 7, -1},
        {0, 2, 2, 2, 2, 4, 4, 4, 6, 6, 8, 8},
        {1, 1, 3, 3, 3, 3, 5, 5, 7, 7, 9, 9},
        {0, 2, 2, 4, 4, 4, 6, 6, 8, 8, 10, 10},
        {1, 1, 3, 3, 5, 5, 7, 7, 9, 9, 11, 11},
        {0, 2, 2, 4, 4, 6, 6, 8, 8, 10, 10, 12},
        {1, 1, 3, 3, 5, 5, 7, 7, 9, 9, 11, 11},
    };
    return rows;
}

inline constexpr int printed_degree_table_l = 13;

struct growth_fit {
    double slope = 0;
    double intercept = 0;
    double residual = 0;  // root mean square of the fit residuals in log space
    std::vector<std::pair<double, double>> points;
};

enum class growth_model { power, exponential };

inline growth_fit fit_growth(const std::vector<std::pair<double, double>>& pts, growth_model model) {
    if (pts.size() < 3) throw param_error("fit_growth: need at least 3 points");
    std::vector<double> x, y;
    for (auto [n, v] : pts) {
        if (!(v > 0)) throw param_error("fit_growth: metrics must be positive");
        if (model == growth_model::power && !(n > 0))
            throw param_error("fit_growth: sizes must be positive for a power fit");
        x.push_back(model == growth_model::power ? std::log(n) : n);
        y.push_back(std::log(v));
    }
    const double k = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= k;
    my /= k;
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    if (sxx == 0) throw param_error("fit_growth: sizes must not all be equal");
    growth_fit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ss = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double r = y[i] - (f.intercept + f.slope * x[i]);
        ss += r * r;
    }
    f.residual = std::sqrt(ss / k);
    f.points = pts;
    return f;
}

/// Path-node frequencies of an LFV-v caterpillar run at the end of every pass.
/// A pass ends when path-to-path moves change direction; the snapshot is the
/// state just before the turning move.
struct caterpillar_run {
    caterpillar_params params;
    std::vector<std::vector<std::uint64_t>> passes;  // passes[j-1][i] = freq(i) after pass j
    std::optional<std::uint64_t> cover_time;
    std::vector<std::uint64_t> final_path_freq;
    std::uint64_t steps = 0;
};

inline caterpillar_run trace_caterpillar(caterpillar_params p, std::uint64_t step_cap,
                                         std::size_t max_passes = static_cast<std::size_t>(-1)) {
    auto inst = caterpillar(p);
    auto tb = inst.tie_breaker_for(policy::lfv_v);
    const node_id last = p.l + 1;
    caterpillar_run out;
    out.params = p;
    node_id prev = inst.start;
    int dir = 0;
    auto hook = [&](const walk_state& st, const move& mv) {
        node_id from = prev;
        prev = mv.to;
        if (from > last || mv.to > last) return false;
        int d = mv.to > from ? 1 : -1;
        if (dir != 0 && d != dir) {
            std::vector<std::uint64_t> snap(st.node_freq.begin(), st.node_freq.begin() + last + 1);
            --snap[mv.to];
            out.passes.push_back(std::move(snap));
        }
        dir = d;
        return out.passes.size() >= max_passes;
    };
    auto r = run_until_covered(inst.g, policy::lfv_v, tb, inst.start, step_cap, hook,
                               run_options{.record_trace = false});
    out.cover_time = r.metrics.cover_time;
    out.final_path_freq.assign(r.state.node_freq.begin(), r.state.node_freq.begin() + last + 1);
    out.steps = r.state.t;
    return out;
}

/// Closed forms for the path after the first pass, counting the initial
/// placement at the root as a visit.
inline std::vector<std::uint64_t> caterpillar_phase1_visits(caterpillar_params p) {
    std::vector<std::uint64_t> v(p.l + 2);
    v[0] = p.b + p.c + 1;
    for (int i = 1; i <= p.l; ++i) v[i] = i % 2 == 1 ? 1 : p.b - i + 2;
    v[p.l + 1] = p.b + 2;
    return v;
}

/// Closed form for path node i (1 <= i <= l) after the second pass.
inline std::uint64_t caterpillar_pass2_freq(caterpillar_params p, int i) {
    std::uint64_t b = p.b;
    if (i % 2 == 1) return (b - i + 1) * (b - i + 3) + 2;
    return b - i + 6;
}

struct degree_fit_row {
    int node = 0;
    int pass = 0;
    double fitted = 0;
    std::optional<int> formula;  // literal Deg(i, j) where defined
};

struct degree_fit_report {
    int l = 0;
    std::vector<int> b_values;
    std::vector<degree_fit_row> rows;
    double last_node_exit_slope = 0;   // last path node at pass l-2
    double last_node_cover_slope = 0;  // last path node at coverage
    bool complete = true;              // false if some run hit the step budget
};

inline degree_fit_report fit_caterpillar_degrees(int l, const std::vector<int>& b_values, int c = 11,
                                                 std::uint64_t step_budget = 200'000'000) {
    if (b_values.size() < 2) throw param_error("fit_caterpillar_degrees: need two b values");
    degree_fit_report rep;
    rep.l = l;
    rep.b_values = b_values;
    std::vector<caterpillar_run> runs;
    for (int b : b_values) {
        runs.push_back(trace_caterpillar({b, c, l}, step_budget));
        if (!runs.back().cover_time) rep.complete = false;
    }
    std::size_t passes = runs.front().passes.size();
    for (const auto& r : runs) passes = std::min(passes, r.passes.size());
    auto slope_of = [&](auto get) {
        std::vector<double> x, y;
        for (std::size_t k = 0; k < runs.size(); ++k) {
            x.push_back(std::log(double(b_values[k])));
            y.push_back(std::log(std::max<double>(1.0, double(get(runs[k])))));
        }
        double mx = 0, my = 0;
        for (std::size_t k = 0; k < x.size(); ++k) {
            mx += x[k];
            my += y[k];
        }
        mx /= x.size();
        my /= y.size();
        double sxy = 0, sxx = 0;
        for (std::size_t k = 0; k < x.size(); ++k) {
            sxy += (x[k] - mx) * (y[k] - my);
            sxx += (x[k] - mx) * (x[k] - mx);
        }
        return sxy / sxx;
    };
    std::optional<degree_table> dt;
    if (l >= 3) dt = make_degree_table(l);
    for (std::size_t j = 1; j <= passes; ++j)
        for (int i = 0; i <= l + 1; ++i) {
            degree_fit_row row;
            row.node = i;
            row.pass = static_cast<int>(j);
            row.fitted = slope_of([&](const caterpillar_run& r) { return r.passes[j - 1][i]; });
            if (dt) row.formula = dt->at(i, static_cast<int>(j));
            rep.rows.push_back(row);
        }
    const int exit_pass = std::max(1, l - 2);
    if (static_cast<std::size_t>(exit_pass) <= passes)
        rep.last_node_exit_slope =
            slope_of([&](const caterpillar_run& r) { return r.passes[exit_pass - 1][l + 1]; });
    rep.last_node_cover_slope =
        slope_of([&](const caterpillar_run& r) { return r.final_path_freq[l + 1]; });
    return rep;
}

/// LFV-e latency check: max per-node latency over the trailing window against
/// C * n * d.
inline verdict check_lfv_e_latency(const graph& g, const trace& tr, std::uint64_t window,
                                   double C = 16.0) {
    verdict v{"lfv-e-latency", false, ""};
    auto m = metrics(tr, g, window);
    if (!m.latency_available) {
        v.details = "unavailable: window " + std::to_string(window) + " exceeds trace length " +
                    std::to_string(tr.moves.size());
        return v;
    }
    auto gs = stats(g);
    double nd = double(g.n()) * double(gs.diameter);
    auto worst = *std::max_element(m.max_latency.begin(), m.max_latency.end());
    double ratio = double(worst) / nd;
    v.pass = ratio <= C;
    std::ostringstream os;
    os << "max latency " << worst << ", n*d " << nd << ", ratio " << ratio << ", C " << C;
    v.details = os.str();
    return v;
}

/// For lrv_v_chain(k) under LRV-v with bundled priorities: entry j-1 is the
/// time of the first return to s after the walk first enters component j.
inline std::vector<std::uint64_t> lrv_v_cycle_times(int k, std::uint64_t step_cap = 100'000'000) {
    auto inst = lrv_v_chain(k);
    auto tb = inst.tie_breaker_for(policy::lrv_v);
    std::vector<std::uint64_t> out;
    int waiting = 0;  // component whose entry we look for next, or -1 after entry
    bool entered = false;
    auto hook = [&](const walk_state& st, const move& mv) {
        if (!entered && mv.to == lrv_v_chain_entry(waiting)) entered = true;
        else if (entered && mv.to == inst.start) {
            out.push_back(st.t);
            entered = false;
            ++waiting;
        }
        return waiting >= k;
    };
    run_steps(inst.g, policy::lrv_v, tb, inst.start, step_cap, hook,
              run_options{.record_trace = false});
    return out;
}

/// First step at which an LFV-v run of ratio_config(delta, k) sits at s with
/// freq(s) = k*delta and delta-1 neighbors at exactly k.
struct ratio_hit {
    std::optional<std::uint64_t> step;
    walk_state state;
};

inline bool ratio_state_reached(const graph& g, const walk_state& st, node_id s, int delta, int k) {
    if (st.current != s || st.node_freq[s] != std::uint64_t(k) * delta) return false;
    int at_k = 0;
    for (auto [w, e] : g.adj(s))
        if (st.node_freq[w] == std::uint64_t(k)) ++at_k;
    return at_k >= delta - 1;
}

inline ratio_hit find_ratio_state(int delta, int k, std::uint64_t step_cap = 10'000'000) {
    auto inst = ratio_config(delta, k);
    auto tb = inst.tie_breaker_for(policy::lfv_v);
    ratio_hit hit;
    auto hook = [&](const walk_state& st, const move&) {
        if (ratio_state_reached(inst.g, st, inst.start, delta, k)) {
            hit.step = st.t;
            hit.state = st;
            return true;
        }
        return st.node_freq[inst.start] > std::uint64_t(k) * delta;
    };
    run_steps(inst.g, policy::lfv_v, tb, inst.start, step_cap, hook,
              run_options{.record_trace = false});
    return hit;
}

/// Counts right-to-left crossings onto a flower center made while some path
/// node between it and the next center has frequency below center - 1.
inline std::uint64_t flower_blocking_violations(int segments, int petals, std::uint64_t steps) {
    auto inst = flower_path(segments, petals);
    auto lay = flower_path_layout(segments);
    std::vector<int> pos(inst.g.n(), -1);
    for (std::size_t i = 0; i < lay.path.size(); ++i) pos[lay.path[i]] = static_cast<int>(i);
    auto tb = inst.tie_breaker_for(policy::lfv_v);
    node_id prev = inst.start;
    std::uint64_t bad = 0;
    auto hook = [&](const walk_state& st, const move& mv) {
        node_id from = prev;
        prev = mv.to;
        if (pos[from] < 0 || pos[mv.to] != pos[from] - 1) return;
        for (std::size_t c = 0; c < lay.centers.size(); ++c) {
            if (lay.centers[c] != mv.to) continue;
            int end = c + 1 < lay.centers.size() ? pos[lay.centers[c + 1]]
                                                 : static_cast<int>(lay.path.size());
            auto center = st.node_freq[mv.to] - 1;  // before this arrival
            for (int q = pos[mv.to] + 1; q < end; ++q)
                if (st.node_freq[lay.path[q]] + 1 < center) {
                    ++bad;
                    break;
                }
        }
    };
    run_steps(inst.g, policy::lfv_v, tb, inst.start, steps, hook, run_options{.record_trace = false});
    return bad;
}

}  // namespace walkbound
