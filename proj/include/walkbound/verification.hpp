#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "analysis.hpp"
#include "generators.hpp"
#include "oracle.hpp"
#include "walk.hpp"

namespace walkbound::verify {

// Pinned tolerances and budgets.
inline constexpr double growth_degree_tol = 0.4;
inline constexpr double lrv_e_slope_tol = 0.2;
inline constexpr double lfv_slope_tol = 0.25;
inline constexpr double doubling_lo = 1.8, doubling_hi = 2.2;
inline constexpr double latency_constant = 16.0;
inline constexpr int random_corpus_size = 100;

struct outcome {
    int id = 0;
    verdict v;
    double seconds = 0;
    double budget_seconds = 0;  // 0 means no runtime requirement

    bool ok() const { return v.pass && (budget_seconds == 0 || seconds < budget_seconds); }
};

template <class Fn>
outcome timed(int id, double budget, Fn fn) {
    auto t0 = std::chrono::steady_clock::now();
    outcome o{id, fn(), 0, budget};
    o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return o;
}

inline std::string join(const std::vector<double>& xs, int prec = 3) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(prec);
    for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? " " : "") << xs[i];
    return os.str();
}

inline verdict caterpillar_phase1() {
    verdict v{"caterpillar phase-1 frequencies", true, ""};
    std::ostringstream os;
    for (caterpillar_params p : {caterpillar_params{4, 11, 3}, caterpillar_params{6, 11, 5}}) {
        auto run = trace_caterpillar(p, 10'000'000, 1);
        auto want = caterpillar_phase1_visits(p);
        std::vector<std::uint64_t> got = run.passes.empty() ? std::vector<std::uint64_t>{}
                                                            : run.passes.front();
        if (!got.empty()) ++got[0];  // placement at the root counts as a visit
        bool same = got == want;
        v.pass = v.pass && same;
        os << "(b=" << p.b << ",c=" << p.c << ",l=" << p.l << ") visits";
        for (auto x : got) os << ' ' << x;
        os << (same ? " match; " : " MISMATCH; ");
    }
    v.details = os.str();
    return v;
}

inline verdict caterpillar_pass2() {
    verdict v{"caterpillar pass-2 frequencies and claim", true, ""};
    std::ostringstream os;
    for (caterpillar_params p : {caterpillar_params{8, 11, 5}, caterpillar_params{12, 11, 5},
                                 caterpillar_params{10, 11, 7}}) {
        auto run = trace_caterpillar(p, 100'000'000, 2);
        if (run.passes.size() < 2) {
            v.pass = false;
            os << "b=" << p.b << " no second pass; ";
            continue;
        }
        const auto& f = run.passes[1];
        // Node 1 sits below the root rather than below an odd/even neighbour
        // pair, so the display is checked from node 2 on.
        int mismatches = 0;
        for (int i = 2; i <= p.l; ++i)
            if (f[i] != caterpillar_pass2_freq(p, i)) ++mismatches;
        int claim = 0;
        for (int i = 1; i <= p.l - 2; ++i)
            if (!(f[i] > f[i + 2])) ++claim;
        v.pass = v.pass && mismatches == 0 && claim == 0;
        os << "(b=" << p.b << ",l=" << p.l << ") pass-2";
        for (auto x : f) os << ' ' << x;
        os << " display mismatches " << mismatches << ", claim failures " << claim << "; ";
    }
    v.details = os.str();
    return v;
}

inline verdict caterpillar_growth() {
    verdict v{"caterpillar last-node degree", false, ""};
    auto rep = fit_caterpillar_degrees(5, {8, 12, 16});
    const double target = 3;
    v.pass = rep.complete && std::abs(rep.last_node_exit_slope - target) <= growth_degree_tol;
    std::ostringstream os;
    os.precision(4);
    os << "slope at exit pass " << rep.last_node_exit_slope << " (target 3 +/- "
       << growth_degree_tol << "); slope at coverage " << rep.last_node_cover_slope;
    v.details = os.str();
    return v;
}

inline verdict lrv_v_doubling() {
    verdict v{"LRV-v cycle-time doubling", true, ""};
    auto T = lrv_v_cycle_times(10);
    if (T.size() < 10) {
        v.pass = false;
        v.details = "only " + std::to_string(T.size()) + " cycle times measured";
        return v;
    }
    std::vector<double> ratios;
    for (int k = 3; k <= 10; ++k) {
        double r = double(T[k - 1]) / double(T[k - 2]);
        ratios.push_back(r);
        if (r < doubling_lo || r > doubling_hi) v.pass = false;
    }
    v.details = "ratios k=3..10: " + join(ratios);
    return v;
}

inline growth_fit four_cycle_sweep(policy p) {
    std::vector<std::pair<double, double>> pts;
    for (int k : {4, 8, 16, 32, 48}) {
        auto inst = four_cycle_chain(k);
        auto tb = inst.tie_breaker_for(p);
        auto r = run_until_covered(inst.g, p, tb, inst.start, 100'000'000, no_hook{},
                                   run_options{.record_trace = false});
        pts.emplace_back(double(inst.g.n()), double(r.metrics.cover_time.value_or(0)));
    }
    return fit_growth(pts, growth_model::power);
}

inline verdict lrv_e_quadratic() {
    auto f = four_cycle_sweep(policy::lrv_e);
    verdict v{"LRV-e quadratic", std::abs(f.slope - 2.0) <= lrv_e_slope_tol, ""};
    std::ostringstream os;
    os.precision(4);
    os << "slope " << f.slope << " residual " << f.residual;
    v.details = os.str();
    return v;
}

inline verdict lfv_quadratic() {
    auto a = four_cycle_sweep(policy::lfv_v);
    auto b = four_cycle_sweep(policy::lfv_e);
    verdict v{"LFV-v and LFV-e quadratic",
              std::abs(a.slope - 2.0) <= lfv_slope_tol && std::abs(b.slope - 2.0) <= lfv_slope_tol, ""};
    std::ostringstream os;
    os.precision(4);
    os << "LFV-v slope " << a.slope << ", LFV-e slope " << b.slope;
    v.details = os.str();
    return v;
}

/// Random graphs plus one small instance of every family.
inline std::vector<generated_instance> corpus() {
    std::vector<generated_instance> out;
    for (int s = 0; s < random_corpus_size; ++s) {
        int n = 2 + s % 29;
        int dmax = 2 + s % 3;
        out.push_back(random_bounded_degree(n, dmax, 1000 + s));
    }
    out.push_back(caterpillar({4, 11, 3}));
    out.push_back(caterpillar({6, 11, 5}));
    out.push_back(lrv_v_chain(3));
    out.push_back(four_cycle_chain(4));
    out.push_back(flower_path(2, 2));
    out.push_back(flower_path(1, 3));
    out.push_back(ratio_config(3, 2));
    out.push_back(ratio_config(4, 1));
    return out;
}

// LFV-v runs over the corpus: coverage, then as many steps again.
template <class Check>
std::uint64_t lfv_v_corpus_violations(Check check, std::string& first) {
    std::uint64_t bad = 0;
    for (const auto& inst : corpus()) {
        auto tb = inst.tie_breaker_for(policy::lfv_v);
        auto probe = run_until_covered(inst.g, policy::lfv_v, tb, inst.start, 10'000'000, no_hook{},
                                       run_options{.record_trace = false});
        tb.reset();
        std::size_t unseen = inst.g.n() - 1;
        auto hook = [&](const walk_state& st, const move& mv) {
            if (st.node_freq[mv.to] == 1 && mv.to != inst.start) --unseen;
            auto v = check(inst, st, unseen);
            if (!v.pass) {
                if (bad++ == 0) first = inst.family + ": " + v.details;
            }
        };
        run_steps(inst.g, policy::lfv_v, tb, inst.start, 2 * probe.state.t, hook,
                  run_options{.record_trace = false});
    }
    return bad;
}

inline verdict frequency_lemma_corpus() {
    std::string first;
    auto bad = lfv_v_corpus_violations(
        [](const generated_instance& inst, const walk_state& st, std::size_t) {
            return check_frequency_lemma(inst.g, st, inst.start);
        },
        first);
    return {"frequency lemma", bad == 0,
            std::to_string(corpus().size()) + " LFV-v runs, violations " + std::to_string(bad) +
                (first.empty() ? "" : "; first: " + first)};
}

inline verdict delta_d_corpus() {
    std::string first;
    std::map<const graph*, graph_stats> cache;
    auto bad = lfv_v_corpus_violations(
        [&](const generated_instance& inst, const walk_state& st, std::size_t unseen) {
            if (unseen == 0) return verdict{"", true, ""};
            auto it = cache.find(&inst.g);
            if (it == cache.end()) it = cache.emplace(&inst.g, stats(inst.g)).first;
            return check_delta_d_bound(it->second, st);
        },
        first);
    return {"delta^d bound", bad == 0,
            "pre-coverage violations " + std::to_string(bad) + (first.empty() ? "" : "; first: " + first)};
}

inline verdict ratio_construction() {
    verdict v{"ratio construction", true, ""};
    std::ostringstream os;
    for (int k : {1, 2, 4}) {
        auto hit = find_ratio_state(3, k);
        bool ok = hit.step.has_value();
        v.pass = v.pass && ok;
        os << "k=" << k << (ok ? " reached at step " + std::to_string(*hit.step) : " NOT reached")
           << "; ";
    }
    auto inst = ratio_config(3, 1);
    auto path = find_reachable(
        inst.g, policy::lfv_v, inst.start,
        [&](const walk_state& st) { return ratio_state_reached(inst.g, st, inst.start, 3, 1); },
        [&](const walk_state& st) { return st.node_freq[inst.start] > 3; });
    v.pass = v.pass && path.has_value();
    os << "oracle reachability k=1: " << (path ? "witness of " + std::to_string(path->size()) + " moves" : "none");
    v.details = os.str();
    return v;
}

inline verdict lfv_e_latency() {
    auto inst = four_cycle_chain(8);
    auto tb = inst.tie_breaker_for(policy::lfv_e);
    auto probe = run_until_covered(inst.g, policy::lfv_e, tb, inst.start, 10'000'000);
    auto cover = probe.metrics.cover_time.value_or(0);
    tb.reset();
    auto r = run_steps(inst.g, policy::lfv_e, tb, inst.start, 8 * cover);
    auto v = check_lfv_e_latency(inst.g, r.tr, 4 * cover, latency_constant);
    v.name = "LFV-e latency";
    v.details = "cover " + std::to_string(cover) + ", run " + std::to_string(8 * cover) + "; " + v.details;
    return v;
}

/// Every family instantiated at <= 12 nodes.
inline std::vector<generated_instance> small_instances() {
    std::vector<generated_instance> out{lrv_v_chain(1),     four_cycle_chain(1), four_cycle_chain(2),
                                        flower_path(1, 1),  flower_path(1, 3),   flower_path(2, 1),
                                        ratio_config(3, 1), ratio_config(4, 1)};
    for (std::uint64_t s = 1; s <= 4; ++s) out.push_back(random_bounded_degree(4 + 2 * int(s), 3, s));
    return out;
}

inline verdict oracle_consistency() {
    verdict v{"oracle consistency", true, ""};
    std::size_t checks = 0, replays = 0;
    std::ostringstream fail;
    for (const auto& inst : small_instances()) {
        for (policy p : all_policies) {
            auto o = worst_case_cover(inst.g, p, inst.start);
            auto wtb = tie_breaker::scripted(o.witness);
            auto a = run_until_covered(inst.g, p, wtb, inst.start, o.max_cover_time + 1);
            wtb.reset();
            auto b = run_until_covered(inst.g, p, wtb, inst.start, o.max_cover_time + 1);
            bool replay = a.metrics.cover_time == o.max_cover_time && a.state == b.state &&
                          a.tr.moves == b.tr.moves;
            ++replays;
            if (!replay || o.lower_bound_only) {
                v.pass = false;
                fail << inst.family << "/" << to_string(p) << " witness replay failed; ";
            }
            std::vector<tie_breaker> tbs{inst.tie_breaker_for(p), tie_breaker::lowest_index()};
            for (std::uint64_t s = 1; s <= 5; ++s) tbs.push_back(tie_breaker::seeded_random(s));
            for (auto& tb : tbs) {
                auto r = run_until_covered(inst.g, p, tb, inst.start, 1'000'000, no_hook{},
                                           run_options{.record_trace = false});
                ++checks;
                if (!r.metrics.cover_time || *r.metrics.cover_time > o.max_cover_time) {
                    v.pass = false;
                    fail << inst.family << "/" << to_string(p) << "/" << tb.describe()
                         << " exceeds oracle; ";
                }
            }
        }
    }
    v.details = std::to_string(small_instances().size()) + " instances, " + std::to_string(checks) +
                " tie-breaker runs, " + std::to_string(replays) + " witness replays; " + fail.str();
    return v;
}

inline verdict conservation_corpus() {
    verdict v{"engine conservation", true, ""};
    std::size_t runs = 0;
    for (const auto& inst : corpus())
        for (policy p : all_policies)
            for (int which = 0; which < 2; ++which) {
                auto tb = which == 0 ? inst.tie_breaker_for(p) : tie_breaker::seeded_random(runs);
                auto r = run_until_covered(inst.g, p, tb, inst.start, 10'000'000, no_hook{},
                                           run_options{.record_trace = false});
                ++runs;
                auto sn = std::accumulate(r.state.node_freq.begin(), r.state.node_freq.end(), std::uint64_t{0});
                auto se = std::accumulate(r.state.edge_freq.begin(), r.state.edge_freq.end(), std::uint64_t{0});
                if (sn != r.state.t || se != r.state.t) {
                    v.pass = false;
                    v.details += inst.family + "/" + std::string(to_string(p)) + " breaks conservation; ";
                }
            }
    v.details = std::to_string(runs) + " runs checked; " + v.details;
    return v;
}

struct criterion {
    int id;
    const char* suite;
    double budget_seconds;
    std::function<verdict()> fn;
};

inline const std::vector<criterion>& criteria() {
    static const std::vector<criterion> all{
        {1, "caterpillar", 1.0, caterpillar_phase1},
        {2, "caterpillar", 0, caterpillar_pass2},
        {3, "growth", 60.0, caterpillar_growth},
        {4, "growth", 60.0, lrv_v_doubling},
        {5, "growth", 30.0, lrv_e_quadratic},
        {6, "growth", 60.0, lfv_quadratic},
        {7, "lemma", 60.0, frequency_lemma_corpus},
        {8, "delta-d", 60.0, delta_d_corpus},
        {9, "ratio", 0, ratio_construction},
        {10, "latency", 30.0, lfv_e_latency},
        {11, "oracle-consistency", 120.0, oracle_consistency},
        {12, "conservation", 0, conservation_corpus},
    };
    return all;
}

inline outcome run_criterion(const criterion& c) { return timed(c.id, c.budget_seconds, c.fn); }

}  // namespace walkbound::verify
