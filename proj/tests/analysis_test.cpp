#include <gtest/gtest.h>

#include <cmath>

#include <walkbound/analysis.hpp>

using namespace walkbound;

namespace {

graph star(std::size_t leaves) {
    std::vector<std::pair<node_id, node_id>> e;
    for (node_id i = 1; i <= leaves; ++i) e.emplace_back(0, i);
    return build_graph(leaves + 1, e);
}

trace walk_of(const graph& g, policy p, std::uint64_t steps, node_id start = 0) {
    auto tb = tie_breaker::lowest_index();
    return run_steps(g, p, tb, start, steps).tr;
}

}  // namespace

TEST(Metrics, ForcedPathAndStar) {
    auto path3 = build_graph(3, {{0, 1}, {1, 2}});
    EXPECT_EQ(metrics(walk_of(path3, policy::lrv_v, 2), path3, 0).cover_time, std::optional<std::uint64_t>(2));
    auto s5 = star(5);
    auto m = metrics(walk_of(s5, policy::lfv_v, 9), s5, 0);
    EXPECT_EQ(m.cover_time, std::optional<std::uint64_t>(9));
    EXPECT_EQ(m.max_freq, 4u);
    EXPECT_EQ(m.histogram[1], 5u);
    EXPECT_EQ(m.histogram[4], 1u);
}

TEST(Metrics, MatchesEngine) {
    auto inst = random_bounded_degree(25, 4, 9);
    for (auto p : all_policies) {
        auto tb = tie_breaker::seeded_random(1);
        auto r = run_until_covered(inst.g, p, tb, 0, 100'000);
        auto m = metrics(r.tr, inst.g, 0);
        EXPECT_EQ(m.cover_time, r.metrics.cover_time);
        EXPECT_EQ(m.max_freq, r.metrics.max_freq);
        EXPECT_EQ(m.histogram, r.metrics.histogram);
    }
}

TEST(Metrics, LatencyWindow) {
    auto p2 = build_graph(2, {{0, 1}});
    auto m = metrics(walk_of(p2, policy::lfv_v, 20), p2, 10);
    ASSERT_TRUE(m.latency_available);
    EXPECT_EQ(m.max_latency, (std::vector<std::uint64_t>{2, 2}));
    auto none = metrics(walk_of(p2, policy::lfv_v, 5), p2, 6);
    EXPECT_FALSE(none.latency_available);
}

TEST(Latency, FourCycleWithinBound) {
    auto c4 = build_graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    auto tr = walk_of(c4, policy::lfv_e, 400);
    auto m = metrics(tr, c4, 300);
    ASSERT_TRUE(m.latency_available);
    for (auto l : m.max_latency) EXPECT_LE(l, 16u * 4 * 2);
    EXPECT_TRUE(check_lfv_e_latency(c4, tr, 300).pass);
}

TEST(Latency, FourCycleChainReportsRatio) {
    auto inst = four_cycle_chain(8);
    auto tb = inst.tie_breaker_for(policy::lfv_e);
    auto cover = run_until_covered(inst.g, policy::lfv_e, tb, inst.start, 1'000'000);
    ASSERT_TRUE(cover.metrics.cover_time);
    auto T = *cover.metrics.cover_time;
    auto tb2 = inst.tie_breaker_for(policy::lfv_e);
    auto r = run_steps(inst.g, policy::lfv_e, tb2, inst.start, 5 * T);
    auto v = check_lfv_e_latency(inst.g, r.tr, 4 * T);
    EXPECT_TRUE(v.pass) << v.details;
    EXPECT_NE(v.details.find("ratio"), std::string::npos);
    EXPECT_FALSE(check_lfv_e_latency(inst.g, r.tr, 6 * T).pass);
}

TEST(FrequencyLemma, BasisAndStar) {
    auto s3 = star(3);
    auto st = walk_state::initial(s3, 0);
    EXPECT_TRUE(check_frequency_lemma(s3, st, 0).pass);
    auto tb = tie_breaker::lowest_index();
    auto r = run_steps(s3, policy::lfv_v, tb, 0, 4);
    EXPECT_EQ(r.state.node_freq[0], 2u);
    EXPECT_TRUE(check_frequency_lemma(s3, r.state, 0).pass);
}

TEST(FrequencyLemma, FlagsCounterexample) {
    auto s3 = star(3);
    auto st = walk_state::initial(s3, 0);
    st.node_freq = {2, 2, 0, 0};
    auto v = check_frequency_lemma(s3, st, 0);
    EXPECT_FALSE(v.pass);
    EXPECT_FALSE(v.details.empty());
}

TEST(FrequencyLemma, HoldsAtEveryStepOfRandomSweeps) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        auto inst = random_bounded_degree(seed < 25 ? 30 : 20, 3, seed);
        auto tb = tie_breaker::seeded_random(seed);
        std::uint64_t bad = 0;
        run_steps(inst.g, policy::lfv_v, tb, inst.start, 600, [&](const walk_state& st, const move&) {
            bad += !check_frequency_lemma(inst.g, st, inst.start).pass;
        });
        EXPECT_EQ(bad, 0u) << "seed " << seed;
    }
}

TEST(DeltaD, SaturatingPow) {
    EXPECT_EQ(saturating_pow(3, 4), 81u);
    EXPECT_EQ(saturating_pow(1, 1000), 1u);
    EXPECT_EQ(saturating_pow(10, 40), UINT64_MAX);
}

TEST(DeltaD, HoldsBeforeCoverage) {
    auto e = build_graph(2, {{0, 1}});
    EXPECT_TRUE(check_delta_d_bound(e, walk_state::initial(e, 0)).pass);

    auto check_run = [](const generated_instance& inst, tie_breaker tb) {
        auto gs = stats(inst.g);
        std::uint64_t bad = 0;
        run_until_covered(inst.g, policy::lfv_v, tb, inst.start, 10'000'000, [&](const walk_state& st, const move&) {
            bad += !check_delta_d_bound(gs, st).pass;
        });
        return bad;
    };
    auto cat = caterpillar({4, 11, 3});
    EXPECT_EQ(check_run(cat, cat.tie_breaker_for(policy::lfv_v)), 0u);
    for (std::uint64_t s = 0; s < 30; ++s) {
        auto inst = random_bounded_degree(10 + int(s % 21), 2 + int(s % 3), s);
        EXPECT_EQ(check_run(inst, tie_breaker::seeded_random(s)), 0u) << "seed " << s;
    }
}

TEST(DeltaD, FlagsViolation) {
    auto p3 = build_graph(3, {{0, 1}, {1, 2}});
    auto st = walk_state::initial(p3, 0);
    st.node_freq = {0, 5, 0};
    st.node_last = {0, 5, never};
    EXPECT_FALSE(check_delta_d_bound(p3, st).pass);
}

TEST(DegreeTable, DefinitionSpotChecks) {
    const int l = 13;
    auto t = make_degree_table(l);
    for (int j = 3; j <= l - 2; j += 2) EXPECT_EQ(t.at(l + 1, j), j);
    for (int i = 1; i <= l; i += 2)
        for (int j = 3; j < l - i; ++j) EXPECT_EQ(t.at(i, j), 3);
    EXPECT_EQ(t.at(l + 1, l - 2), l - 2);
    EXPECT_FALSE(t.at(0, 3));
    EXPECT_FALSE(t.at(1, 2));
    EXPECT_THROW(make_degree_table(4), param_error);
    EXPECT_THROW(make_degree_table(1), param_error);
}

TEST(DegreeTable, PrintedTableShape) {
    const auto& rows = printed_degree_table();
    ASSERT_EQ(rows.size(), std::size_t(printed_degree_table_l + 2));
    EXPECT_EQ(rows[0], std::vector<int>(13, 1));
    EXPECT_EQ(rows[13].back(), 12);
    EXPECT_EQ(*std::max_element(rows[14].begin(), rows[14].end()), 11);
    // Odd rows are non-decreasing left to right, as are the even ones.
    for (const auto& r : rows)
        for (std::size_t c = 1; c < r.size(); ++c)
            if (r[c] >= 0) EXPECT_GE(r[c], r[c - 1]);
}

TEST(GrowthFit, SyntheticPower) {
    std::vector<std::pair<double, double>> pts;
    for (double n : {4.0, 8.0, 16.0, 32.0}) pts.emplace_back(n, n * n);
    auto f = fit_growth(pts, growth_model::power);
    EXPECT_NEAR(f.slope, 2.0, 1e-12);
    EXPECT_NEAR(f.residual, 0.0, 1e-12);
}

TEST(GrowthFit, SyntheticExponential) {
    std::vector<std::pair<double, double>> pts;
    for (int k = 4; k <= 16; ++k) pts.emplace_back(k, 22.0 * (std::pow(2.0, k) - 1));
    auto f = fit_growth(pts, growth_model::exponential);
    EXPECT_NEAR(f.slope, std::log(2.0), 0.01 * std::log(2.0));
}

TEST(GrowthFit, Rejections) {
    EXPECT_THROW(fit_growth({{1, 1}, {2, 0}, {3, 1}}, growth_model::power), param_error);
    EXPECT_THROW(fit_growth({{1, 1}, {2, 2}}, growth_model::power), param_error);
    EXPECT_THROW(fit_growth({{2, 1}, {2, 2}, {2, 3}}, growth_model::power), param_error);
}

TEST(Caterpillar, Pass2ClosedForm) {
    caterpillar_params p{8, 11, 5};
    auto run = trace_caterpillar(p, 10'000'000, 2);
    ASSERT_GE(run.passes.size(), 2u);
    for (int i = 2; i <= p.l; ++i) EXPECT_EQ(run.passes[1][i], caterpillar_pass2_freq(p, i)) << "i=" << i;
}

TEST(Caterpillar, SmallestCaseGrowsLinearly) {
    auto rep = fit_caterpillar_degrees(3, {8, 12, 16, 24});
    EXPECT_TRUE(rep.complete);
    EXPECT_NEAR(rep.last_node_exit_slope, 1.0, 0.4);
}

TEST(Caterpillar, RootIsFixedAfterPhase1) {
    for (int b : {6, 8, 12}) {
        caterpillar_params p{b, 11, 5};
        auto run = trace_caterpillar(p, 10'000'000, 3);
        ASSERT_GE(run.passes.size(), 3u);
        EXPECT_EQ(run.passes[0][0] + 1, std::uint64_t(b + 11 + 1));
    }
}

TEST(LrvVChain, CycleRatiosApproachTwo) {
    auto t = lrv_v_cycle_times(10);
    ASSERT_EQ(t.size(), 10u);
    for (std::size_t i = 2; i < t.size(); ++i) {
        double r = double(t[i]) / double(t[i - 1]);
        EXPECT_GE(r, 1.8);
        EXPECT_LE(r, 2.2);
    }
}
