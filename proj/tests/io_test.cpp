#include <gtest/gtest.h>

#include <filesystem>

#include <walkbound/io.hpp>

using namespace walkbound;

TEST(InstanceJson, RoundTripKeepsGraphAndSchedules) {
    for (const auto& inst : {four_cycle_chain(3), caterpillar({4, 11, 3}), ratio_config(3, 2),
                             flower_path(2, 2), lrv_v_chain(2)}) {
        auto j = io::instance_to_json(inst);
        auto back = io::instance_from_json(io::json::parse(j.dump()));
        EXPECT_EQ(back.g.edges(), inst.g.edges()) << inst.family;
        EXPECT_EQ(back.start, inst.start);
        EXPECT_EQ(back.family, inst.family);
        EXPECT_EQ(back.params, inst.params);
        for (auto p : all_policies) {
            auto a = inst.tie_breaker_for(p), b = back.tie_breaker_for(p);
            auto ra = run_steps(inst.g, p, a, inst.start, 300);
            auto rb = run_steps(back.g, p, b, back.start, 300);
            EXPECT_EQ(ra.tr.moves, rb.tr.moves) << inst.family << " " << to_string(p);
        }
        EXPECT_EQ(io::instance_to_json(back).dump(), j.dump());
    }
}

// Priorities are stored as neighbor ids; parallel edges to the same neighbor
// are restored in adjacency order.
TEST(InstanceJson, ParallelEdgesInPriorities) {
    generated_instance inst;
    inst.g = build_graph(3, {{0, 1}, {0, 1}, {1, 2}});
    inst.priorities = {{1, 0}, {2, 1, 0}, {2}};
    auto back = io::instance_from_json(io::instance_to_json(inst));
    EXPECT_EQ(back.priorities, (priority_lists{{0, 1}, {2, 0, 1}, {2}}));
}

TEST(InstanceJson, MinimalInputDefaultsToLowestIndex) {
    auto j = io::json::parse(R"({"n": 3, "edges": [[0, 2], [2, 1]]})");
    auto inst = io::instance_from_json(j);
    EXPECT_EQ(inst.start, 0u);
    EXPECT_NO_THROW(inst.tie_breaker_for(policy::lfv_v));
}

TEST(InstanceJson, Rejections) {
    EXPECT_THROW(io::instance_from_json(io::json::parse(R"({"edges": []})")), graph_error);
    EXPECT_THROW(io::instance_from_json(io::json::parse(R"({"n": 2, "edges": [[0]]})")), graph_error);
    EXPECT_THROW(io::instance_from_json(io::json::parse(R"({"n": 3, "edges": [[0, 1]]})")), disconnected_error);
    EXPECT_THROW(io::instance_from_json(io::json::parse(R"({"n": 2, "edges": [[0, 1]], "start": 4})")),
                 graph_error);
    EXPECT_THROW(io::read_json_file("/nonexistent/graph.json"), error);
}

TEST(TraceJson, RoundTrip) {
    auto inst = random_bounded_degree(12, 3, 4);
    auto tb = tie_breaker::seeded_random(3);
    auto r = run_steps(inst.g, policy::lfv_e, tb, 0, 50);
    auto back = io::trace_from_json(io::json::parse(io::trace_to_json(r.tr).dump()), 0);
    EXPECT_EQ(back.moves, r.tr.moves);
}

TEST(MetricsJson, UncoveredIsNull) {
    run_metrics m;
    m.steps = 3;
    auto j = io::metrics_to_json(m);
    EXPECT_TRUE(j["cover_time"].is_null());
    EXPECT_FALSE(j["covered"].get<bool>());
    m.cover_time = 1;
    m.covered = true;
    EXPECT_EQ(io::metrics_to_json(m).dump(), R"({"cover_time":1,"covered":true,"max_freq":0,"steps":3})");
}

TEST(SweepCsv, RowsMatchHeader) {
    io::sweep_row row;
    row.family = "four_cycle_chain";
    row.n = 24;
    row.pol = policy::lrv_e;
    row.tiebreak = "static-priority";
    auto cols = [](const std::string& s) { return std::count(s.begin(), s.end(), ',') + 1; };
    EXPECT_EQ(cols(io::csv_line(row)), cols(io::sweep_header));
    EXPECT_NE(io::csv_line(row).find(",,"), std::string::npos);  // empty cover_time
}

TEST(Files, WriteThenRead) {
    auto path = std::filesystem::temp_directory_path() / "walkbound_io_test.json";
    io::write_text_file(path.string(), R"({"n": 1, "edges": []})");
    auto inst = io::instance_from_json(io::read_json_file(path.string()));
    EXPECT_EQ(inst.g.n(), 1u);
    std::filesystem::remove(path);
}
