#include <gtest/gtest.h>

#include <walkbound/graph.hpp>

using namespace walkbound;

namespace {

graph path(std::size_t n) {
    std::vector<std::pair<node_id, node_id>> e;
    for (node_id i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return build_graph(n, e);
}

}  // namespace

TEST(BuildGraph, SingleEdge) {
    auto g = build_graph(2, {{0, 1}});
    EXPECT_EQ(g.n(), 2u);
    EXPECT_EQ(g.m(), 1u);
    auto s = stats(g);
    EXPECT_EQ(s.max_degree, 1u);
    EXPECT_EQ(s.diameter, 1u);
}

TEST(BuildGraph, FourCycle) {
    auto g = build_graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    auto s = stats(g);
    EXPECT_EQ(s.max_degree, 2u);
    EXPECT_EQ(s.diameter, 2u);
}

TEST(BuildGraph, ParallelEdgesKeepDistinctIds) {
    auto g = build_graph(3, {{0, 1}, {0, 1}, {1, 2}});
    EXPECT_EQ(g.n(), 3u);
    EXPECT_EQ(g.m(), 3u);
    ASSERT_EQ(g.degree(0), 2u);
    EXPECT_EQ(g.adj(0)[0].edge, 0u);
    EXPECT_EQ(g.adj(0)[1].edge, 1u);
    EXPECT_EQ(g.adj(0)[0].to, 1u);
    EXPECT_EQ(g.adj(0)[1].to, 1u);
}

TEST(BuildGraph, EdgeIdsFollowInputOrder) {
    auto g = build_graph(3, {{2, 1}, {0, 2}});
    EXPECT_EQ(g.endpoints(0), std::make_pair(node_id{2}, node_id{1}));
    EXPECT_EQ(g.other(1, 2), 0u);
    EXPECT_EQ(g.slot(2, 1), 1u);
    EXPECT_EQ(g.slot(0, 0), g.degree(0));
}

TEST(BuildGraph, AdjacencyIsSymmetric) {
    auto g = build_graph(5, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 2}, {0, 1}});
    for (node_id u = 0; u < g.n(); ++u)
        for (auto [v, e] : g.adj(u)) {
            bool back = false;
            for (auto [w, f] : g.adj(v)) back |= (w == u && f == e);
            EXPECT_TRUE(back) << u << "-" << v << " via " << e;
        }
}

TEST(BuildGraph, Rejections) {
    EXPECT_THROW(build_graph(0, {}), graph_error);
    EXPECT_THROW(build_graph(2, {{0, 2}}), graph_error);
    EXPECT_THROW(build_graph(2, {{1, 1}}), graph_error);
    EXPECT_NO_THROW(build_graph(1, {}));
}

TEST(BuildGraph, DisconnectedReportsLowestNodeOfOffendingComponent) {
    try {
        build_graph(5, {{0, 1}, {3, 4}, {2, 4}});
        FAIL() << "expected disconnected_error";
    } catch (const disconnected_error& e) {
        EXPECT_EQ(e.lowest, 2u);
    }
}

TEST(Stats, PathAndStar) {
    auto s = stats(path(5));
    EXPECT_EQ(s.max_degree, 2u);
    EXPECT_EQ(s.diameter, 4u);

    std::vector<std::pair<node_id, node_id>> e;
    for (node_id i = 1; i <= 6; ++i) e.emplace_back(0, i);
    auto st = stats(build_graph(7, e));
    EXPECT_EQ(st.max_degree, 6u);
    EXPECT_EQ(st.diameter, 2u);
    EXPECT_FALSE(st.planar_note);
}

TEST(Stats, SingleNode) {
    auto s = stats(build_graph(1, {}));
    EXPECT_EQ(s.diameter, 0u);
    EXPECT_EQ(s.max_degree, 0u);
}
