#pragma once

#include <cstdint>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "analysis.hpp"
#include "error.hpp"
#include "generators.hpp"
#include "graph.hpp"
#include "oracle.hpp"
#include "walk.hpp"

namespace walkbound::io {

using json = nlohmann::ordered_json;

inline json priorities_to_json(const graph& g, const priority_lists& pr) {
    json out = json::object();
    for (node_id v = 0; v < pr.size(); ++v) {
        json row = json::array();
        for (edge_id e : pr[v]) row.push_back(g.other(e, v));
        out[std::to_string(v)] = row;
    }
    return out;
}

/// Neighbor lists to incidence orders. Repeated neighbors consume parallel
/// edges in adjacency order. Nodes left out fall back to lowest-index order.
inline priority_lists priorities_from_json(const graph& g, const json& j) {
    auto pr = detail::lowest_index_order(g);
    for (auto it = j.begin(); it != j.end(); ++it) {
        std::size_t v = 0;
        try {
            v = std::stoul(it.key());
        } catch (const std::exception&) {
            throw graph_error("priorities: bad node key '" + it.key() + "'");
        }
        if (v >= g.n()) throw graph_error("priorities: node " + it.key() + " out of range");
        std::vector<bool> used(g.degree(v), false);
        std::vector<edge_id> order;
        for (const auto& w : it.value()) {
            auto nb = w.get<node_id>();
            bool found = false;
            for (std::size_t s = 0; s < g.degree(v); ++s)
                if (!used[s] && g.adj(v)[s].to == nb) {
                    used[s] = true;
                    order.push_back(g.adj(v)[s].edge);
                    found = true;
                    break;
                }
            if (!found)
                throw graph_error("priorities: node " + it.key() + " lists non-neighbor " +
                                  std::to_string(nb));
        }
        if (order.size() != g.degree(v))
            throw graph_error("priorities: node " + it.key() + " must list every incidence");
        pr[v] = std::move(order);
    }
    return pr;
}

inline json instance_to_json(const generated_instance& inst) {
    json j;
    j["n"] = inst.g.n();
    json edges = json::array();
    for (auto [u, v] : inst.g.edges()) edges.push_back({u, v});
    j["edges"] = edges;
    j["start"] = inst.start;
    j["priorities"] = priorities_to_json(inst.g, inst.priorities);
    if (!inst.policy_priorities.empty()) {
        json pp = json::object();
        for (const auto& [p, pr] : inst.policy_priorities)
            pp[std::string(to_string(p))] = priorities_to_json(inst.g, pr);
        j["policy_priorities"] = pp;
    }
    if (!inst.family.empty()) j["family"] = inst.family;
    if (!inst.params.empty()) {
        json ps = json::object();
        for (const auto& [k, v] : inst.params) ps[k] = v;
        j["params"] = ps;
    }
    if (inst.predicted) j["predicted"] = {{"formula", inst.predicted->formula}, {"value", inst.predicted->value}};
    return j;
}

inline generated_instance instance_from_json(const json& j) {
    generated_instance inst;
    try {
        auto n = j.at("n").get<std::size_t>();
        std::vector<std::pair<node_id, node_id>> edges;
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 2) throw graph_error("edges must be [u, v] pairs");
            edges.emplace_back(e[0].get<node_id>(), e[1].get<node_id>());
        }
        inst.g = build_graph(n, edges);
        inst.start = j.value("start", node_id{0});
        if (inst.start >= n) throw graph_error("start out of range");
        inst.priorities = j.contains("priorities") ? priorities_from_json(inst.g, j["priorities"])
                                                   : detail::lowest_index_order(inst.g);
        if (j.contains("policy_priorities"))
            for (auto it = j["policy_priorities"].begin(); it != j["policy_priorities"].end(); ++it)
                inst.policy_priorities[parse_policy(it.key())] = priorities_from_json(inst.g, it.value());
        inst.family = j.value("family", std::string{});
        if (j.contains("params"))
            for (auto it = j["params"].begin(); it != j["params"].end(); ++it)
                inst.params.emplace_back(it.key(), it.value().get<std::int64_t>());
        if (j.contains("predicted"))
            inst.predicted = predicted_value{j["predicted"].value("formula", std::string{}),
                                             j["predicted"].value("value", 0.0)};
    } catch (const json::exception& e) {
        throw graph_error(std::string("graph json: ") + e.what());
    }
    return inst;
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw graph_error(path + ": " + e.what());
    }
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw error("cannot write " + path);
    out << text;
}

inline json trace_to_json(const trace& tr) {
    json a = json::array();
    for (const auto& mv : tr.moves) a.push_back({mv.edge, mv.to});
    return a;
}

inline trace trace_from_json(const json& j, node_id start) {
    trace tr;
    tr.start = start;
    for (const auto& mv : j) tr.moves.push_back({mv.at(0).get<edge_id>(), mv.at(1).get<node_id>()});
    return tr;
}

inline json metrics_to_json(const run_metrics& m) {
    json j;
    j["cover_time"] = m.cover_time ? json(*m.cover_time) : json(nullptr);
    j["covered"] = m.covered;
    j["max_freq"] = m.max_freq;
    j["steps"] = m.steps;
    return j;
}

inline json oracle_to_json(const oracle_result& r) {
    return {{"max_cover_time", r.max_cover_time},
            {"lower_bound_only", r.lower_bound_only},
            {"nodes_explored", r.nodes_explored},
            {"witness", r.witness}};
}

inline json verdict_to_json(const verdict& v) {
    return {{"name", v.name}, {"pass", v.pass}, {"details", v.details}};
}

inline constexpr const char* sweep_header =
    "family,n,m,delta,d,policy,tiebreak,seed,cover_time,max_freq,max_latency";

struct sweep_row {
    std::string family;
    std::size_t n = 0, m = 0, delta = 0, d = 0;
    policy pol = policy::lrv_v;
    std::string tiebreak;
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> cover_time;  // empty means not covered
    std::uint64_t max_freq = 0;
    std::optional<std::uint64_t> max_latency;
};

inline std::string csv_line(const sweep_row& r) {
    std::ostringstream os;
    os << r.family << ',' << r.n << ',' << r.m << ',' << r.delta << ',' << r.d << ','
       << to_string(r.pol) << ',' << r.tiebreak << ',' << r.seed << ',';
    if (r.cover_time) os << *r.cover_time;
    os << ',' << r.max_freq << ',';
    if (r.max_latency) os << *r.max_latency;
    return os.str();
}

}  // namespace walkbound::io
