// walkbound command-line front end.
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include <walkbound.hpp>
#include <walkbound/io.hpp>
#include <walkbound/verification.hpp>

namespace wb = walkbound;
using wb::io::json;

namespace {

enum exit_code { ok = 0, usage = 2, run_failed = 3, verify_failed = 4 };

constexpr const char* cap_env = "WALKBOUND_STEP_CAP";
constexpr std::uint64_t default_cap = 10'000'000;

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct instance_opts {
    std::string graph_file;
    std::string family;
    int b = 4, c = 11, l = 3;
    int k = 2;
    int segments = 1, petals = 3;
    int delta = 3;
    int n = 10, delta_max = 3;
    std::uint64_t seed = 0;
};

void add_family_params(CLI::App* app, instance_opts& o) {
    app->add_option("--b", o.b, "caterpillar leaf scale");
    app->add_option("--c", o.c, "caterpillar root surplus");
    app->add_option("--l", o.l, "caterpillar interior path length (odd)");
    app->add_option("--k", o.k, "component count, or target neighbor count for ratio");
    app->add_option("--segments", o.segments, "flower-path barrier count");
    app->add_option("--petals", o.petals, "petals per flower");
    app->add_option("--delta", o.delta, "degree of the start node for ratio");
    app->add_option("--n", o.n, "node count for random");
    app->add_option("--delta-max", o.delta_max, "degree cap for random");
    app->add_option("--seed", o.seed, "seed for random graphs and seeded-random ties");
}

void add_instance_source(CLI::App* app, instance_opts& o) {
    auto* g = app->add_option("--graph", o.graph_file, "graph JSON file");
    auto* f = app->add_option("--family", o.family,
                              "caterpillar | lrv-v-chain | four-cycle-chain | flower-path | ratio | random");
    g->excludes(f);
    add_family_params(app, o);
}

wb::generated_instance make_family(const std::string& family, const instance_opts& o) {
    if (family == "caterpillar") return wb::caterpillar({o.b, o.c, o.l});
    if (family == "lrv-v-chain") return wb::lrv_v_chain(o.k);
    if (family == "four-cycle-chain") return wb::four_cycle_chain(o.k);
    if (family == "flower-path") return wb::flower_path(o.segments, o.petals);
    if (family == "ratio") return wb::ratio_config(o.delta, o.k);
    if (family == "random") return wb::random_bounded_degree(o.n, o.delta_max, o.seed);
    throw usage_error("unknown family '" + family + "'");
}

wb::generated_instance load_instance(const instance_opts& o) {
    if (!o.graph_file.empty()) return wb::io::instance_from_json(wb::io::read_json_file(o.graph_file));
    if (o.family.empty()) throw usage_error("one of --graph or --family is required");
    return make_family(o.family, o);
}

std::uint64_t resolve_cap(std::optional<std::uint64_t> flag) {
    if (flag) {
        if (*flag < 1) throw usage_error("step cap must be at least 1");
        return *flag;
    }
    if (const char* env = std::getenv(cap_env)) {
        try {
            auto v = std::stoull(env);
            if (v >= 1) return v;
        } catch (const std::exception&) {
        }
        throw usage_error(std::string(cap_env) + " must be a positive integer");
    }
    return default_cap;
}

struct walk_opts {
    std::string policy = "LFV-v";
    std::string tiebreak = "static";
    std::string script_file;
    std::optional<wb::node_id> start;
    std::optional<std::uint64_t> cap;
    std::optional<std::uint64_t> steps;
};

void add_walk_options(CLI::App* app, walk_opts& w) {
    app->add_option("--policy", w.policy, "LRV-v | LRV-e | LFV-v | LFV-e");
    app->add_option("--tiebreak", w.tiebreak, "static | lowest | random | scripted");
    app->add_option("--script", w.script_file, "scripted witness: JSON list of edge ids or a trace");
    app->add_option("--start", w.start, "start node override");
    app->add_option("--cap", w.cap, std::string("step cap (default from ") + cap_env + " or 10^7)");
    app->add_option("--steps", w.steps, "run exactly this many moves instead of until covered");
}

wb::tie_breaker make_tie_breaker(const wb::generated_instance& inst, wb::policy p, const walk_opts& w,
                                 std::uint64_t seed) {
    if (w.tiebreak == "static") return inst.tie_breaker_for(p);
    if (w.tiebreak == "lowest") return wb::tie_breaker::lowest_index();
    if (w.tiebreak == "random") return wb::tie_breaker::seeded_random(seed);
    if (w.tiebreak == "scripted") {
        if (w.script_file.empty()) throw usage_error("--tiebreak scripted needs --script");
        auto j = wb::io::read_json_file(w.script_file);
        if (j.is_object() && j.contains("witness")) j = j["witness"];
        std::vector<wb::edge_id> script;
        for (const auto& x : j) script.push_back(x.is_array() ? x.at(0).get<wb::edge_id>() : x.get<wb::edge_id>());
        return wb::tie_breaker::scripted(std::move(script));
    }
    throw usage_error("unknown tie-breaker '" + w.tiebreak + "'");
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-")
        std::cout << text << '\n';
    else
        wb::io::write_text_file(path, text + "\n");
}

wb::policy policy_arg(const std::string& s) {
    try {
        return wb::parse_policy(s);
    } catch (const wb::param_error& e) {
        throw usage_error(e.what());
    }
}

struct run_outcome {
    wb::run_result r;
    bool covered;
};

run_outcome do_walk(const wb::generated_instance& inst, const walk_opts& w, std::uint64_t seed,
                    bool record) {
    auto p = policy_arg(w.policy);
    auto tb = make_tie_breaker(inst, p, w, seed);
    auto start = w.start.value_or(inst.start);
    if (start >= inst.g.n()) throw usage_error("start node out of range");
    wb::run_options ro{.record_trace = record};
    if (w.steps) {
        auto r = wb::run_steps(inst.g, p, tb, start, *w.steps, wb::no_hook{}, ro);
        bool cov = r.metrics.covered;
        return {std::move(r), cov};
    }
    auto r = wb::run_until_covered(inst.g, p, tb, start, resolve_cap(w.cap), wb::no_hook{}, ro);
    bool cov = r.metrics.covered;
    return {std::move(r), cov};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulator and verification harness for local graph-exploration policies"};
    app.require_subcommand(1);

    instance_opts gen_o;
    std::string gen_out;
    auto* gen = app.add_subcommand("generate", "write an instance as graph JSON");
    gen->add_option("family", gen_o.family, "instance family")->required();
    add_family_params(gen, gen_o);
    gen->add_option("-o,--out", gen_out, "output file (default stdout)");

    instance_opts run_o;
    walk_opts run_w;
    std::string metrics_out, trace_out;
    auto* run = app.add_subcommand("run", "run one walk and report metrics");
    add_instance_source(run, run_o);
    add_walk_options(run, run_w);
    run->add_option("--metrics-out", metrics_out, "metrics JSON file (default stdout)");
    run->add_option("--trace-out", trace_out, "trace JSON file");

    instance_opts sw_o;
    walk_opts sw_w;
    std::string sw_param = "k", sw_out;
    int sw_from = 1, sw_to = 0, sw_step = 1, sw_repeats = 1;
    bool sw_latency = false;
    auto* sweep = app.add_subcommand("sweep", "sweep one family parameter and write CSV");
    sweep->add_option("--family", sw_o.family)->required();
    add_family_params(sweep, sw_o);
    add_walk_options(sweep, sw_w);
    sweep->add_option("--param", sw_param, "parameter to sweep: k, b, l, n, segments, petals, delta");
    sweep->add_option("--from", sw_from)->required();
    sweep->add_option("--to", sw_to)->required();
    sweep->add_option("--step", sw_step)->check(CLI::PositiveNumber);
    sweep->add_option("--repeats", sw_repeats, "rows per instance; repeat r uses seed + r")
        ->check(CLI::PositiveNumber);
    sweep->add_flag("--latency", sw_latency, "also measure max latency over 4x cover time");
    sweep->add_option("-o,--out", sw_out, "CSV file (default stdout)");

    instance_opts or_o;
    std::string or_policy = "LRV-e", or_out;
    std::optional<std::uint64_t> or_cap;
    std::optional<wb::node_id> or_start;
    auto* orc = app.add_subcommand("oracle", "worst-case cover time over all tie resolutions");
    add_instance_source(orc, or_o);
    orc->add_option("--policy", or_policy);
    orc->add_option("--start", or_start);
    orc->add_option("--cap", or_cap, "search step cap (default 10^4, or the env override)");
    orc->add_option("-o,--out", or_out);

    std::string suite;
    auto* ver = app.add_subcommand("verify", "run a named bundle of acceptance checks");
    ver->add_option("suite", suite,
                    "caterpillar | growth | lemma | delta-d | ratio | latency | oracle-consistency | "
                    "conservation | all")
        ->required();

    instance_opts tr_o;
    walk_opts tr_w;
    std::string tr_out;
    auto* trc = app.add_subcommand("trace", "dump the move list of one walk");
    add_instance_source(trc, tr_o);
    add_walk_options(trc, tr_w);
    trc->add_option("-o,--out", tr_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? ok : usage;
    }

    try {
        if (*gen) {
            auto inst = make_family(gen_o.family, gen_o);
            emit(gen_out, wb::io::instance_to_json(inst).dump(2));
            return ok;
        }
        if (*run) {
            auto inst = load_instance(run_o);
            auto out = do_walk(inst, run_w, run_o.seed, !trace_out.empty());
            emit(metrics_out, wb::io::metrics_to_json(out.r.metrics).dump());
            if (!trace_out.empty()) emit(trace_out, wb::io::trace_to_json(out.r.tr).dump());
            if (!out.covered && !run_w.steps) {
                std::cerr << "not covered within cap; unvisited nodes: " << out.r.unvisited.size() << '\n';
                return run_failed;
            }
            return ok;
        }
        if (*sweep) {
            std::string csv = std::string(wb::io::sweep_header) + "\n";
            auto p = policy_arg(sw_w.policy);
            for (int x = sw_from; x <= sw_to; x += sw_step) {
                instance_opts o = sw_o;
                if (sw_param == "k") o.k = x;
                else if (sw_param == "b") o.b = x;
                else if (sw_param == "l") o.l = x;
                else if (sw_param == "n") o.n = x;
                else if (sw_param == "segments") o.segments = x;
                else if (sw_param == "petals") o.petals = x;
                else if (sw_param == "delta") o.delta = x;
                else throw usage_error("unknown sweep parameter '" + sw_param + "'");
                for (int rep = 0; rep < sw_repeats; ++rep) {
                    std::uint64_t seed = sw_o.seed + rep;
                    if (sw_o.family == "random") o.seed = seed;
                    auto inst = make_family(sw_o.family, o);
                    auto st = wb::stats(inst.g);
                    wb::io::sweep_row row;
                    row.family = inst.family;
                    row.n = inst.g.n();
                    row.m = inst.g.m();
                    row.delta = st.max_degree;
                    row.d = st.diameter;
                    row.pol = p;
                    row.seed = seed;
                    try {
                        auto out = do_walk(inst, sw_w, seed, false);
                        row.tiebreak = out.r.tr.tiebreak;
                        if (out.covered) row.cover_time = out.r.metrics.cover_time;
                        row.max_freq = out.r.metrics.max_freq;
                        if (sw_latency && row.cover_time) {
                            auto tb = make_tie_breaker(inst, p, sw_w, seed);
                            auto cover = std::max<std::uint64_t>(1, *row.cover_time);
                            auto r = wb::run_steps(inst.g, p, tb, sw_w.start.value_or(inst.start), 5 * cover);
                            auto m = wb::metrics(r.tr, inst.g, 4 * cover);
                            if (m.latency_available)
                                row.max_latency = *std::max_element(m.max_latency.begin(), m.max_latency.end());
                        }
                    } catch (const wb::walk_error& e) {
                        row.tiebreak = sw_w.tiebreak;
                        std::cerr << "row failed: " << e.what() << '\n';
                    }
                    csv += wb::io::csv_line(row) + "\n";
                }
            }
            if (sw_out.empty() || sw_out == "-")
                std::cout << csv;
            else
                wb::io::write_text_file(sw_out, csv);
            return ok;
        }
        if (*orc) {
            auto inst = load_instance(or_o);
            auto p = policy_arg(or_policy);
            std::uint64_t cap = or_cap ? *or_cap : wb::default_oracle_cap;
            if (!or_cap && std::getenv(cap_env)) cap = resolve_cap(std::nullopt);
            auto start = or_start.value_or(inst.start);
            if (start >= inst.g.n()) throw usage_error("start node out of range");
            auto res = wb::worst_case_cover(inst.g, p, start, cap);
            emit(or_out, wb::io::oracle_to_json(res).dump());
            return ok;
        }
        if (*ver) {
            bool known = suite == "all";
            int failed = 0;
            for (const auto& c : wb::verify::criteria()) {
                if (suite != "all" && suite != c.suite) continue;
                known = true;
                auto o = wb::verify::run_criterion(c);
                if (!o.ok()) ++failed;
                std::printf("%-4s %2d  %-42s %8.2fs  %s\n", o.ok() ? "PASS" : "FAIL", o.id, o.v.name.c_str(),
                            o.seconds, o.v.details.c_str());
                std::fflush(stdout);
            }
            if (!known) throw usage_error("unknown suite '" + suite + "'");
            return failed == 0 ? ok : verify_failed;
        }
        if (*trc) {
            auto inst = load_instance(tr_o);
            auto out = do_walk(inst, tr_w, tr_o.seed, true);
            emit(tr_out, wb::io::trace_to_json(out.r.tr).dump());
            return ok;
        }
    } catch (const usage_error& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return usage;
    } catch (const wb::param_error& e) {
        std::cerr << "bad parameters: " << e.what() << '\n';
        return usage;
    } catch (const wb::graph_error& e) {
        std::cerr << "bad graph: " << e.what() << '\n';
        return usage;
    } catch (const wb::walk_error& e) {
        std::cerr << "run failed: " << e.what() << '\n';
        return run_failed;
    } catch (const wb::error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    }
    return ok;
}
