// mwcut: solve, round and verify multiway cut instances from the command
// line. Reports are `key value` lines on stdout (or one JSON object with
// --json); artifacts go to files. Exit codes: 0 success, 1 bad or infeasible
// input, 2 internal guard tripped.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "mwcut/dirround.hpp"
#include "mwcut/families.hpp"
#include "mwcut/instance.hpp"
#include "mwcut/io.hpp"
#include "mwcut/lp.hpp"
#include "mwcut/noderound.hpp"
#include "mwcut/oracle.hpp"
#include "mwcut/random.hpp"
#include "mwcut/reductions.hpp"

using namespace mwcut;

namespace {

struct Report {
    std::vector<std::pair<std::string, std::string>> rows;

    void add(const std::string& key, const std::string& value) { rows.emplace_back(key, value); }
    void add(const std::string& key, double value) { add(key, format_weight(value)); }
    void add(const std::string& key, long value) { add(key, std::to_string(value)); }
    void add(const std::string& key, int value) { add(key, std::to_string(value)); }
    void add(const std::string& key, std::uint64_t value) { add(key, std::to_string(value)); }

    void print(bool json) const {
        if (!json) {
            for (const auto& [k, v] : rows) std::cout << k << ' ' << v << '\n';
            return;
        }
        nlohmann::ordered_json obj;
        for (const auto& [k, v] : rows) {
            if (obj.contains(k)) {  // repeated keys (trial lines) become arrays
                if (!obj[k].is_array()) obj[k] = nlohmann::ordered_json::array({obj[k]});
                obj[k].push_back(v);
            } else {
                obj[k] = v;
            }
        }
        std::cout << obj.dump(2) << '\n';
    }
};

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

AnyInstance read_instance(const std::string& path) {
    if (path.empty() || path == "-") return parse_instance(std::cin);
    return load_instance(path);
}

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InputError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& body) {
    std::ofstream f(path);
    if (!f) throw InputError("cannot write '" + path + "'");
    f << body;
}

void emit(const std::string& out, const std::string& body) {
    if (out.empty() || out == "-")
        std::cout << body;
    else
        write_file(out, body);
}

int monte_carlo_threads() {
    const char* env = std::getenv("MWCUT_THREADS");
    if (!env) return 1;
    int n = std::atoi(env);
    return n < 1 ? 1 : n;
}

FractionalSolution load_x(const std::string& path, const AnyInstance& inst) {
    std::ifstream f(path);
    if (!f) throw InputError("cannot open '" + path + "'");
    if (std::holds_alternative<DirectedInstance>(inst))
        return parse_fractional(f, std::get<DirectedInstance>(inst));
    return parse_fractional(f, std::get<NodeInstance>(inst));
}

void add_cut_meta(Report& rep, const CutSolution& cut) {
    if (cut.theta) rep.add("theta", *cut.theta);
    if (cut.ell) rep.add("ell", *cut.ell);
    if (cut.seed) rep.add("seed", *cut.seed);
}

int cmd_solve(const std::string& input, double epsilon, std::uint64_t seed, bool deterministic,
              const std::string& mode, const std::string& out, bool json) {
    AnyInstance any = read_instance(input);
    if (mode == "dirmc" && !std::holds_alternative<DirectedInstance>(any))
        throw InputError("instance is not dirmc");
    if (mode == "nodemc" && !std::holds_alternative<NodeInstance>(any))
        throw InputError("instance is not nodemc");

    Report rep;
    std::string cut_text;
    if (std::holds_alternative<DirectedInstance>(any)) {
        const auto& inst = std::get<DirectedInstance>(any);
        rep.add("mode", std::string("dirmc"));
        rep.add("n", inst.n);
        rep.add("m", inst.num_arcs());
        rep.add("k", inst.k());
        rep.add("epsilon", epsilon);

        auto t0 = std::chrono::steady_clock::now();
        LpResult lp = solve_lp_mwu(inst, epsilon);
        double lp_ms = ms_since(t0);

        t0 = std::chrono::steady_clock::now();
        CutSolution cut = deterministic ? round_deterministic(inst, lp.solution)
                                        : round_randomized(inst, lp.solution, seed);
        double round_ms = ms_since(t0);

        rep.add("lp_cost", lp.primal_cost);
        rep.add("dual_flow_value", lp.dual_flow_value);
        rep.add("lp_gap", lp.epsilon);
        rep.add("lp_iterations", lp.iterations);
        rep.add("cut_cost", cut.cost);
        rep.add("ratio_cut_over_lp", lp.primal_cost > 0 ? cut.cost / lp.primal_cost : 0.0);
        add_cut_meta(rep, cut);
        rep.add("feasible", std::string(verify_cut(inst, cut).feasible ? "true" : "false"));
        rep.add("cut_file", out);
        rep.add("time_lp_ms", lp_ms);
        rep.add("time_round_ms", round_ms);
        cut_text = serialize_cut(inst, cut);
    } else {
        const auto& inst = std::get<NodeInstance>(any);
        rep.add("mode", std::string("nodemc"));
        rep.add("n", inst.n);
        rep.add("m", inst.num_edges());
        rep.add("k", inst.k());
        rep.add("epsilon", epsilon);

        auto t0 = std::chrono::steady_clock::now();
        LpResult lp = solve_node_lp(inst, epsilon);
        double lp_ms = ms_since(t0);

        t0 = std::chrono::steady_clock::now();
        CutSolution cut = deterministic ? round_node_deterministic(inst, lp.solution)
                                        : round_node_randomized(inst, lp.solution, seed);
        double round_ms = ms_since(t0);

        rep.add("lp_cost", lp.primal_cost);
        rep.add("dual_flow_value", lp.dual_flow_value);
        rep.add("lp_gap", lp.epsilon);
        rep.add("lp_iterations", lp.iterations);
        rep.add("cut_cost", cut.cost);
        rep.add("ratio_cut_over_lp", lp.primal_cost > 0 ? cut.cost / lp.primal_cost : 0.0);
        add_cut_meta(rep, cut);
        rep.add("feasible", std::string(verify_node_cut(inst, cut).feasible ? "true" : "false"));
        rep.add("cut_file", out);
        rep.add("time_lp_ms", lp_ms);
        rep.add("time_round_ms", round_ms);
        cut_text = serialize_cut(inst, cut);
    }
    write_file(out, cut_text);
    rep.print(json);
    return 0;
}

int cmd_lp(const std::string& input, double epsilon, const std::string& out, bool json) {
    AnyInstance any = read_instance(input);
    Report rep;
    auto t0 = std::chrono::steady_clock::now();
    if (std::holds_alternative<DirectedInstance>(any)) {
        const auto& inst = std::get<DirectedInstance>(any);
        LpResult lp = solve_lp_mwu(inst, epsilon);
        rep.add("mode", std::string("dirmc"));
        rep.add("lp_cost", lp.primal_cost);
        rep.add("dual_flow_value", lp.dual_flow_value);
        rep.add("lp_gap", lp.epsilon);
        rep.add("lp_iterations", lp.iterations);
        if (!out.empty()) write_file(out, serialize_fractional(inst, lp.solution));
    } else {
        const auto& inst = std::get<NodeInstance>(any);
        LpResult lp = solve_node_lp(inst, epsilon);
        rep.add("mode", std::string("nodemc"));
        rep.add("lp_cost", lp.primal_cost);
        rep.add("dual_flow_value", lp.dual_flow_value);
        rep.add("lp_gap", lp.epsilon);
        rep.add("lp_iterations", lp.iterations);
        if (!out.empty()) write_file(out, serialize_fractional(inst, lp.solution));
    }
    rep.add("x_file", out);
    rep.add("time_lp_ms", ms_since(t0));
    rep.print(json);
    return 0;
}

int cmd_round(const std::string& input, const std::string& xpath, double theta, bool has_theta,
              bool interval, bool deterministic, std::uint64_t seed, bool has_seed, int ell,
              bool undirected, long trials, const std::string& out, bool json) {
    AnyInstance any = read_instance(input);
    FractionalSolution x = load_x(xpath, any);
    Report rep;
    std::string cut_text;

    if (trials > 0) {
        // Monte Carlo over derived per-trial seeds; output ordered by trial
        if (std::holds_alternative<NodeInstance>(any) == (x.mode == LpMode::Edge))
            throw InputError("solution mode does not match instance");
        std::vector<CutSolution> cuts(trials);
        int workers = monte_carlo_threads();
        auto run_range = [&](long lo, long hi) {
            for (long t = lo; t < hi; ++t) {
                std::uint64_t s = trial_seed(seed, static_cast<std::uint64_t>(t));
                if (std::holds_alternative<DirectedInstance>(any))
                    cuts[t] = round_randomized(std::get<DirectedInstance>(any), x, s);
                else
                    cuts[t] = round_node_randomized(std::get<NodeInstance>(any), x, s);
            }
        };
        if (workers <= 1) {
            run_range(0, trials);
        } else {
            std::vector<std::thread> pool;
            long chunk = (trials + workers - 1) / workers;
            for (int w = 0; w < workers; ++w)
                pool.emplace_back(run_range, std::min<long>(w * chunk, trials),
                                  std::min<long>((w + 1) * chunk, trials));
            for (auto& th : pool) th.join();
        }
        double mean = 0.0, worst = 0.0;
        for (long t = 0; t < trials; ++t) {
            std::ostringstream line;
            line << t << ' ' << format_weight(*cuts[t].theta) << ' ' << format_weight(cuts[t].cost);
            rep.add("trial", line.str());
            mean += cuts[t].cost / trials;
            worst = std::max(worst, cuts[t].cost);
        }
        double lp = std::holds_alternative<DirectedInstance>(any)
                        ? lp_cost(std::get<DirectedInstance>(any), x)
                        : lp_cost(std::get<NodeInstance>(any), x);
        rep.add("trials", trials);
        rep.add("seed", seed);
        rep.add("mean_cost", mean);
        rep.add("max_cost", worst);
        rep.add("lp_cost", lp);
        rep.add("ratio_mean_over_lp", lp > 0 ? mean / lp : 0.0);
        rep.print(json);
        return 0;
    }

    if (std::holds_alternative<DirectedInstance>(any)) {
        const auto& inst = std::get<DirectedInstance>(any);
        CutSolution cut;
        if (undirected) {
            if (!has_theta) throw InputError("undirected rounding needs --theta in (0, 1/2)");
            cut = round_edge_undirected(inst, x, theta);
            rep.add("feasible",
                    std::string(verify_undirected_cut(inst, cut).feasible ? "true" : "false"));
        } else if (deterministic) {
            cut = round_deterministic(inst, x);
        } else if (has_theta) {
            cut = interval ? round_interval_at_theta(inst, x, theta) : round_at_theta(inst, x, theta);
        } else if (has_seed) {
            cut = round_randomized(inst, x, seed);
        } else {
            throw InputError("pick one of --theta, --seed, --deterministic");
        }
        if (!undirected)
            rep.add("feasible", std::string(verify_cut(inst, cut).feasible ? "true" : "false"));
        rep.add("cut_cost", cut.cost);
        rep.add("lp_cost", lp_cost(inst, x));
        add_cut_meta(rep, cut);
        cut_text = serialize_cut(inst, cut);
    } else {
        const auto& inst = std::get<NodeInstance>(any);
        CutSolution cut;
        if (deterministic) {
            cut = round_node_deterministic(inst, x);
        } else if (has_theta) {
            cut = round_node_at(inst, x, ell, theta);
        } else if (has_seed) {
            cut = round_node_randomized(inst, x, seed);
        } else {
            throw InputError("pick one of --theta, --seed, --deterministic");
        }
        rep.add("feasible", std::string(verify_node_cut(inst, cut).feasible ? "true" : "false"));
        rep.add("cut_cost", cut.cost);
        rep.add("lp_cost", lp_cost(inst, x));
        add_cut_meta(rep, cut);
        cut_text = serialize_cut(inst, cut);
    }
    if (!out.empty()) write_file(out, cut_text);
    rep.add("cut_file", out);
    rep.print(json);
    return 0;
}

int cmd_oracle(const std::string& input, bool one_way, int from, int to, const std::string& out,
               bool json) {
    AnyInstance any = read_instance(input);
    Report rep;
    std::string cut_text;
    auto t0 = std::chrono::steady_clock::now();
    if (std::holds_alternative<DirectedInstance>(any)) {
        const auto& inst = std::get<DirectedInstance>(any);
        CutSolution cut = one_way ? exact_one_way_cut(inst, from - 1, to - 1) : exact_min_dirmc(inst);
        rep.add("mode", std::string("dirmc"));
        rep.add("cost", cut.cost);
        rep.add("members", static_cast<long>(cut.members.size()));
        cut_text = serialize_cut(inst, cut);
    } else {
        if (one_way) throw InputError("--one-way needs a dirmc instance");
        const auto& inst = std::get<NodeInstance>(any);
        CutSolution cut = exact_min_nodemc(inst);
        rep.add("mode", std::string("nodemc"));
        rep.add("cost", cut.cost);
        rep.add("members", static_cast<long>(cut.members.size()));
        cut_text = serialize_cut(inst, cut);
    }
    if (!out.empty()) write_file(out, cut_text);
    rep.add("cut_file", out);
    rep.add("time_oracle_ms", ms_since(t0));
    rep.print(json);
    return 0;
}

int cmd_verify(const std::string& input, const std::string& cut_path, const std::string& x_path,
               double tol, bool undirected, bool json) {
    AnyInstance any = read_instance(input);
    Report rep;
    bool ok = false;
    if (!cut_path.empty()) {
        std::istringstream cs(slurp(cut_path));
        if (std::holds_alternative<DirectedInstance>(any)) {
            const auto& inst = std::get<DirectedInstance>(any);
            CutSolution cut = parse_cut(cs, inst);
            CutReport r = undirected ? verify_undirected_cut(inst, cut) : verify_cut(inst, cut);
            ok = r.feasible;
            rep.add("kind", std::string("cut"));
            rep.add("feasible", std::string(ok ? "true" : "false"));
            rep.add("cost", cut.cost);
            if (!ok) {
                rep.add("violated_from", inst.terminals[r.from_terminal] + 1);
                rep.add("violated_to", inst.terminals[r.to_terminal] + 1);
                std::ostringstream w;
                for (int a : r.witness)
                    w << ' ' << inst.arcs[a].tail + 1 << "->" << inst.arcs[a].head + 1;
                rep.add("witness_path", w.str().substr(1));
            }
        } else {
            const auto& inst = std::get<NodeInstance>(any);
            CutSolution cut = parse_cut(cs, inst);
            NodeCutReport r = verify_node_cut(inst, cut);
            ok = r.feasible;
            rep.add("kind", std::string("cut"));
            rep.add("feasible", std::string(ok ? "true" : "false"));
            rep.add("cost", cut.cost);
            if (!ok) {
                rep.add("violated_from", inst.terminals[r.from_terminal] + 1);
                rep.add("violated_to", inst.terminals[r.to_terminal] + 1);
                std::ostringstream w;
                for (NodeId v : r.witness) w << ' ' << v + 1;
                rep.add("witness_path", w.str().substr(1));
            }
        }
    } else if (!x_path.empty()) {
        FractionalSolution x = load_x(x_path, any);
        FeasibilityReport r =
            std::holds_alternative<DirectedInstance>(any)
                ? verify_feasible(std::get<DirectedInstance>(any), x, tol)
                : verify_feasible(std::get<NodeInstance>(any), x, tol);
        ok = r.feasible;
        rep.add("kind", std::string("fractional"));
        rep.add("feasible", std::string(ok ? "true" : "false"));
        rep.add("min_interterminal_distance", r.min_distance);
        if (!ok) {
            rep.add("violated_from_index", r.from_terminal + 1);
            rep.add("violated_to_index", r.to_terminal + 1);
        }
    } else {
        throw InputError("verify needs --cut or --x");
    }
    rep.print(json);
    return ok ? 0 : 1;
}

int cmd_reduce(const std::string& input, const std::string& kind, const std::string& out) {
    AnyInstance any = read_instance(input);
    if (!std::holds_alternative<NodeInstance>(any))
        throw InputError("reduce needs a nodemc instance");
    const auto& inst = std::get<NodeInstance>(any);

    if (kind == "nodesplit") {
        NodeInstance canon = canonicalize_node_instance(inst);
        NodeSplitResult red = node_split_reduction(canon);
        std::ostringstream body;
        body << "# node-split reduction; split arc for node v is 'a v_in v_out'\n";
        for (NodeId v = 0; v < canon.n; ++v)
            if (red.split_arc_of_node[v] >= 0)
                body << "# node " << v + 1 << " -> arc " << red.in_copy[v] + 1 << ' '
                     << red.out_copy[v] + 1 << '\n';
        body << serialize_instance(red.directed);
        emit(out, body.str());
        return 0;
    }
    if (kind == "stbicut4") {
        StBiCutInstance st = reduce_4terminal_to_stbicut(inst);
        StBiCutSplitResult split = to_directed(st);
        std::ostringstream body;
        body << "# 4-terminal node multiway cut as st-bi-cut (node-split composition)\n";
        body << "# s = " << st.s + 1 << ", t = " << st.t + 1 << '\n';
        body << serialize_instance(split.directed);
        emit(out, body.str());
        return 0;
    }
    throw InputError("unknown reduction kind '" + kind + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multiway cut toolbox: distance-LP solving, ball-cut rounding, exact oracles"};
    app.require_subcommand(1);
    bool json = false;
    app.add_flag("--json", json, "emit the report as one JSON object");

    std::string input, xpath, cutpath, mode = "auto", kind;
    std::string solve_out = "out.cut", lp_out = "out.x", gen_out, round_out, oracle_out, reduce_out;
    double epsilon = 0.05, theta = 0.0, tol = 1e-9;
    std::uint64_t seed = 0;
    bool deterministic = false, undirected = false, interval = false;
    int ell = 1;
    long trials = 0;
    std::vector<int> one_way;

    auto* solve = app.add_subcommand("solve", "solve the LP and round it");
    solve->add_option("--input", input, "instance file, '-' for stdin");
    solve->add_option("--epsilon", epsilon, "LP accuracy (default 0.05)");
    solve->add_option("--seed", seed, "seed for randomized rounding");
    solve->add_flag("--deterministic", deterministic, "use the endpoint-sweep rounding");
    solve->add_option("--mode", mode, "auto|dirmc|nodemc")
        ->check(CLI::IsMember({"auto", "dirmc", "nodemc"}));
    solve->add_option("--out", solve_out, "cut file to write (default out.cut)");

    auto* gen = app.add_subcommand("gen", "generate instances");
    gen->require_subcommand(1);
    int level = 0, chain_h = 2, rn = 8, rk = 3;
    double density = 0.3, wmin = 1.0, wmax = 2.0;
    std::string rmode = "dirmc";
    auto* gen_gap = gen->add_subcommand("gap", "recursive two-terminal gap family");
    gen_gap->add_option("--level", level)->required();
    gen_gap->add_option("--out", gen_out);
    auto* gen_frac = gen->add_subcommand("frac", "two-terminal fractionality chain family");
    gen_frac->set_help_flag("--help", "print help");  // frees -h for the option below
    gen_frac->add_option("--h", chain_h)->required();
    gen_frac->add_option("--out", gen_out);
    auto* gen_rand = gen->add_subcommand("random", "seeded random instance");
    gen_rand->add_option("--n", rn)->required();
    gen_rand->add_option("--density", density);
    gen_rand->add_option("--k", rk);
    gen_rand->add_option("--wmin", wmin);
    gen_rand->add_option("--wmax", wmax);
    gen_rand->add_option("--seed", seed);
    gen_rand->add_option("--mode", rmode)->check(CLI::IsMember({"dirmc", "nodemc"}));
    gen_rand->add_option("--out", gen_out);

    auto* lp = app.add_subcommand("lp", "solve the distance LP");
    lp->add_option("--input", input);
    lp->add_option("--epsilon", epsilon);
    lp->add_option("--out", lp_out, "fractional solution file (default out.x)");

    auto* round = app.add_subcommand("round", "round a fractional solution");
    round->add_option("--input", input);
    round->add_option("--x", xpath, "fractional solution file")->required();
    auto* theta_opt = round->add_option("--theta", theta, "fixed radius");
    round->add_flag("--interval", interval, "interval variant for --theta (dirmc)");
    round->add_flag("--deterministic", deterministic, "endpoint-sweep rounding");
    auto* seed_opt = round->add_option("--seed", seed, "randomized rounding seed");
    round->add_option("--ell", ell, "spared terminal for nodemc --theta (1-based)");
    round->add_flag("--undirected", undirected, "bidirected edge rounding, theta in (0,1/2)");
    round->add_option("--trials", trials, "Monte Carlo trial count");
    round->add_option("--out", round_out, "cut file to write");

    auto* oracle = app.add_subcommand("oracle", "exact minimum cut (small instances)");
    oracle->add_option("--input", input);
    oracle->add_option("--one-way", one_way, "FROM TO (1-based): one-direction min cut")
        ->expected(2);
    oracle->add_option("--out", oracle_out, "cut file to write");

    auto* verify = app.add_subcommand("verify", "check a cut or fractional solution");
    verify->add_option("--input", input);
    verify->add_option("--cut", cutpath);
    verify->add_option("--x", xpath);
    verify->add_option("--tol", tol);
    verify->add_flag("--undirected", undirected);

    auto* reduce = app.add_subcommand("reduce", "emit a reduction of a nodemc instance");
    reduce->add_option("--input", input);
    reduce->add_option("--kind", kind, "nodesplit|stbicut4")->required();
    reduce->add_option("--out", reduce_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;  // uniform user-error code instead of CLI11's own codes
    }

    try {
        if (solve->parsed())
            return cmd_solve(input, epsilon, seed, deterministic, mode, solve_out, json);
        if (gen->parsed()) {
            if (gen_gap->parsed()) emit(gen_out, serialize_instance(gen_gap_family(level)));
            if (gen_frac->parsed()) emit(gen_out, serialize_instance(gen_fractionality_family(chain_h)));
            if (gen_rand->parsed()) {
                if (rmode == "dirmc")
                    emit(gen_out, serialize_instance(gen_random_dirmc(rn, density, rk, wmin, wmax, seed)));
                else
                    emit(gen_out, serialize_instance(gen_random_nodemc(rn, density, rk, wmin, wmax, seed)));
            }
            return 0;
        }
        if (lp->parsed()) return cmd_lp(input, epsilon, lp_out, json);
        if (round->parsed())
            return cmd_round(input, xpath, theta, theta_opt->count() > 0, interval, deterministic,
                             seed, seed_opt->count() > 0, ell, undirected, trials, round_out, json);
        if (oracle->parsed())
            return cmd_oracle(input, !one_way.empty(), one_way.empty() ? 0 : one_way[0],
                              one_way.empty() ? 0 : one_way[1], oracle_out, json);
        if (verify->parsed()) return cmd_verify(input, cutpath, xpath, tol, undirected, json);
        if (reduce->parsed()) return cmd_reduce(input, kind, reduce_out);
    } catch (const GuardError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
