#include <doctest.h>

#include "mwcut/families.hpp"
#include "mwcut/lp.hpp"
#include "mwcut/noderound.hpp"
#include "mwcut/paths.hpp"
#include "testutil.hpp"

using namespace mwcut;
using namespace testutil;

TEST_CASE("lp cost sums weight times length over finite arcs") {
    auto inst = dir_instance(2, {{0, 1, 1.0}, {1, 0, 1.0}}, {0, 1});
    CHECK(lp_cost(inst, edge_x(inst, {1.0, 1.0})) == 2.0);
    CHECK(lp_cost(inst, edge_x(inst, {0.0, 0.0})) == 0.0);

    auto with_inf = dir_instance(2, {{0, 1, kInf}, {1, 0, 1.0}}, {0, 1});
    CHECK(lp_cost(with_inf, edge_x(with_inf, {0.0, 1.0})) == 1.0);
    CHECK(is_inf(lp_cost(with_inf, edge_x(with_inf, {0.5, 1.0}))));
}

TEST_CASE("gap level 1 reference lengths cost exactly two") {
    auto g1 = gen_gap_family(1);
    FractionalSolution x;
    x.mode = LpMode::Edge;
    x.values.assign(g1.num_arcs(), 0.0);
    for (int a = 0; a < g1.num_arcs(); ++a)
        if (!is_inf(g1.arcs[a].weight)) x.values[a] = 0.5;
    CHECK(lp_cost(g1, x) == 2.0);
    CHECK(verify_feasible(g1, x, 0.0).feasible);
}

TEST_CASE("verify feasible reports a violating path") {
    auto inst = dir_instance(2, {{0, 1, 1.0}, {1, 0, 1.0}}, {0, 1});
    CHECK(verify_feasible(inst, edge_x(inst, {1.0, 1.0}), 0.0).feasible);

    auto rep = verify_feasible(inst, edge_x(inst, {0.9, 1.0}), 1e-9);
    CHECK_FALSE(rep.feasible);
    CHECK(rep.min_distance == doctest::Approx(0.9));
    CHECK(rep.witness == std::vector<int>{0});
    CHECK(rep.from_terminal == 0);
    CHECK(rep.to_terminal == 1);
}

TEST_CASE("fractionality family uniform lengths are feasible") {
    auto inst = gen_fractionality_family(4);
    CHECK(verify_feasible(inst, uniform_edge_x(inst, 0.25), 1e-12).feasible);
    CHECK_FALSE(verify_feasible(inst, uniform_edge_x(inst, 0.2), 1e-9).feasible);
}

TEST_CASE("scale to feasible divides by the minimum distance") {
    auto inst = dir_instance(2, {{0, 1, 1.0}, {1, 0, 1.0}}, {0, 1});
    auto scaled = scale_to_feasible(inst, edge_x(inst, {0.5, 0.75}));
    CHECK(scaled.values[0] == 1.0);
    CHECK(scaled.values[1] == 1.5);

    auto kept = scale_to_feasible(inst, edge_x(inst, {1.0, 1.0}));
    CHECK(kept.values == std::vector<double>{1.0, 1.0});

    CHECK_THROWS_AS(scale_to_feasible(inst, edge_x(inst, {0.0, 0.0})), InputError);
}

TEST_CASE("scale to feasible self-check on random lengths") {
    for (std::uint64_t seed : {21u, 22u, 23u}) {
        auto inst = gen_random_dirmc(25, 0.12, 4, 0.5, 2.0, seed);
        FractionalSolution x = uniform_edge_x(inst, 0.0);
        std::mt19937_64 rng(seed);
        for (double& v : x.values) v = 0.01 + uniform01(rng);
        CHECK(verify_feasible(inst, scale_to_feasible(inst, x), 1e-9).feasible);
    }
}

TEST_CASE("mwu solves the two-arc instance to five percent") {
    auto inst = dir_instance(2, {{0, 1, 3.0}, {1, 0, 5.0}}, {0, 1});
    LpResult res = solve_lp_mwu(inst, 0.05);
    CHECK(res.primal_cost >= 8.0 * (1 - 1e-9));
    CHECK(res.primal_cost <= 8.4);
    CHECK(res.dual_flow_value >= 8.0 / 1.05);
    CHECK(res.dual_flow_value <= res.primal_cost * (1 + 1e-6));
    CHECK(verify_feasible(inst, res.solution, 1e-9).feasible);
}

TEST_CASE("mwu matches the gap family closed form") {
    LpResult res = solve_lp_mwu(gen_gap_family(2), 0.05);
    CHECK(res.primal_cost >= 3.0 * (1 - 1e-9));
    CHECK(res.primal_cost <= 3.15);
}

TEST_CASE("mwu dual reaches the fractionality family flow value") {
    LpResult res = solve_lp_mwu(gen_fractionality_family(5), 0.05);
    double opt = 2.0 * 4 / 5;
    CHECK(res.dual_flow_value >= opt / 1.05);
    CHECK(res.primal_cost >= opt * (1 - 1e-9));
    CHECK(res.primal_cost <= opt * 1.05);
}

TEST_CASE("mwu is deterministic") {
    auto inst = gen_random_dirmc(20, 0.15, 3, 0.5, 2.0, 31);
    LpResult a = solve_lp_mwu(inst, 0.05);
    LpResult b = solve_lp_mwu(inst, 0.05);
    CHECK(a.solution.values == b.solution.values);
    CHECK(a.primal_cost == b.primal_cost);
    CHECK(a.dual_flow_value == b.dual_flow_value);
    CHECK(a.iterations == b.iterations);
}

TEST_CASE("mwu detects an infinite LP") {
    auto inst = dir_instance(2, {{0, 1, kInf}, {1, 0, 1.0}}, {0, 1});
    CHECK_THROWS_AS(solve_lp_mwu(inst, 0.05), InputError);
}

TEST_CASE("mwu on disconnected terminals returns the zero solution") {
    auto inst = dir_instance(3, {{0, 1, 1.0}}, {0, 2});
    LpResult res = solve_lp_mwu(inst, 0.05);
    CHECK(res.primal_cost == 0.0);
    CHECK(res.dual_flow_value == 0.0);
    CHECK(res.solution.values == std::vector<double>(1, 0.0));
}

TEST_CASE("mwu treats zero-weight arcs as free to cut") {
    auto inst = dir_instance(3, {{0, 1, 0.0}, {1, 0, 2.0}, {1, 2, 1.0}, {2, 0, 1.0}}, {0, 1});
    LpResult res = solve_lp_mwu(inst, 0.05);
    // the free arc covers 0->1; the reverse direction costs 2 + 1
    CHECK(res.solution.values[0] == 1.0);
    CHECK(res.primal_cost >= 3.0 * (1 - 1e-9));
    CHECK(res.primal_cost <= 3.0 * 1.05);
}

TEST_CASE("node lp on the star instance") {
    LpResult res = solve_node_lp(star_instance(3, 1.0), 0.05);
    CHECK(res.primal_cost >= 1.0 - 1e-9);
    CHECK(res.primal_cost <= 1.05);
    CHECK(res.solution.values[3] >= 1.0 - 1e-9);
    CHECK(res.solution.values[3] <= 1.06);
}

TEST_CASE("node lp on the two-node path instance") {
    LpResult res = solve_node_lp(path_instance(1.0, 1.0), 0.05);
    CHECK(res.primal_cost >= 1.0 - 1e-9);
    CHECK(res.primal_cost <= 1.05);
}

TEST_CASE("node lp rejects terminal-only connections") {
    auto inst = node_instance(3, {{0, 1}, {1, 2}}, {0, 0, 0}, {0, 1, 2});
    CHECK_THROWS_AS(solve_node_lp(inst, 0.05), InputError);
}

TEST_CASE("near-optimal chain solutions have balanced pair sums") {
    int h = 5;
    double eps = 0.01;
    auto inst = gen_fractionality_family(h);
    LpResult res = solve_lp_mwu(inst, eps);
    // finite arcs come first: u-chain then v-chain, h-1 arcs each
    for (int i = 0; i < h - 1; ++i) {
        double pair = res.solution.values[i] + res.solution.values[h - 1 + i];
        CHECK(pair <= 2.0 / h + 4 * eps);
    }
}

TEST_CASE("weak duality holds on random instances") {
    for (std::uint64_t seed = 41; seed <= 45; ++seed) {
        auto inst = gen_random_dirmc(18, 0.2, 4, 0.5, 3.0, seed);
        LpResult res = solve_lp_mwu(inst, 0.05);
        CHECK(res.dual_flow_value <= res.primal_cost * (1 + 1e-6));
        CHECK(res.epsilon <= 0.05);
        CHECK(verify_feasible(inst, res.solution, 1e-9).feasible);
    }
}
