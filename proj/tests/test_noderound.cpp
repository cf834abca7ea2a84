#include <doctest.h>

#include <set>

#include "mwcut/families.hpp"
#include "mwcut/lp.hpp"
#include "mwcut/noderound.hpp"
#include "mwcut/paths.hpp"
#include "mwcut/reductions.hpp"
#include "testutil.hpp"

using namespace mwcut;
using namespace testutil;

namespace {

FractionalSolution random_feasible_node_x(const NodeInstance& inst, std::uint64_t seed) {
    FractionalSolution x;
    x.mode = LpMode::Node;
    x.values.assign(inst.n, 0.0);
    std::mt19937_64 rng(seed);
    for (NodeId v = 0; v < inst.n; ++v)
        if (!inst.is_terminal(v)) x.values[v] = 0.05 + uniform01(rng);
    return scale_to_feasible(inst, x);
}

NodeInstance finite_random_node_instance(std::uint64_t seed, int n = 14, int k = 3) {
    return gen_random_nodemc(n, 0.3, k, 0.5, 2.5, seed);
}

}  // namespace

TEST_CASE("node distances include both endpoints") {
    auto path = path_instance(0.5, 0.5);
    FractionalSolution x = node_x(path, {0.0, 0.5, 0.5, 0.0});
    NodeDistanceTable t = node_sssp(path, x, 0);
    CHECK(t.dist[0] == 0.0);
    CHECK(t.dist[1] == 0.5);
    CHECK(t.dist[2] == 1.0);
    CHECK(t.dist[3] == 1.0);

    auto star = star_instance(3, 1.0);
    FractionalSolution xs = node_x(star, {0.0, 0.0, 0.0, 1.0});
    NodeDistanceTable ts = node_sssp(star, xs, 0);
    CHECK(ts.dist[1] == 1.0);
    CHECK(ts.dist[2] == 1.0);
    CHECK(ts.dist[3] == 1.0);
}

TEST_CASE("node distances match the split-graph distances") {
    for (std::uint64_t seed : {31u, 32u, 33u}) {
        auto inst = finite_random_node_instance(seed);
        auto x = random_feasible_node_x(inst, seed + 5);
        NodeSplitResult red = node_split_reduction(inst);
        FractionalSolution ax = uniform_edge_x(red.directed, 0.0);
        for (NodeId v = 0; v < inst.n; ++v)
            if (red.split_arc_of_node[v] >= 0) ax.values[red.split_arc_of_node[v]] = x.values[v];
        NodeId src = inst.terminals[0];
        NodeDistanceTable direct = node_sssp(inst, x, src);
        DistanceTable split = sssp(red.directed, ax, src);
        for (NodeId v = 0; v < inst.n; ++v) {
            double expect = red.split_arc_of_node[v] >= 0 ? split.dist[red.out_copy[v]]
                                                          : split.dist[v];
            if (is_inf(direct.dist[v]))
                CHECK(is_inf(expect));
            else
                CHECK(direct.dist[v] == doctest::Approx(expect).epsilon(1e-12));
        }
    }
}

TEST_CASE("boundary follows the distance characterization") {
    auto star = star_instance(3, 1.0);
    FractionalSolution xs = node_x(star, {0.0, 0.0, 0.0, 1.0});
    CHECK(boundary(star, xs, 0, 0.3).members == std::vector<NodeId>{3});
    CHECK(boundary(star, xs, 0, 1.0).members.empty());

    auto path = path_instance(0.5, 0.5);
    FractionalSolution xp = node_x(path, {0.0, 0.5, 0.5, 0.0});
    CHECK(boundary(path, xp, 0, 0.4).members == std::vector<NodeId>{1});
}

TEST_CASE("boundary equals the adjacency definition on random instances") {
    for (std::uint64_t seed : {41u, 42u, 43u}) {
        auto inst = finite_random_node_instance(seed);
        auto x = random_feasible_node_x(inst, seed + 9);
        NodeId src = inst.terminals[0];
        NodeDistanceTable t = node_sssp(inst, x, src);
        for (double r : {0.1, 0.3, 0.45, 0.7}) {
            BoundarySet b = boundary(inst, x, src, r);
            // nodes outside the ball adjacent to a ball node
            std::set<NodeId> expect;
            for (auto [u, v] : inst.edges) {
                if (t.dist[u] <= r && t.dist[v] > r) expect.insert(v);
                if (t.dist[v] <= r && t.dist[u] > r) expect.insert(u);
            }
            CHECK(std::set<NodeId>(b.members.begin(), b.members.end()) == expect);
        }
    }
}

TEST_CASE("node rounding on the star always removes the center") {
    auto star = star_instance(3, 1.0);
    FractionalSolution x = node_x(star, {0.0, 0.0, 0.0, 1.0});
    for (std::uint64_t seed : {1u, 7u, 19u}) {
        CutSolution cut = round_node_randomized(star, x, seed);
        CHECK(cut.members == std::vector<NodeId>{3});
        CHECK(cut.cost == 1.0);
        CHECK(verify_node_cut(star, cut).feasible);
    }
}

TEST_CASE("node rounding on the path cuts exactly one interior node") {
    auto path = path_instance(1.0, 1.0);
    FractionalSolution x = node_x(path, {0.0, 0.5, 0.5, 0.0});
    for (double theta : {0.1, 0.25, 0.4}) {
        CutSolution cut = round_node_at(path, x, 2, theta);
        CHECK(cut.members == std::vector<NodeId>{1});
        CHECK(cut.cost == 1.0);  // tight: 2(1-1/k) lp_cost with k=2
    }
}

TEST_CASE("every (ell, theta) choice gives a feasible cut") {
    for (std::uint64_t seed : {51u, 52u}) {
        auto inst = finite_random_node_instance(seed, 12, 4);
        auto x = random_feasible_node_x(inst, seed + 3);
        for (int ell = 1; ell <= inst.k(); ++ell)
            for (int g = 1; g < 10; ++g) {
                CutSolution cut = round_node_at(inst, x, ell, g / 20.0);
                CHECK(verify_node_cut(inst, cut).feasible);
            }
    }
}

TEST_CASE("deterministic node rounding meets the 2(1-1/k) bound") {
    auto star = star_instance(3, 1.0);
    FractionalSolution xs = node_x(star, {0.0, 0.0, 0.0, 1.0});
    CutSolution cs = round_node_deterministic(star, xs);
    CHECK(cs.cost == 1.0);

    auto path = path_instance(1.0, 1.0);
    FractionalSolution xp = node_x(path, {0.0, 0.5, 0.5, 0.0});
    CutSolution cp = round_node_deterministic(path, xp);
    CHECK(cp.cost == 1.0);

    for (std::uint64_t seed = 60; seed < 110; ++seed) {
        auto inst = finite_random_node_instance(seed, 10 + seed % 8, 2 + seed % 4);
        auto x = random_feasible_node_x(inst, seed + 7);
        CutSolution cut = round_node_deterministic(inst, x);
        double bound = 2.0 * (1.0 - 1.0 / inst.k()) * lp_cost(inst, x);
        CHECK(cut.cost <= bound);
        CHECK(verify_node_cut(inst, cut).feasible);
    }
}

TEST_CASE("the node sweep equals a dense grid scan over ell and theta") {
    for (std::uint64_t seed : {71u, 72u, 73u}) {
        auto inst = finite_random_node_instance(seed, 12, 3);
        auto x = random_feasible_node_x(inst, seed + 11);
        CutSolution sweep = round_node_deterministic(inst, x);

        double best = kInf;
        std::vector<double> grid;
        for (int g = 1; g <= 500; ++g) grid.push_back(g / 1001.0);
        // add interval endpoints: d_i(v) and d_i(v) - x_v for every terminal
        for (int i = 0; i < inst.k(); ++i) {
            NodeDistanceTable t = node_sssp(inst, x, inst.terminals[i]);
            for (NodeId v = 0; v < inst.n; ++v) {
                for (double p : {t.dist[v], t.dist[v] - x.values[v]})
                    if (p > 0.0 && p < 0.5) grid.push_back(p);
            }
        }
        for (int ell = 1; ell <= inst.k(); ++ell)
            for (double theta : grid)
                best = std::min(best, round_node_at(inst, x, ell, theta).cost);
        CHECK(sweep.cost == doctest::Approx(best).epsilon(1e-12));
    }
}

TEST_CASE("verify node cut rejects terminals and infinite nodes") {
    auto star = star_instance(3, 1.0);
    CutSolution empty;
    empty.kind = CutKind::Node;
    CHECK_FALSE(verify_node_cut(star, empty).feasible);

    CutSolution bad;
    bad.kind = CutKind::Node;
    bad.members = {0};
    CHECK_THROWS_AS(verify_node_cut(star, bad), InputError);

    auto heavy = node_instance(4, {{0, 2}, {2, 3}, {3, 1}}, {0.0, 0.0, kInf, 1.0}, {0, 1});
    CutSolution infcut;
    infcut.kind = CutKind::Node;
    infcut.members = {2};
    CHECK_THROWS_AS(verify_node_cut(heavy, infcut), InputError);
}

TEST_CASE("node Monte Carlo mean stays under the 2(1-1/k) envelope") {
    auto inst = finite_random_node_instance(83, 14, 3);
    auto x = random_feasible_node_x(inst, 84);
    double lp = lp_cost(inst, x);
    const int trials = 4000;
    double mean = 0.0;
    for (int t = 0; t < trials; ++t)
        mean += round_node_randomized(inst, x, trial_seed(991, t)).cost / trials;
    CHECK(mean <= 2.0 * (1.0 - 1.0 / inst.k()) * lp * 1.02);
}
