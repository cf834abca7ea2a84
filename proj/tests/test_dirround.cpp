#include <doctest.h>

#include <set>

#include "mwcut/dirround.hpp"
#include "mwcut/families.hpp"
#include "mwcut/lp.hpp"
#include "mwcut/paths.hpp"
#include "testutil.hpp"

using namespace mwcut;
using namespace testutil;

namespace {

DirectedInstance two_arc_instance() {
    return dir_instance(2, {{0, 1, 1.0}, {1, 0, 1.0}}, {0, 1});
}

FractionalSolution random_feasible_x(const DirectedInstance& inst, std::uint64_t seed) {
    FractionalSolution x = uniform_edge_x(inst, 0.0);
    std::mt19937_64 rng(seed);
    for (int a = 0; a < inst.num_arcs(); ++a)
        if (!is_inf(inst.arcs[a].weight)) x.values[a] = 0.02 + uniform01(rng);
    return scale_to_feasible(inst, x);
}

}  // namespace

TEST_CASE("super-terminal augmentation adds k(k-1) arcs") {
    auto inst = two_arc_instance();
    auto x = edge_x(inst, {1.0, 1.0});
    AugmentedInstance aug = augment_with_super_terminals(inst, x);
    CHECK(aug.graph.n == 4);
    CHECK(aug.graph.num_arcs() - aug.base_arcs == 2);

    auto four = gen_random_dirmc(10, 0.3, 4, 1.0, 2.0, 3);
    auto xf = random_feasible_x(four, 5);
    AugmentedInstance aug4 = augment_with_super_terminals(four, xf);
    CHECK(aug4.graph.num_arcs() - aug4.base_arcs == 12);

    // feasibility makes every super terminal at distance >= 1 from its own
    for (int i = 0; i < four.k(); ++i) {
        DistanceTable t = sssp(aug4.graph, aug4.lengths, aug4.super_terminal(i));
        CHECK(t.dist[four.terminals[i]] >= 1.0 - 1e-9);
        for (int j = 0; j < four.k(); ++j)
            if (j != i) CHECK(t.dist[four.terminals[j]] == 0.0);
    }
}

TEST_CASE("ball rounding cuts both arcs of the two-arc instance") {
    auto inst = two_arc_instance();
    auto x = edge_x(inst, {1.0, 1.0});
    CutSolution cut = round_at_theta(inst, x, 0.5);
    CHECK(cut.members == std::vector<int>{0, 1});
    CHECK(cut.cost == 2.0);
}

TEST_CASE("ball rounding on the h=2 chain at theta 1/4") {
    auto inst = gen_fractionality_family(2);
    auto x = uniform_edge_x(inst, 0.5);
    CutSolution cut = round_at_theta(inst, x, 0.25);
    CHECK(cut.cost == 2.0);  // both unit arcs, twice the LP cost of 1
    CHECK(verify_cut(inst, cut).feasible);
}

TEST_CASE("ball rounding rejects infeasible lengths") {
    auto inst = two_arc_instance();
    CHECK_THROWS_AS(round_at_theta(inst, edge_x(inst, {0.5, 1.0}), 0.5), InputError);
}

TEST_CASE("cut intervals match the two nearest terminal distances") {
    auto inst = gen_random_dirmc(20, 0.2, 4, 1.0, 2.0, 9);
    auto x = random_feasible_x(inst, 10);
    CutIntervals iv = build_cut_intervals(inst, x);
    auto naive = naive_h_nearest(inst, x, 2);
    for (int a = 0; a < inst.num_arcs(); ++a) {
        NodeId u = inst.arcs[a].tail;
        CHECK(iv.width[a] == x.values[a]);
        if (naive[u].empty()) {
            CHECK(is_inf(iv.anchor1[a]));
        } else {
            CHECK(iv.anchor1[a] == naive[u][0].first);
            if (naive[u].size() > 1)
                CHECK(iv.anchor2[a] == naive[u][1].first);
            else
                CHECK(is_inf(iv.anchor2[a]));
        }
    }
}

TEST_CASE("zero length means empty intervals") {
    auto inst = gen_fractionality_family(2);
    auto x = uniform_edge_x(inst, 0.5);
    CutIntervals iv = build_cut_intervals(inst, x);
    for (int a = 0; a < inst.num_arcs(); ++a)
        if (x.values[a] == 0.0)
            for (double theta : {0.1, 0.5, 0.9}) CHECK_FALSE(iv.contains(a, theta));
}

TEST_CASE("randomized rounding always cuts saturated bottleneck arcs") {
    auto inst = two_arc_instance();
    auto x = edge_x(inst, {1.0, 1.0});
    for (std::uint64_t seed : {1u, 2u, 3u, 42u}) {
        CutSolution cut = round_randomized(inst, x, seed);
        CHECK(cut.members == std::vector<int>{0, 1});
        CHECK(cut.seed == seed);
        CHECK(verify_cut(inst, cut).feasible);
    }
}

TEST_CASE("the ball cut is contained in the interval cut at every theta") {
    for (std::uint64_t seed : {5u, 6u, 7u}) {
        auto inst = gen_random_dirmc(18, 0.2, 4, 1.0, 2.0, seed);
        auto x = random_feasible_x(inst, seed + 100);
        for (int g = 1; g < 20; ++g) {
            double theta = g / 20.0;
            auto ball = round_at_theta(inst, x, theta);
            auto interval = round_interval_at_theta(inst, x, theta);
            std::set<int> sup(interval.members.begin(), interval.members.end());
            for (int a : ball.members) CHECK(sup.count(a) == 1);
            CHECK(verify_cut(inst, ball).feasible);
            CHECK(verify_cut(inst, interval).feasible);
        }
    }
}

TEST_CASE("deterministic rounding on the two-arc instance") {
    auto inst = two_arc_instance();
    auto x = edge_x(inst, {1.0, 1.0});
    CutSolution cut = round_deterministic(inst, x);
    CHECK(cut.cost == 2.0);
    CHECK(cut.cost <= 2.0 * lp_cost(inst, x));
}

TEST_CASE("deterministic rounding beats twice the LP cost on random instances") {
    for (std::uint64_t seed = 60; seed < 110; ++seed) {
        auto inst = gen_random_dirmc(12 + static_cast<int>(seed % 20), 0.2, 3 + seed % 3, 0.5,
                                     3.0, seed);
        auto x = random_feasible_x(inst, seed + 1);
        CutSolution cut = round_deterministic(inst, x);
        CHECK(cut.cost <= 2.0 * lp_cost(inst, x));
        CHECK(verify_cut(inst, cut).feasible);
    }
}

TEST_CASE("the sweep minimum equals a dense grid scan") {
    for (std::uint64_t seed : {8u, 9u, 10u, 11u}) {
        auto inst = gen_random_dirmc(14, 0.25, 3, 0.5, 2.0, seed);
        auto x = random_feasible_x(inst, seed + 50);
        CutSolution sweep = round_deterministic(inst, x);

        CutIntervals iv = build_cut_intervals(inst, x);
        std::vector<double> grid;
        for (int g = 1; g <= 1000; ++g) grid.push_back(g / 1001.0);
        for (int a = 0; a < inst.num_arcs(); ++a) {
            for (double p : {iv.anchor1[a], iv.anchor2[a], iv.anchor1[a] + iv.width[a],
                             iv.anchor2[a] + iv.width[a]})
                if (p > 0.0 && p < 1.0) grid.push_back(p);
        }
        double best = kInf;
        for (double theta : grid) {
            double cost = 0.0;
            for (int a = 0; a < inst.num_arcs(); ++a)
                if (iv.contains(a, theta)) cost += inst.arcs[a].weight;
            best = std::min(best, cost);
        }
        CHECK(sweep.cost == doctest::Approx(best).epsilon(1e-12));
    }
}

TEST_CASE("deterministic rounding on the gap family stays above the two-way optimum") {
    auto inst = gen_gap_family(3);
    LpResult lp = solve_lp_mwu(inst, 0.05);
    CutSolution cut = round_deterministic(inst, lp.solution);
    CHECK(cut.cost <= 2.0 * lp.primal_cost);
    CHECK(cut.cost >= 7.0);  // any feasible two-way cut costs at least 2i+1
    CHECK(verify_cut(inst, cut).feasible);
}

TEST_CASE("verify cut reports witnesses") {
    auto inst = two_arc_instance();
    CutSolution empty;
    empty.kind = CutKind::Edge;
    auto rep = verify_cut(inst, empty);
    CHECK_FALSE(rep.feasible);
    CHECK(rep.witness.size() == 1);

    CutSolution full;
    full.kind = CutKind::Edge;
    full.members = {0, 1};
    full.cost = 2.0;
    CHECK(verify_cut(inst, full).feasible);
}

TEST_CASE("undirected rounding on a single edge") {
    auto inst = dir_instance(2, {{0, 1, 3.0}, {1, 0, 3.0}}, {0, 1});
    auto x = edge_x(inst, {1.0, 1.0});
    for (double theta : {0.1, 0.25, 0.4}) {
        CutSolution cut = round_edge_undirected(inst, x, theta);
        CHECK(cut.members == std::vector<int>{0});
        CHECK(cut.cost == 3.0);
        CHECK(verify_undirected_cut(inst, cut).feasible);
    }
}

TEST_CASE("undirected rounding cuts the terminal triangle") {
    // terminals 0,1,2 pairwise joined by unit edges, x = 1/2 per edge
    auto inst = dir_instance(3,
                             {{0, 1, 1.0}, {1, 0, 1.0}, {1, 2, 1.0}, {2, 1, 1.0},
                              {0, 2, 1.0}, {2, 0, 1.0}},
                             {0, 1, 2});
    auto x = uniform_edge_x(inst, 0.5);
    CutSolution cut = round_edge_undirected(inst, x, 0.25);
    CHECK(cut.cost == 3.0);
    CHECK(undirected_lp_cost(inst, x) == 1.5);
    CHECK(cut.cost <= 2.0 * undirected_lp_cost(inst, x));
    CHECK(verify_undirected_cut(inst, cut).feasible);
}

TEST_CASE("undirected rounding needs a bidirected instance") {
    auto inst = dir_instance(2, {{0, 1, 1.0}}, {0, 1});
    CHECK_THROWS_AS(round_edge_undirected(inst, edge_x(inst, {1.0}), 0.25), InputError);
}

TEST_CASE("undirected Monte Carlo mean stays under twice the LP cost") {
    // bidirect a random instance
    auto base = gen_random_nodemc(14, 0.25, 3, 1.0, 2.0, 77);
    DirectedInstance inst;
    inst.n = base.n;
    inst.terminals = base.terminals;
    std::mt19937_64 wrng(7);
    std::vector<double> ew;
    for (auto [u, v] : base.edges) {
        double w = 1.0 + uniform01(wrng);
        inst.arcs.push_back({u, v, w});
        inst.arcs.push_back({v, u, w});
        ew.push_back(w);
    }
    validate(inst);
    FractionalSolution x = uniform_edge_x(inst, 0.0);
    std::mt19937_64 rng(123);
    for (size_t e = 0; e < base.edges.size(); ++e)
        x.values[2 * e] = x.values[2 * e + 1] = 0.05 + uniform01(rng);
    // scale so the undirected distances are feasible
    double best = kInf;
    {
        auto scaled = scale_to_feasible(inst, x);  // directed distances equal undirected here
        x = scaled;
        best = undirected_lp_cost(inst, x);
    }
    const int trials = 4000;
    double mean = 0.0;
    std::mt19937_64 trng(99);
    for (int t = 0; t < trials; ++t) {
        double theta = 0.5 * uniform01(trng);
        mean += round_edge_undirected(inst, x, theta).cost / trials;
    }
    CHECK(mean <= 2.0 * best * 1.02);
}
