#ifndef MWCUT_DIRROUND_HPP
#define MWCUT_DIRROUND_HPP

#include <cstdint>
#include <vector>

#include "mwcut/instance.hpp"

namespace mwcut {

// Super-terminal augmentation: node n+i is the super terminal t_i, joined to
// every s_j, j != i, by an infinite-weight arc of length 0. Arc indices
// < base_arcs refer to the original instance.
struct AugmentedInstance {
    DirectedInstance graph;
    FractionalSolution lengths;
    int base_nodes = 0;
    int base_arcs = 0;

    NodeId super_terminal(int i) const { return base_nodes + i; }
};

AugmentedInstance augment_with_super_terminals(const DirectedInstance& inst,
                                               const FractionalSolution& x);

// Per-arc cut intervals: for e = (u,v), I_j(e) = [d(a_j,u), d(a_j,u) + x_e)
// where a_1, a_2 are the two terminals nearest to u. A missing anchor is
// +inf, which makes the interval empty.
struct CutIntervals {
    std::vector<double> anchor1;
    std::vector<double> anchor2;
    std::vector<double> width;  // x_e

    bool contains(int arc, double theta) const {
        return (theta >= anchor1[arc] && theta < anchor1[arc] + width[arc]) ||
               (theta >= anchor2[arc] && theta < anchor2[arc] + width[arc]);
    }
};

CutIntervals build_cut_intervals(const DirectedInstance& inst, const FractionalSolution& x);

// Literal ball rounding: C = union over i of the arcs leaving B(t_i, theta).
CutSolution round_at_theta(const DirectedInstance& inst, const FractionalSolution& x, double theta);

// Interval variant with theta drawn uniformly from (0,1) by a seeded
// generator; members may strictly contain round_at_theta's for the same
// theta. Always feasible; E[cost] <= 2 * lp_cost.
CutSolution round_randomized(const DirectedInstance& inst, const FractionalSolution& x,
                             std::uint64_t seed);

// Interval variant at a fixed theta.
CutSolution round_interval_at_theta(const DirectedInstance& inst, const FractionalSolution& x,
                                    double theta);

// Sweep of all interval endpoints; returns the cheapest interval cut over
// theta in (0,1). cost <= 2 * lp_cost with certainty.
CutSolution round_deterministic(const DirectedInstance& inst, const FractionalSolution& x);

struct CutReport {
    bool feasible = false;
    int from_terminal = -1;
    int to_terminal = -1;
    std::vector<int> witness;  // surviving arc path when infeasible
};

// True iff no ordered terminal pair is connected once the member arcs are
// removed.
CutReport verify_cut(const DirectedInstance& inst, const CutSolution& cut);

bool edge_cut_separates(const DirectedInstance& inst, const std::vector<bool>& removed_arcs);

// Undirected edge-weighted rounding on a bidirected instance (every arc has
// a reverse twin of equal weight and equal x). theta must lie in (0, 1/2);
// each cut edge is reported once, via the arc index of its lower-indexed
// orientation. E[cost] <= 2 * undirected_lp_cost for theta uniform.
CutSolution round_edge_undirected(const DirectedInstance& inst, const FractionalSolution& x,
                                  double theta);

// Pairing of a bidirected instance: twin[a] = index of the reverse arc.
std::vector<int> bidirected_twins(const DirectedInstance& inst);

// sum(w_e x_e) over undirected edges, i.e. half the directed objective.
double undirected_lp_cost(const DirectedInstance& inst, const FractionalSolution& x);

// Feasibility for undirected cuts: removes both orientations of each member.
CutReport verify_undirected_cut(const DirectedInstance& inst, const CutSolution& cut);

}  // namespace mwcut

#endif
