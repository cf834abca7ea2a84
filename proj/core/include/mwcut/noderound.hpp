#ifndef MWCUT_NODEROUND_HPP
#define MWCUT_NODEROUND_HPP

#include <cstdint>
#include <vector>

#include "mwcut/instance.hpp"

namespace mwcut {

// Node-weighted distances: dist[v] counts the x-weights of every node on the
// path including both endpoints; dist[source] = x_source.
struct NodeDistanceTable {
    NodeId source = 0;
    std::vector<double> dist;
};

NodeDistanceTable node_sssp(const NodeInstance& inst, const FractionalSolution& x, NodeId source);
NodeDistanceTable node_sssp_with_parents(const NodeInstance& inst, const FractionalSolution& x,
                                         NodeId source, std::vector<NodeId>& parent);

// Boundary of the radius-r ball around source: v is a member iff
// r < d(source, v) <= r + x_v.
struct BoundarySet {
    NodeId center = 0;
    double radius = 0.0;
    std::vector<NodeId> members;  // sorted
};

BoundarySet boundary(const NodeInstance& inst, const FractionalSolution& x, NodeId source, double r);

// Draw ell uniform on {1..k} then theta uniform on (0, 1/2); cut the union
// of boundaries B+(s_i, theta), i != ell. Always feasible for feasible x;
// expected cost <= 2(1 - 1/k) * lp_cost.
CutSolution round_node_randomized(const NodeInstance& inst, const FractionalSolution& x,
                                  std::uint64_t seed);

// Fixed (ell, theta) variant of the same cut; ell is 1-based.
CutSolution round_node_at(const NodeInstance& inst, const FractionalSolution& x, int ell, double theta);

// Endpoint sweep over all per-node intervals and all k choices of ell;
// returns the cheapest cut, cost <= 2(1 - 1/k) * lp_cost with certainty.
CutSolution round_node_deterministic(const NodeInstance& inst, const FractionalSolution& x);

struct NodeCutReport {
    bool feasible = false;
    int from_terminal = -1;
    int to_terminal = -1;
    std::vector<NodeId> witness;  // surviving path when infeasible
};

// Throws InputError if the cut contains a terminal or an infinite-weight
// node; otherwise reports whether removing the cut nodes pairwise
// disconnects the terminals.
NodeCutReport verify_node_cut(const NodeInstance& inst, const CutSolution& cut);

// Raw reachability check used by oracles and exhaustive sweeps.
bool node_cut_separates(const NodeInstance& inst, const std::vector<bool>& removed);

}  // namespace mwcut

#endif
