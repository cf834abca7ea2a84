#ifndef MWCUT_REDUCTIONS_HPP
#define MWCUT_REDUCTIONS_HPP

#include <utility>
#include <vector>

#include "mwcut/instance.hpp"

namespace mwcut {

// Node-split reduction of a canonical node instance to an edge-weighted
// directed one. Every non-terminal v becomes v_in -> v_out with arc weight
// w_v; every undirected edge uv becomes two infinite-weight arcs between the
// out-copy of one endpoint and the in-copy of the other. Terminals stay
// single nodes. Minimum cut values coincide and cuts map back through the
// split arcs.
struct NodeSplitResult {
    DirectedInstance directed;
    std::vector<int> split_arc_of_node;  // -1 for terminals
    std::vector<NodeId> in_copy;         // v_in (== v)
    std::vector<NodeId> out_copy;        // v_out (== v for terminals)
};

NodeSplitResult node_split_reduction(const NodeInstance& inst);

// Map an edge cut on the reduced instance back to a node cut. Every member
// must be a split arc.
CutSolution map_split_cut_to_nodes(const NodeInstance& inst, const NodeSplitResult& red,
                                   const CutSolution& cut);

// Node-weighted directed st-bi-cut instance: remove a min-weight node set so
// that neither s reaches t nor t reaches s.
struct StBiCutInstance {
    int n = 0;
    std::vector<std::pair<NodeId, NodeId>> arcs;
    std::vector<double> weights;
    NodeId s = 0;
    NodeId t = 0;
};

// Reduction from a 4-terminal node instance: original edges bidirected, two
// new nodes s,t attached to the terminals by infinite-weight arcs
// (s,s1),(s1,s),(s2,s),(s2,t),(s,s3),(t,s3),(t,s4),(s4,t). A node set is a
// feasible 4-way cut iff it is a feasible two-way cut of the result.
StBiCutInstance reduce_4terminal_to_stbicut(const NodeInstance& inst);

// True iff removing the flagged nodes kills every s->t and t->s path.
bool stbicut_separates(const StBiCutInstance& inst, const std::vector<bool>& removed);

// Node-split composition for callers that need an edge-weighted instance.
struct StBiCutSplitResult {
    DirectedInstance directed;
    std::vector<int> split_arc_of_node;  // -1 for s and t
};

StBiCutSplitResult to_directed(const StBiCutInstance& inst);

}  // namespace mwcut

#endif
