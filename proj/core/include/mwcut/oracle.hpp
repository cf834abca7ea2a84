#ifndef MWCUT_ORACLE_HPP
#define MWCUT_ORACLE_HPP

#include "mwcut/instance.hpp"

namespace mwcut {

// Exact exponential-time references for desk-scale validation. Branch and
// bound over finite-weight candidates in descending weight order, pruned by
// the incumbent cost and by reachability. Equal-cost optima are resolved to
// the lexicographically smallest member set.

// Minimum directed multiway cut. Guard: at most 26 finite-weight arcs.
CutSolution exact_min_dirmc(const DirectedInstance& inst);

// Minimum node multiway cut. Guard: at most 24 finite-weight non-terminals.
CutSolution exact_min_nodemc(const NodeInstance& inst);

// Minimum arc set destroying all from->to paths only (one direction).
CutSolution exact_one_way_cut(const DirectedInstance& inst, NodeId from, NodeId to);

}  // namespace mwcut

#endif
