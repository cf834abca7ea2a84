#ifndef MWCUT_LP_HPP
#define MWCUT_LP_HPP

#include <vector>

#include "mwcut/instance.hpp"

namespace mwcut {

// Objective sum(w * x) over finite-weight members. Positive length on an
// infinite-weight member makes the cost infinite.
double lp_cost(const DirectedInstance& inst, const FractionalSolution& x);
double lp_cost(const NodeInstance& inst, const FractionalSolution& x);

struct FeasibilityReport {
    bool feasible = false;
    double min_distance = 0.0;
    int from_terminal = -1;  // index into inst.terminals
    int to_terminal = -1;
    // a shortest violating path when infeasible: arc indices (edge mode)
    // or node ids including both terminals (node mode)
    std::vector<int> witness;
};

// Feasible iff every ordered inter-terminal distance is >= 1 - tol.
FeasibilityReport verify_feasible(const DirectedInstance& inst, const FractionalSolution& x,
                                  double tol = 1e-9);
FeasibilityReport verify_feasible(const NodeInstance& inst, const FractionalSolution& x,
                                  double tol = 1e-9);

// Divide all lengths by the minimum inter-terminal distance D. Throws
// InputError when D == 0; when D is infinite the result is all zeros.
FractionalSolution scale_to_feasible(const DirectedInstance& inst, const FractionalSolution& lengths);
FractionalSolution scale_to_feasible(const NodeInstance& inst, const FractionalSolution& lengths);

// (1+epsilon)-approximate solution of the distance LP via multiplicative
// length updates on the dual maximum multicommodity flow (Garg-Konemann
// style, one globally shortest inter-terminal path at a time). Deterministic
// for fixed (instance, epsilon). The returned epsilon is the certified gap
// primal/dual - 1, always <= the requested epsilon.
LpResult solve_lp_mwu(const DirectedInstance& inst, double epsilon);

// Node-weighted variant: canonicalizes, solves the directed LP on the
// node-split reduction and maps split-arc lengths back to node lengths.
LpResult solve_node_lp(const NodeInstance& inst, double epsilon);

}  // namespace mwcut

#endif
