#ifndef MWCUT_FAMILIES_HPP
#define MWCUT_FAMILIES_HPP

#include <cstdint>

#include "mwcut/instance.hpp"

namespace mwcut {

// Closed-form reference statistics for the analytic families. Fields that do
// not apply to a family are zero.
struct FamilyStats {
    int index = 0;          // recursion level i, or chain length h
    double alpha = 0.0;     // integrality gap 2 - 1/(i+1) (gap family)
    double one_way_cut = 0.0;
    double two_way_cut = 0.0;
    double lp_opt = 0.0;
    double flow_opt = 0.0;
    double pair_sum = 0.0;  // 2/h (fractionality family)
};

// Recursive two-terminal gap family G_i: |V| = 5*2^i - 1, finite unit arcs
// 3*2^i - 2, all other arcs infinite. One-way cut = LP opt = i+1, two-way
// cut = 2i+1, so the integrality gap 2 - 1/(i+1) approaches 2.
// Terminals are ordered (s, t).
DirectedInstance gen_gap_family(int level);
FamilyStats gap_family_stats(int level);

// Two-terminal chain family on nodes {s, t, u_1..u_h, v_1..v_h} whose LP
// optimum 2(h-1)/h forces every optimal solution to satisfy
// x(u_i,u_i+1) + x(v_i,v_i+1) = 2/h; no coordinate can exceed 2/h.
DirectedInstance gen_fractionality_family(int h);
FamilyStats fractionality_stats(int h);

// Seed-deterministic random instances; every ordered terminal pair is
// connected (rejection sampled). Weights are uniform in [wmin, wmax].
DirectedInstance gen_random_dirmc(int n, double arc_density, int k, double wmin, double wmax,
                                  std::uint64_t seed);

// Undirected node-weighted variant; terminal-terminal edges are never
// sampled, so the result is canonical.
NodeInstance gen_random_nodemc(int n, double edge_density, int k, double wmin, double wmax,
                               std::uint64_t seed);

}  // namespace mwcut

#endif
