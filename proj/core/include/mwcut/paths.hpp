#ifndef MWCUT_PATHS_HPP
#define MWCUT_PATHS_HPP

#include <vector>

#include "mwcut/instance.hpp"

namespace mwcut {

// Forward-star adjacency for a DirectedInstance; reused across Dijkstra runs.
struct ForwardGraph {
    std::vector<int> first;     // n+1 offsets
    std::vector<int> arc_id;    // arc index per adjacency slot
    std::vector<NodeId> head;   // head node per adjacency slot

    explicit ForwardGraph(const DirectedInstance& inst);
};

struct DistanceTable {
    NodeId source = 0;
    std::vector<double> dist;  // kInf if unreachable
};

// Single-source shortest paths under the lengths in x (one per arc).
// dist[source] = 0. Lengths apply to every arc regardless of its weight.
DistanceTable sssp(const DirectedInstance& inst, const FractionalSolution& x, NodeId source);

// As sssp but also fills parent_arc[v] = arc index used to reach v (-1 at the
// source and for unreachable nodes).
DistanceTable sssp_with_parents(const DirectedInstance& inst, const FractionalSolution& x,
                                NodeId source, std::vector<int>& parent_arc);

// For each node v, the h lexicographically smallest (d(s_i, v), i) pairs:
// distances measured from terminal to v, ties broken by terminal index.
struct NearTerminalTable {
    int h = 0;
    // entry(v, j): j-th nearest terminal of v, j < count(v)
    std::vector<int> count;        // labels accepted per node
    std::vector<int> term;         // n*h, terminal INDEX (into inst.terminals)
    std::vector<double> dist;      // n*h

    int terminal_of(NodeId v, int j) const { return term[static_cast<size_t>(v) * h + j]; }
    double dist_of(NodeId v, int j) const { return dist[static_cast<size_t>(v) * h + j]; }
};

NearTerminalTable h_nearest_terminals(const DirectedInstance& inst, const FractionalSolution& x, int h);

// Minimum over ordered terminal pairs (i, j), i != j, of d(s_i, s_j).
double min_interterminal_distance(const DirectedInstance& inst, const FractionalSolution& x);

namespace detail {

// h-nearest with label parents, used to recover a globally shortest
// inter-terminal path. Runs on a caller-provided ForwardGraph with explicit
// per-arc lengths so the MWU solver can reuse one graph across iterations.
struct LabeledNearTable {
    int h = 0;
    std::vector<int> count;
    std::vector<int> term;
    std::vector<double> dist;
    std::vector<int> label_of;    // n*h -> label id
    std::vector<int> parent;      // per label: predecessor label id or -1
    std::vector<int> via_arc;     // per label: arc used to reach it or -1
};

// Labels at distance >= dist_cap are discarded (their table slots stay
// empty); callers that only consume anchors below a bound use it to skip
// most of the graph.
LabeledNearTable h_nearest_on(const ForwardGraph& g, int n, const std::vector<double>& len,
                              const std::vector<NodeId>& terminals, int h,
                              double dist_cap = kInf);

// Parent-free h=2 variant with small heap items, for the rounding hot path.
NearTerminalTable two_nearest_table(const ForwardGraph& g, int n, const std::vector<double>& len,
                                    const std::vector<NodeId>& terminals, double dist_cap);

// Globally shortest inter-terminal path: returns (distance, source terminal
// index, target terminal index, arcs on the path). distance = kInf if no
// ordered pair is connected.
struct InterTerminalPath {
    double dist = kInf;
    int from_idx = -1;
    int to_idx = -1;
    std::vector<int> arcs;
};

InterTerminalPath shortest_interterminal_path(const ForwardGraph& g, int n,
                                              const std::vector<double>& len,
                                              const std::vector<NodeId>& terminals);

// Reusable two-label search for tight loops (the LP solver calls this once
// per routing step); buffers persist across compute() calls.
class NearestPathFinder {
public:
    NearestPathFinder(const ForwardGraph& g, int n, std::vector<NodeId> terminals);

    // Labels at distance >= dist_cap are discarded; with a cap the reported
    // distance is only meaningful when it is below the cap.
    const InterTerminalPath& compute(const std::vector<double>& len, double dist_cap = kInf);

private:
    struct Item {
        double dist;
        int term;
        NodeId node;
        int parent_label;
        int via_arc;
    };
    static bool later(const Item& a, const Item& b);

    const ForwardGraph& g_;
    int n_;
    std::vector<NodeId> terminals_;
    std::vector<Item> heap_;
    std::vector<int> count_;
    std::vector<int> term_;
    std::vector<double> dist_;
    std::vector<int> label_of_;
    std::vector<int> parent_;
    std::vector<int> via_arc_;
    InterTerminalPath out_;
};

}  // namespace detail

}  // namespace mwcut

#endif
