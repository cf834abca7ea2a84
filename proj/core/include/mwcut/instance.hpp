#ifndef MWCUT_INSTANCE_HPP
#define MWCUT_INSTANCE_HPP

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mwcut {

// Node ids are 0-based everywhere in memory. The text formats are 1-based;
// io.cpp owns the (fixed) mapping.
using NodeId = int;

// Infinite weight is the IEEE infinity, used as a distinguished token: it is
// never a large finite float, inf + x == inf holds, and cost sums reject it.
inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline bool is_inf(double w) { return w == kInf; }

// Malformed text input (carries a line number in the message).
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Structurally valid input that violates an operation's precondition
// (infeasible solution, dimension mismatch, invalid cut, ...).
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Internal safety guard tripped (iteration cap, oracle size limit).
struct GuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Arc {
    NodeId tail = 0;
    NodeId head = 0;
    double weight = 0.0;

    bool operator==(const Arc&) const = default;
};

// Directed edge-weighted multiway cut instance. Parallel arcs are permitted,
// self-loops are not. Terminals are distinct and ordered.
struct DirectedInstance {
    int n = 0;
    std::vector<Arc> arcs;
    std::vector<NodeId> terminals;

    int num_arcs() const { return static_cast<int>(arcs.size()); }
    int k() const { return static_cast<int>(terminals.size()); }
    bool is_terminal(NodeId v) const;

    bool operator==(const DirectedInstance&) const = default;
};

// Undirected node-weighted multiway cut instance. Terminal weights are
// infinite by definition (terminals cannot be removed); validation
// normalizes the stored value accordingly.
struct NodeInstance {
    int n = 0;
    std::vector<std::pair<NodeId, NodeId>> edges;
    std::vector<double> weights;  // one per node
    std::vector<NodeId> terminals;

    int num_edges() const { return static_cast<int>(edges.size()); }
    int k() const { return static_cast<int>(terminals.size()); }
    bool is_terminal(NodeId v) const;

    bool operator==(const NodeInstance&) const = default;
};

// Throw InputError unless the instance invariants hold (k >= 2, ids in
// range, distinct terminals, nonnegative weights, no self-loops).
void validate(const DirectedInstance& inst);
void validate(NodeInstance& inst);  // also pins terminal weights to inf

enum class LpMode { Edge, Node };

// Candidate solution to the distance LP: per-arc (Edge) or per-node (Node)
// nonnegative lengths.
struct FractionalSolution {
    LpMode mode = LpMode::Edge;
    std::vector<double> values;

    bool operator==(const FractionalSolution&) const = default;
};

enum class CutKind { Edge, Node };

// A multiway cut: arc indices (Edge) or node ids (Node), always sorted.
// cost is the sum of member weights. meta records how the cut was produced.
struct CutSolution {
    CutKind kind = CutKind::Edge;
    std::vector<int> members;
    double cost = 0.0;

    std::optional<double> theta;
    std::optional<int> ell;  // 1-based index of the spared terminal
    std::optional<std::uint64_t> seed;
};

struct LpResult {
    FractionalSolution solution;
    double primal_cost = 0.0;
    double dual_flow_value = 0.0;
    double epsilon = 0.0;  // certified relative gap: primal <= (1+epsilon)*dual
    long iterations = 0;
};

// Canonical form for node instances: terminals are an independent set with
// infinite weight. Already-canonical instances are returned unchanged;
// otherwise every terminal s_i gets a fresh degree-1 dummy terminal s'_i and
// the dummies become the terminal set. The minimum multiway cut value is
// preserved.
NodeInstance canonicalize_node_instance(const NodeInstance& inst);

bool node_instance_is_canonical(const NodeInstance& inst);

}  // namespace mwcut

#endif
