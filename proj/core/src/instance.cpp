#include "mwcut/instance.hpp"

#include <algorithm>
#include <cmath>

namespace mwcut {

namespace {

void check_terminals(int n, const std::vector<NodeId>& terminals) {
    if (terminals.size() < 2) throw InputError("instance needs at least 2 terminals");
    std::vector<NodeId> sorted = terminals;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw InputError("duplicate terminal id");
    for (NodeId t : terminals)
        if (t < 0 || t >= n) throw InputError("terminal id out of range");
}

void check_weight(double w) {
    if (std::isnan(w) || w < 0.0) throw InputError("weights must be nonnegative");
}

}  // namespace

bool DirectedInstance::is_terminal(NodeId v) const {
    return std::find(terminals.begin(), terminals.end(), v) != terminals.end();
}

bool NodeInstance::is_terminal(NodeId v) const {
    return std::find(terminals.begin(), terminals.end(), v) != terminals.end();
}

void validate(const DirectedInstance& inst) {
    if (inst.n <= 0) throw InputError("node count must be positive");
    check_terminals(inst.n, inst.terminals);
    for (const Arc& a : inst.arcs) {
        if (a.tail < 0 || a.tail >= inst.n || a.head < 0 || a.head >= inst.n)
            throw InputError("arc endpoint out of range");
        if (a.tail == a.head) throw InputError("self-loops are not allowed");
        check_weight(a.weight);
    }
}

void validate(NodeInstance& inst) {
    if (inst.n <= 0) throw InputError("node count must be positive");
    check_terminals(inst.n, inst.terminals);
    if (static_cast<int>(inst.weights.size()) != inst.n)
        throw InputError("need exactly one weight per node");
    for (double w : inst.weights) check_weight(w);
    for (auto [u, v] : inst.edges) {
        if (u < 0 || u >= inst.n || v < 0 || v >= inst.n)
            throw InputError("edge endpoint out of range");
        if (u == v) throw InputError("self-loops are not allowed");
    }
    // terminals cannot be removed
    for (NodeId t : inst.terminals) inst.weights[t] = kInf;
}

bool node_instance_is_canonical(const NodeInstance& inst) {
    for (auto [u, v] : inst.edges)
        if (inst.is_terminal(u) && inst.is_terminal(v)) return false;
    return true;
}

NodeInstance canonicalize_node_instance(const NodeInstance& inst) {
    NodeInstance out = inst;
    validate(out);
    if (node_instance_is_canonical(out)) return out;

    const int k = out.k();
    out.weights.resize(out.n + k, kInf);
    std::vector<NodeId> dummies(k);
    for (int i = 0; i < k; ++i) {
        dummies[i] = out.n + i;
        out.edges.emplace_back(out.terminals[i], dummies[i]);
        // the old terminal stays unremovable but is no longer a terminal
        out.weights[out.terminals[i]] = kInf;
    }
    out.n += k;
    out.terminals = dummies;
    validate(out);
    return out;
}

}  // namespace mwcut
