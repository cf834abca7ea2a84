#include "mwcut/reductions.hpp"

#include <algorithm>

namespace mwcut {

NodeSplitResult node_split_reduction(const NodeInstance& inst0) {
    NodeInstance inst = inst0;
    validate(inst);
    if (!node_instance_is_canonical(inst))
        throw InputError("node-split reduction needs a canonical instance (independent terminals)");

    NodeSplitResult res;
    res.split_arc_of_node.assign(inst.n, -1);
    res.in_copy.resize(inst.n);
    res.out_copy.resize(inst.n);

    int extra = 0;
    for (NodeId v = 0; v < inst.n; ++v) {
        res.in_copy[v] = v;
        res.out_copy[v] = inst.is_terminal(v) ? v : inst.n + extra++;
    }

    DirectedInstance& d = res.directed;
    d.n = inst.n + extra;
    d.terminals = inst.terminals;
    // split arcs first so arc index == non-terminal rank
    for (NodeId v = 0; v < inst.n; ++v) {
        if (inst.is_terminal(v)) continue;
        res.split_arc_of_node[v] = d.num_arcs();
        d.arcs.push_back({res.in_copy[v], res.out_copy[v], inst.weights[v]});
    }
    for (auto [u, v] : inst.edges) {
        d.arcs.push_back({res.out_copy[u], res.in_copy[v], kInf});
        d.arcs.push_back({res.out_copy[v], res.in_copy[u], kInf});
    }
    validate(d);
    return res;
}

CutSolution map_split_cut_to_nodes(const NodeInstance& inst, const NodeSplitResult& red,
                                   const CutSolution& cut) {
    if (cut.kind != CutKind::Edge) throw InputError("expected an edge cut on the reduction");
    CutSolution out;
    out.kind = CutKind::Node;
    out.theta = cut.theta;
    out.ell = cut.ell;
    out.seed = cut.seed;
    for (int a : cut.members) {
        NodeId v = -1;
        for (NodeId u = 0; u < inst.n; ++u)
            if (red.split_arc_of_node[u] == a) { v = u; break; }
        if (v < 0) throw InputError("cut member is not a split arc");
        out.members.push_back(v);
        out.cost += inst.weights[v];
    }
    std::sort(out.members.begin(), out.members.end());
    return out;
}

StBiCutInstance reduce_4terminal_to_stbicut(const NodeInstance& inst0) {
    NodeInstance inst = inst0;
    validate(inst);
    if (inst.k() != 4) throw InputError("reduction needs exactly 4 terminals");

    StBiCutInstance out;
    out.n = inst.n + 2;
    out.s = inst.n;
    out.t = inst.n + 1;
    out.weights = inst.weights;
    out.weights.push_back(kInf);
    out.weights.push_back(kInf);

    for (auto [u, v] : inst.edges) {
        out.arcs.emplace_back(u, v);
        out.arcs.emplace_back(v, u);
    }
    NodeId s1 = inst.terminals[0], s2 = inst.terminals[1];
    NodeId s3 = inst.terminals[2], s4 = inst.terminals[3];
    out.arcs.emplace_back(out.s, s1);
    out.arcs.emplace_back(s1, out.s);
    out.arcs.emplace_back(s2, out.s);
    out.arcs.emplace_back(s2, out.t);
    out.arcs.emplace_back(out.s, s3);
    out.arcs.emplace_back(out.t, s3);
    out.arcs.emplace_back(out.t, s4);
    out.arcs.emplace_back(s4, out.t);
    return out;
}

bool stbicut_separates(const StBiCutInstance& inst, const std::vector<bool>& removed) {
    std::vector<std::vector<NodeId>> adj(inst.n);
    for (auto [u, v] : inst.arcs) adj[u].push_back(v);

    auto reaches = [&](NodeId from, NodeId to) {
        std::vector<char> seen(inst.n, 0);
        std::vector<NodeId> stack{from};
        seen[from] = 1;
        while (!stack.empty()) {
            NodeId u = stack.back();
            stack.pop_back();
            if (u == to) return true;
            for (NodeId v : adj[u]) {
                if (seen[v] || removed[v]) continue;
                seen[v] = 1;
                stack.push_back(v);
            }
        }
        return false;
    };
    return !reaches(inst.s, inst.t) && !reaches(inst.t, inst.s);
}

StBiCutSplitResult to_directed(const StBiCutInstance& inst) {
    StBiCutSplitResult res;
    res.split_arc_of_node.assign(inst.n, -1);
    std::vector<NodeId> out_copy(inst.n);
    int extra = 0;
    for (NodeId v = 0; v < inst.n; ++v)
        out_copy[v] = (v == inst.s || v == inst.t) ? v : inst.n + extra++;

    DirectedInstance& d = res.directed;
    d.n = inst.n + extra;
    d.terminals = {inst.s, inst.t};
    for (NodeId v = 0; v < inst.n; ++v) {
        if (v == inst.s || v == inst.t) continue;
        res.split_arc_of_node[v] = d.num_arcs();
        d.arcs.push_back({v, out_copy[v], inst.weights[v]});
    }
    for (auto [u, v] : inst.arcs) d.arcs.push_back({out_copy[u], v, kInf});
    validate(d);
    return res;
}

}  // namespace mwcut
