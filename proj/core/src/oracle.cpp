#include "mwcut/oracle.hpp"

#include <algorithm>

namespace mwcut {

namespace {

// Shared branch-and-bound skeleton: candidates in descending weight order,
// include/exclude branching, pruned by incumbent cost and by reachability
// (if even removing every remaining candidate cannot separate, backtrack).
// Equal-cost incumbents resolve to the lexicographically smaller member set.
struct ArcSearch {
    const DirectedInstance& inst;
    std::vector<std::pair<NodeId, NodeId>> pairs;  // ordered pairs to separate
    std::vector<int> order;                        // candidate arcs, heavy first
    std::vector<bool> removed;
    std::vector<int> chosen;
    double cost = 0.0;
    double best_cost = kInf;
    std::vector<int> best;
    std::vector<std::vector<std::pair<NodeId, int>>> adj;  // head, arc id

    explicit ArcSearch(const DirectedInstance& g) : inst(g), adj(g.n) {
        for (int a = 0; a < g.num_arcs(); ++a)
            adj[g.arcs[a].tail].emplace_back(g.arcs[a].head, a);
    }

    bool reaches(NodeId from, NodeId to, int suffix_from) const {
        // arcs in order[suffix_from..] count as removed
        std::vector<char> dropped(inst.num_arcs(), 0);
        for (size_t i = suffix_from; i < order.size(); ++i) dropped[order[i]] = 1;
        std::vector<char> seen(inst.n, 0);
        std::vector<NodeId> stack{from};
        seen[from] = 1;
        while (!stack.empty()) {
            NodeId u = stack.back();
            stack.pop_back();
            if (u == to) return true;
            for (auto [v, a] : adj[u]) {
                if (removed[a] || dropped[a] || seen[v]) continue;
                seen[v] = 1;
                stack.push_back(v);
            }
        }
        return false;
    }

    bool separates(int suffix_from) const {
        for (auto [from, to] : pairs)
            if (reaches(from, to, suffix_from)) return false;
        return true;
    }

    void maybe_update() {
        std::vector<int> sorted = chosen;
        std::sort(sorted.begin(), sorted.end());
        if (cost < best_cost ||
            (cost == best_cost &&
             std::lexicographical_compare(sorted.begin(), sorted.end(), best.begin(), best.end()))) {
            best_cost = cost;
            best = std::move(sorted);
        }
    }

    void greedy_seed() {
        // repeatedly drop the lightest candidate on some surviving path
        std::vector<char> cand(inst.num_arcs(), 0);
        for (int a : order) cand[a] = 1;
        std::vector<int> parent(inst.n);
        for (;;) {
            bool violated = false;
            for (auto [from, to] : pairs) {
                std::fill(parent.begin(), parent.end(), -2);
                std::vector<NodeId> queue{from};
                parent[from] = -1;
                NodeId hit = -1;
                for (size_t qi = 0; qi < queue.size() && hit < 0; ++qi)
                    for (auto [v, a] : adj[queue[qi]]) {
                        if (removed[a] || parent[v] != -2) continue;
                        parent[v] = a;
                        if (v == to) { hit = v; break; }
                        queue.push_back(v);
                    }
                if (hit < 0) continue;
                violated = true;
                int pick = -1;
                for (NodeId v = hit; parent[v] >= 0; v = inst.arcs[parent[v]].tail) {
                    int a = parent[v];
                    if (cand[a] && (pick < 0 || inst.arcs[a].weight < inst.arcs[pick].weight ||
                                    (inst.arcs[a].weight == inst.arcs[pick].weight && a < pick)))
                        pick = a;
                }
                removed[pick] = true;
                chosen.push_back(pick);
                cost += inst.arcs[pick].weight;
                break;
            }
            if (!violated) break;
        }
        maybe_update();
        for (int a : chosen) removed[a] = false;
        chosen.clear();
        cost = 0.0;
    }

    void run(size_t idx) {
        if (cost > best_cost) return;
        if (separates(order.size())) {
            maybe_update();
            return;
        }
        if (idx == order.size()) return;
        if (!separates(idx)) return;  // unreachable even with the whole suffix

        int a = order[idx];
        removed[a] = true;
        chosen.push_back(a);
        cost += inst.arcs[a].weight;
        run(idx + 1);
        cost -= inst.arcs[a].weight;
        chosen.pop_back();
        removed[a] = false;

        run(idx + 1);
    }
};

CutSolution exact_arc_cut(const DirectedInstance& inst,
                          std::vector<std::pair<NodeId, NodeId>> pairs) {
    ArcSearch search(inst);
    search.pairs = std::move(pairs);
    search.removed.assign(inst.num_arcs(), false);
    for (int a = 0; a < inst.num_arcs(); ++a)
        if (!is_inf(inst.arcs[a].weight)) search.order.push_back(a);
    if (search.order.size() > 26)
        throw GuardError("oracle guard: more than 26 finite-weight arcs");

    std::sort(search.order.begin(), search.order.end(), [&](int a, int b) {
        if (inst.arcs[a].weight != inst.arcs[b].weight)
            return inst.arcs[a].weight > inst.arcs[b].weight;
        return a < b;
    });
    if (!search.separates(0))
        throw InputError("infeasible: a required pair stays connected through infinite-weight arcs");

    search.greedy_seed();
    search.run(0);

    CutSolution cut;
    cut.kind = CutKind::Edge;
    cut.members = std::move(search.best);
    for (int a : cut.members) cut.cost += inst.arcs[a].weight;
    return cut;
}

}  // namespace

CutSolution exact_min_dirmc(const DirectedInstance& inst0) {
    DirectedInstance inst = inst0;
    validate(inst);
    std::vector<std::pair<NodeId, NodeId>> pairs;
    for (NodeId a : inst.terminals)
        for (NodeId b : inst.terminals)
            if (a != b) pairs.emplace_back(a, b);
    return exact_arc_cut(inst, std::move(pairs));
}

CutSolution exact_one_way_cut(const DirectedInstance& inst0, NodeId from, NodeId to) {
    DirectedInstance inst = inst0;
    validate(inst);
    if (from < 0 || from >= inst.n || to < 0 || to >= inst.n || from == to)
        throw InputError("need two distinct nodes");
    return exact_arc_cut(inst, {{from, to}});
}

namespace {

struct NodeSearch {
    const NodeInstance& inst;
    std::vector<int> order;  // candidate nodes, heavy first
    std::vector<bool> removed;
    std::vector<int> chosen;
    double cost = 0.0;
    double best_cost = kInf;
    std::vector<int> best;
    std::vector<std::vector<NodeId>> adj;

    explicit NodeSearch(const NodeInstance& g) : inst(g), adj(g.n) {
        for (auto [u, v] : g.edges) {
            adj[u].push_back(v);
            adj[v].push_back(u);
        }
    }

    bool separates(size_t suffix_from) const {
        std::vector<char> dropped(inst.n, 0);
        for (size_t i = suffix_from; i < order.size(); ++i) dropped[order[i]] = 1;
        std::vector<int> mark(inst.n, -1);
        std::vector<NodeId> stack;
        for (int i = 0; i < inst.k(); ++i) {
            NodeId s = inst.terminals[i];
            stack.assign(1, s);
            mark[s] = i;
            while (!stack.empty()) {
                NodeId u = stack.back();
                stack.pop_back();
                for (NodeId v : adj[u]) {
                    if (removed[v] || dropped[v] || mark[v] == i) continue;
                    if (inst.is_terminal(v)) return false;
                    mark[v] = i;
                    stack.push_back(v);
                }
            }
        }
        return true;
    }

    void maybe_update() {
        std::vector<int> sorted = chosen;
        std::sort(sorted.begin(), sorted.end());
        if (cost < best_cost ||
            (cost == best_cost &&
             std::lexicographical_compare(sorted.begin(), sorted.end(), best.begin(), best.end()))) {
            best_cost = cost;
            best = std::move(sorted);
        }
    }

    void run(size_t idx) {
        if (cost > best_cost) return;
        if (separates(order.size())) {
            maybe_update();
            return;
        }
        if (idx == order.size()) return;
        if (!separates(idx)) return;

        NodeId v = order[idx];
        removed[v] = true;
        chosen.push_back(v);
        cost += inst.weights[v];
        run(idx + 1);
        cost -= inst.weights[v];
        chosen.pop_back();
        removed[v] = false;

        run(idx + 1);
    }
};

}  // namespace

CutSolution exact_min_nodemc(const NodeInstance& inst0) {
    NodeInstance inst = inst0;
    validate(inst);
    NodeSearch search(inst);
    search.removed.assign(inst.n, false);
    for (NodeId v = 0; v < inst.n; ++v)
        if (!inst.is_terminal(v) && !is_inf(inst.weights[v])) search.order.push_back(v);
    if (search.order.size() > 24)
        throw GuardError("oracle guard: more than 24 finite-weight non-terminals");

    std::sort(search.order.begin(), search.order.end(), [&](int a, int b) {
        if (inst.weights[a] != inst.weights[b]) return inst.weights[a] > inst.weights[b];
        return a < b;
    });
    if (!search.separates(0))
        throw InputError("infeasible: terminals stay connected through unremovable nodes");

    search.run(0);

    CutSolution cut;
    cut.kind = CutKind::Node;
    cut.members = std::move(search.best);
    for (int v : cut.members) cut.cost += inst.weights[v];
    return cut;
}

}  // namespace mwcut
