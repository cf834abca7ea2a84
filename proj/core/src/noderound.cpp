#include "mwcut/noderound.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "mwcut/lp.hpp"
#include "mwcut/paths.hpp"
#include "mwcut/random.hpp"
#include "mwcut/reductions.hpp"

namespace mwcut {

namespace {

struct UndirectedCsr {
    std::vector<int> first;
    std::vector<NodeId> nbr;

    explicit UndirectedCsr(const NodeInstance& inst) {
        first.assign(inst.n + 1, 0);
        for (auto [u, v] : inst.edges) {
            ++first[u + 1];
            ++first[v + 1];
        }
        for (int v = 0; v < inst.n; ++v) first[v + 1] += first[v];
        nbr.resize(inst.edges.size() * 2);
        std::vector<int> cursor(first.begin(), first.end() - 1);
        for (auto [u, v] : inst.edges) {
            nbr[cursor[u]++] = v;
            nbr[cursor[v]++] = u;
        }
    }
};

void check_node_lengths(const NodeInstance& inst, const FractionalSolution& x) {
    if (x.mode != LpMode::Node || static_cast<int>(x.values.size()) != inst.n)
        throw InputError("lengths do not match instance nodes");
    for (double v : x.values)
        if (!(v >= 0.0) || is_inf(v)) throw InputError("lengths must be finite and nonnegative");
    for (NodeId t : inst.terminals)
        if (x.values[t] != 0.0) throw InputError("terminals must carry length 0");
}

struct QItem {
    double dist;
    NodeId node;
    bool operator>(const QItem& o) const {
        if (dist != o.dist) return dist > o.dist;
        return node > o.node;
    }
};

// Multi-source node-weighted Dijkstra; dist[v] includes x at both endpoints.
std::vector<double> node_multi_dijkstra(const NodeInstance& inst, const UndirectedCsr& g,
                                        const FractionalSolution& x,
                                        const std::vector<NodeId>& sources,
                                        std::vector<NodeId>* parent = nullptr) {
    std::vector<double> dist(inst.n, kInf);
    if (parent) parent->assign(inst.n, -1);
    std::priority_queue<QItem, std::vector<QItem>, std::greater<QItem>> pq;
    for (NodeId s : sources) {
        double d = x.values[s];
        if (d < dist[s]) {
            dist[s] = d;
            pq.push({d, s});
        }
    }
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (d > dist[u]) continue;
        for (int i = g.first[u]; i < g.first[u + 1]; ++i) {
            NodeId v = g.nbr[i];
            double nd = d + x.values[v];
            if (nd < dist[v]) {
                dist[v] = nd;
                if (parent) (*parent)[v] = u;
                pq.push({nd, v});
            }
        }
    }
    return dist;
}

// returns the computed minimum inter-terminal distance
double check_roundable(const NodeInstance& inst, const FractionalSolution& x) {
    if (is_inf(lp_cost(inst, x)))
        throw InputError("fractional solution puts positive length on an infinite-weight node");
    FeasibilityReport rep = verify_feasible(inst, x);
    if (!rep.feasible)
        throw InputError("fractional solution is infeasible (inter-terminal distance " +
                         std::to_string(rep.min_distance) + " < 1)");
    return rep.min_distance;
}

CutSolution collect_node_cut(const NodeInstance& inst, const std::vector<char>& in_cut) {
    CutSolution cut;
    cut.kind = CutKind::Node;
    for (NodeId v = 0; v < inst.n; ++v) {
        if (!in_cut[v]) continue;
        cut.members.push_back(v);
        cut.cost += inst.weights[v];
    }
    return cut;
}

}  // namespace

NodeDistanceTable node_sssp_with_parents(const NodeInstance& inst, const FractionalSolution& x,
                                         NodeId source, std::vector<NodeId>& parent) {
    check_node_lengths(inst, x);
    if (source < 0 || source >= inst.n) throw InputError("source out of range");
    UndirectedCsr g(inst);
    NodeDistanceTable t;
    t.source = source;
    t.dist = node_multi_dijkstra(inst, g, x, {source}, &parent);
    return t;
}

NodeDistanceTable node_sssp(const NodeInstance& inst, const FractionalSolution& x, NodeId source) {
    std::vector<NodeId> parent;
    return node_sssp_with_parents(inst, x, source, parent);
}

BoundarySet boundary(const NodeInstance& inst, const FractionalSolution& x, NodeId source, double r) {
    if (!(r >= 0.0)) throw InputError("radius must be nonnegative");
    NodeDistanceTable t = node_sssp(inst, x, source);
    BoundarySet b;
    b.center = source;
    b.radius = r;
    for (NodeId v = 0; v < inst.n; ++v)
        if (r < t.dist[v] && t.dist[v] <= r + x.values[v]) b.members.push_back(v);
    return b;
}

CutSolution round_node_at(const NodeInstance& inst, const FractionalSolution& x, int ell,
                          double theta) {
    check_node_lengths(inst, x);
    if (ell < 1 || ell > inst.k()) throw InputError("ell must lie in {1..k}");
    if (!(theta > 0.0 && theta < 0.5)) throw InputError("theta must lie in (0, 1/2)");
    double min_tt = check_roundable(inst, x);
    if (!(theta < min_tt / 2))
        throw InputError("theta must stay below half the minimum inter-terminal distance");

    UndirectedCsr g(inst);
    std::vector<NodeId> sources;
    for (int i = 0; i < inst.k(); ++i)
        if (i != ell - 1) sources.push_back(inst.terminals[i]);
    std::vector<double> dist = node_multi_dijkstra(inst, g, x, sources);

    // v sits on the boundary of the nearest kept-terminal ball of radius
    // theta exactly when d - x_v <= theta < d
    std::vector<char> in_cut(inst.n, 0);
    for (NodeId v = 0; v < inst.n; ++v) {
        double d = dist[v];
        if (d == kInf) continue;
        if (d - x.values[v] <= theta && theta < d) in_cut[v] = 1;
    }

    // the single-source shortcut can miss a boundary node when theta
    // collides with a rounding-level tie; fall back to the per-terminal
    // boundary union, which seals every ball under floating arithmetic
    std::vector<bool> removed(inst.n, false);
    for (NodeId v = 0; v < inst.n; ++v) removed[v] = in_cut[v];
    if (!node_cut_separates(inst, removed)) {
        std::fill(in_cut.begin(), in_cut.end(), 0);
        for (NodeId s : sources) {
            std::vector<double> di = node_multi_dijkstra(inst, g, x, {s});
            for (NodeId v = 0; v < inst.n; ++v)
                if (theta < di[v] && di[v] <= theta + x.values[v]) in_cut[v] = 1;
        }
    }

    CutSolution cut = collect_node_cut(inst, in_cut);
    cut.theta = theta;
    cut.ell = ell;
    return cut;
}

CutSolution round_node_randomized(const NodeInstance& inst, const FractionalSolution& x,
                                  std::uint64_t seed) {
    check_node_lengths(inst, x);
    double min_tt = check_roundable(inst, x);
    std::mt19937_64 rng(seed);
    int ell = 1 + static_cast<int>(uniform_below(rng, inst.k()));
    // exactly feasible solutions leave theta as the plain (0, 1/2) variate
    double theta = 0.5 * uniform01(rng) * std::min(min_tt, 1.0);
    CutSolution cut = round_node_at(inst, x, ell, theta);
    cut.seed = seed;
    return cut;
}

CutSolution round_node_deterministic(const NodeInstance& inst, const FractionalSolution& x) {
    check_node_lengths(inst, x);
    check_roundable(inst, x);
    const int k = inst.k();

    // two nearest terminals per node, through the node-split reduction
    NodeSplitResult red = node_split_reduction(inst);
    FractionalSolution arc_len{LpMode::Edge,
                               std::vector<double>(red.directed.num_arcs(), 0.0)};
    for (NodeId v = 0; v < inst.n; ++v)
        if (red.split_arc_of_node[v] >= 0) arc_len.values[red.split_arc_of_node[v]] = x.values[v];
    NearTerminalTable table = h_nearest_terminals(red.directed, arc_len, std::min(2, k));

    auto anchor = [&](NodeId v, int slot) -> std::pair<int, double> {
        NodeId probe = red.out_copy[v];
        if (slot >= table.count[probe]) return {-1, kInf};
        return {table.terminal_of(probe, slot), table.dist_of(probe, slot)};
    };

    // minimum inter-terminal distance on the same table; theta stays below
    // half of it so every ball keeps the other terminals strictly outside
    double min_tt = kInf;
    for (int j = 0; j < k; ++j) {
        NodeId v = inst.terminals[j];
        for (int slot = 0; slot < table.count[v]; ++slot) {
            if (table.terminal_of(v, slot) == j) continue;
            min_tt = std::min(min_tt, table.dist_of(v, slot));
            break;
        }
    }
    const double top = std::min(min_tt / 2, 0.5);

    // Interval I_1(v) = [d1 - x_v, min(d1, 1/2)) belongs to the nearest
    // terminal a1(v); I_2(v) to the second nearest. For a fixed spared
    // terminal ell, v is cut iff theta lies in I_1 (a1 != ell) or I_2
    // (a1 == ell), so w(C(ell)) = A - A_ell + B_ell.
    struct Event {
        double pos;
        int type;  // 0 = end, 1 = start
        int which; // 0 = I1, 1 = I2
        NodeId v;
        int a1;
    };
    std::vector<Event> events;
    for (NodeId v = 0; v < inst.n; ++v) {
        if (inst.is_terminal(v) || x.values[v] <= 0.0) continue;
        auto [a1, d1] = anchor(v, 0);
        if (a1 < 0) continue;
        double lo1 = std::max(d1 - x.values[v], 0.0), hi1 = std::min(d1, top);
        if (lo1 < hi1) {
            events.push_back({lo1, 1, 0, v, a1});
            events.push_back({hi1, 0, 0, v, a1});
        }
        auto [a2, d2] = anchor(v, 1);
        if (a2 >= 0) {
            double lo2 = std::max(d2 - x.values[v], 0.0), hi2 = std::min(d2, top);
            if (lo2 < hi2) {
                events.push_back({lo2, 1, 1, v, a1});
                events.push_back({hi2, 0, 1, v, a1});
            }
        }
    }

    CutSolution best;
    best.kind = CutKind::Node;
    if (events.empty()) {
        best.theta = top / 2;
        best.ell = 1;
        return best;
    }

    std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
        if (a.pos != b.pos) return a.pos < b.pos;
        if (a.type != b.type) return a.type < b.type;  // ends before starts
        if (a.v != b.v) return a.v < b.v;
        return a.which < b.which;
    });

    double glob = 0.0;                  // sum over active I1 intervals
    std::vector<double> sub(k, 0.0);    // per-ell share of active I1
    std::vector<double> second(k, 0.0); // per-ell active I2
    struct Candidate {
        double cost;
        double theta;
        int ell;
    };
    std::vector<Candidate> candidates;

    auto consider = [&](double lo, double hi) {
        // segment [lo, hi) with the current active sets
        if (!(lo < hi) || lo >= top || hi <= 0.0) return;
        double rep = lo > 0.0 ? lo : std::min(hi, top) / 2.0;
        for (int ell = 0; ell < k; ++ell)
            candidates.push_back({glob - sub[ell] + second[ell], rep, ell});
    };

    size_t i = 0;
    consider(0.0, events.front().pos);
    while (i < events.size()) {
        double pos = events[i].pos;
        for (; i < events.size() && events[i].pos == pos; ++i) {
            const Event& e = events[i];
            double w = inst.weights[e.v];
            double sgn = e.type == 1 ? 1.0 : -1.0;
            if (e.which == 0) {
                glob += sgn * w;
                sub[e.a1] += sgn * w;
            } else {
                second[e.a1] += sgn * w;
            }
        }
        consider(pos, i < events.size() ? events[i].pos : top);
    }

    // cheapest first; scan order breaks ties so reruns stay deterministic
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Candidate& a, const Candidate& b) { return a.cost < b.cost; });

    auto members_at = [&](int ell, double theta) {
        std::vector<char> in_cut(inst.n, 0);
        for (NodeId v = 0; v < inst.n; ++v) {
            if (inst.is_terminal(v) || x.values[v] <= 0.0) continue;
            auto [a1, d1] = anchor(v, 0);
            if (a1 < 0) continue;
            double d = d1;
            if (a1 == ell) {
                auto [a2, d2] = anchor(v, 1);
                if (a2 < 0) continue;
                d = d2;
            }
            if (d - x.values[v] <= theta && theta < d) in_cut[v] = 1;
        }
        return in_cut;
    };

    // the cheapest candidate is always feasible in exact arithmetic; the
    // verification guards against ulp-level coincidences in the shortcut
    for (const Candidate& cand : candidates) {
        std::vector<char> in_cut = members_at(cand.ell, cand.theta);
        std::vector<bool> removed(inst.n, false);
        for (NodeId v = 0; v < inst.n; ++v) removed[v] = in_cut[v];
        if (!node_cut_separates(inst, removed)) continue;
        best = collect_node_cut(inst, in_cut);
        best.theta = cand.theta;
        best.ell = cand.ell + 1;
        return best;
    }
    throw GuardError("node sweep found no feasible candidate");
}

bool node_cut_separates(const NodeInstance& inst, const std::vector<bool>& removed) {
    UndirectedCsr g(inst);
    std::vector<int> mark(inst.n, -1);
    std::vector<NodeId> stack;
    for (int i = 0; i < inst.k(); ++i) {
        NodeId s = inst.terminals[i];
        if (removed[s]) continue;
        stack.assign(1, s);
        mark[s] = i;
        while (!stack.empty()) {
            NodeId u = stack.back();
            stack.pop_back();
            for (int j = g.first[u]; j < g.first[u + 1]; ++j) {
                NodeId v = g.nbr[j];
                if (removed[v] || mark[v] == i) continue;
                if (inst.is_terminal(v)) return false;
                mark[v] = i;
                stack.push_back(v);
            }
        }
    }
    return true;
}

NodeCutReport verify_node_cut(const NodeInstance& inst, const CutSolution& cut) {
    if (cut.kind != CutKind::Node) throw InputError("expected a node cut");
    std::vector<bool> removed(inst.n, false);
    for (NodeId v : cut.members) {
        if (v < 0 || v >= inst.n) throw InputError("cut member out of range");
        if (inst.is_terminal(v)) throw InputError("cut contains a terminal");
        if (is_inf(inst.weights[v])) throw InputError("cut contains an infinite-weight node");
        removed[v] = true;
    }

    UndirectedCsr g(inst);
    NodeCutReport rep;
    std::vector<NodeId> parent(inst.n);
    std::vector<char> seen(inst.n);
    for (int i = 0; i < inst.k(); ++i) {
        NodeId s = inst.terminals[i];
        std::fill(seen.begin(), seen.end(), 0);
        std::vector<NodeId> queue{s};
        seen[s] = 1;
        parent[s] = -1;
        for (size_t qi = 0; qi < queue.size(); ++qi) {
            NodeId u = queue[qi];
            for (int j = g.first[u]; j < g.first[u + 1]; ++j) {
                NodeId v = g.nbr[j];
                if (removed[v] || seen[v]) continue;
                seen[v] = 1;
                parent[v] = u;
                if (inst.is_terminal(v)) {
                    rep.feasible = false;
                    rep.from_terminal = i;
                    for (int jj = 0; jj < inst.k(); ++jj)
                        if (inst.terminals[jj] == v) rep.to_terminal = jj;
                    for (NodeId w = v; w >= 0; w = parent[w]) rep.witness.push_back(w);
                    std::reverse(rep.witness.begin(), rep.witness.end());
                    return rep;
                }
                queue.push_back(v);
            }
        }
    }
    rep.feasible = true;
    return rep;
}

}  // namespace mwcut
