#include "mwcut/dirround.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>

#include "mwcut/lp.hpp"
#include "mwcut/paths.hpp"
#include "mwcut/random.hpp"

namespace mwcut {

namespace {

void check_edge_lengths(const DirectedInstance& inst, const FractionalSolution& x) {
    if (x.mode != LpMode::Edge || static_cast<int>(x.values.size()) != inst.num_arcs())
        throw InputError("lengths do not match instance arcs");
    for (double v : x.values)
        if (!(v >= 0.0) || is_inf(v)) throw InputError("lengths must be finite and nonnegative");
}

void check_roundable(const DirectedInstance& inst, const FractionalSolution& x) {
    if (is_inf(lp_cost(inst, x)))
        throw InputError("fractional solution puts positive length on an infinite-weight arc");
    FeasibilityReport rep = verify_feasible(inst, x);
    if (!rep.feasible)
        throw InputError("fractional solution is infeasible (inter-terminal distance " +
                         std::to_string(rep.min_distance) + " < 1)");
}

// Fused preparation for the interval-based roundings: one capped two-label
// search yields the anchors, the minimum inter-terminal distance and the
// feasibility precondition.
struct IntervalPrep {
    CutIntervals iv;
    double top = 1.0;  // admissible theta range is (0, top)
};

IntervalPrep prepare_intervals(const DirectedInstance& inst, const FractionalSolution& x) {
    check_edge_lengths(inst, x);
    if (is_inf(lp_cost(inst, x)))
        throw InputError("fractional solution puts positive length on an infinite-weight arc");
    ForwardGraph g(inst);
    NearTerminalTable table = detail::two_nearest_table(g, inst.n, x.values, inst.terminals, 1.0);

    double min_tt = kInf;  // capped at 1: only sub-1 distances surface
    for (int j = 0; j < inst.k(); ++j) {
        NodeId v = inst.terminals[j];
        for (int slot = 0; slot < table.count[v]; ++slot) {
            if (table.terminal_of(v, slot) == j) continue;
            min_tt = std::min(min_tt, table.dist_of(v, slot));
            break;
        }
    }
    if (min_tt < 1.0 - 1e-9) {
        FeasibilityReport rep = verify_feasible(inst, x);  // witnessful message
        throw InputError("fractional solution is infeasible (inter-terminal distance " +
                         std::to_string(rep.min_distance) + " < 1)");
    }

    IntervalPrep prep;
    prep.top = std::min(min_tt, 1.0);
    prep.iv.anchor1.resize(inst.num_arcs());
    prep.iv.anchor2.resize(inst.num_arcs());
    prep.iv.width = x.values;
    for (int a = 0; a < inst.num_arcs(); ++a) {
        NodeId u = inst.arcs[a].tail;
        prep.iv.anchor1[a] = table.count[u] >= 1 ? table.dist_of(u, 0) : kInf;
        prep.iv.anchor2[a] = table.count[u] >= 2 ? table.dist_of(u, 1) : kInf;
    }
    return prep;
}

CutSolution collect_edge_cut(const DirectedInstance& inst, const std::vector<char>& in_cut) {
    CutSolution cut;
    cut.kind = CutKind::Edge;
    for (int a = 0; a < inst.num_arcs(); ++a) {
        if (!in_cut[a]) continue;
        cut.members.push_back(a);
        cut.cost += inst.arcs[a].weight;
    }
    return cut;
}

}  // namespace

AugmentedInstance augment_with_super_terminals(const DirectedInstance& inst,
                                               const FractionalSolution& x) {
    check_edge_lengths(inst, x);
    AugmentedInstance aug;
    aug.base_nodes = inst.n;
    aug.base_arcs = inst.num_arcs();
    aug.graph = inst;
    aug.graph.n += inst.k();
    aug.lengths = x;
    for (int i = 0; i < inst.k(); ++i) {
        for (int j = 0; j < inst.k(); ++j) {
            if (i == j) continue;
            aug.graph.arcs.push_back({aug.super_terminal(i), inst.terminals[j], kInf});
            aug.lengths.values.push_back(0.0);
        }
    }
    return aug;
}

CutSolution round_at_theta(const DirectedInstance& inst, const FractionalSolution& x, double theta) {
    if (!(theta > 0.0 && theta < 1.0)) throw InputError("theta must lie in (0,1)");
    check_roundable(inst, x);

    AugmentedInstance aug = augment_with_super_terminals(inst, x);
    std::vector<char> in_cut(inst.num_arcs(), 0);
    std::vector<char> in_ball(aug.graph.n, 0);
    std::vector<DistanceTable> tables;
    for (int i = 0; i < inst.k(); ++i) {
        tables.push_back(sssp(aug.graph, aug.lengths, aug.super_terminal(i)));
        // the ball argument needs every own terminal strictly outside
        if (!(theta < tables[i].dist[inst.terminals[i]]))
            throw InputError("theta must stay below the minimum inter-terminal distance");
    }
    for (int i = 0; i < inst.k(); ++i) {
        const DistanceTable& t = tables[i];
        for (NodeId v = 0; v < aug.graph.n; ++v) in_ball[v] = t.dist[v] <= theta;
        for (int a = 0; a < inst.num_arcs(); ++a)
            if (in_ball[inst.arcs[a].tail] && !in_ball[inst.arcs[a].head]) in_cut[a] = 1;
    }
    CutSolution cut = collect_edge_cut(inst, in_cut);
    cut.theta = theta;
    return cut;
}

namespace {

// intervals plus the computed minimum inter-terminal distance (read off the
// same table, so the two are consistent in floating arithmetic)
CutIntervals build_intervals_impl(const DirectedInstance& inst, const FractionalSolution& x,
                                  double* min_tt, double dist_cap = kInf) {
    check_edge_lengths(inst, x);
    ForwardGraph g(inst);
    NearTerminalTable table = detail::two_nearest_table(g, inst.n, x.values, inst.terminals, dist_cap);

    if (min_tt) {
        *min_tt = kInf;
        for (int j = 0; j < inst.k(); ++j) {
            NodeId v = inst.terminals[j];
            for (int slot = 0; slot < table.count[v]; ++slot) {
                if (table.terminal_of(v, slot) == j) continue;
                *min_tt = std::min(*min_tt, table.dist_of(v, slot));
                break;
            }
        }
    }

    CutIntervals iv;
    iv.anchor1.resize(inst.num_arcs());
    iv.anchor2.resize(inst.num_arcs());
    iv.width = x.values;
    for (int a = 0; a < inst.num_arcs(); ++a) {
        NodeId u = inst.arcs[a].tail;
        iv.anchor1[a] = table.count[u] >= 1 ? table.dist_of(u, 0) : kInf;
        iv.anchor2[a] = table.count[u] >= 2 ? table.dist_of(u, 1) : kInf;
    }
    return iv;
}

}  // namespace

CutIntervals build_cut_intervals(const DirectedInstance& inst, const FractionalSolution& x) {
    return build_intervals_impl(inst, x, nullptr);
}

CutSolution round_interval_at_theta(const DirectedInstance& inst, const FractionalSolution& x,
                                    double theta) {
    if (!(theta > 0.0 && theta < 1.0)) throw InputError("theta must lie in (0,1)");
    IntervalPrep prep = prepare_intervals(inst, x);
    if (!(theta < prep.top))
        throw InputError("theta must stay below the minimum inter-terminal distance");
    std::vector<char> in_cut(inst.num_arcs(), 0);
    for (int a = 0; a < inst.num_arcs(); ++a) in_cut[a] = prep.iv.contains(a, theta);
    CutSolution cut = collect_edge_cut(inst, in_cut);
    cut.theta = theta;
    return cut;
}

CutSolution round_randomized(const DirectedInstance& inst, const FractionalSolution& x,
                             std::uint64_t seed) {
    IntervalPrep prep = prepare_intervals(inst, x);
    std::mt19937_64 rng(seed);
    // exactly feasible solutions sample theta on the full (0,1); solutions
    // feasible only up to tolerance shrink the range so the cut stays
    // provably feasible
    double theta = uniform01(rng) * prep.top;
    std::vector<char> in_cut(inst.num_arcs(), 0);
    for (int a = 0; a < inst.num_arcs(); ++a) in_cut[a] = prep.iv.contains(a, theta);
    CutSolution cut = collect_edge_cut(inst, in_cut);
    cut.theta = theta;
    cut.seed = seed;
    return cut;
}

CutSolution round_deterministic(const DirectedInstance& inst, const FractionalSolution& x) {
    IntervalPrep prep = prepare_intervals(inst, x);
    const CutIntervals& iv = prep.iv;
    const double top = prep.top;  // theta above this is unsafe

    // per-arc union of I_1 and I_2 as one or two disjoint pieces, clipped to
    // [0,top); each piece feeds a +w/-w endpoint pair into the sweep
    struct Event {
        double pos;
        int type;  // 0 = end, 1 = start
        int arc;
    };
    std::vector<Event> events;
    auto add_piece = [&](int arc, double lo, double hi) {
        hi = std::min(hi, top);
        if (!(lo < hi) || lo >= top) return;
        events.push_back({lo, 1, arc});
        events.push_back({hi, 0, arc});
    };
    for (int a = 0; a < inst.num_arcs(); ++a) {
        double w = iv.width[a];
        if (w <= 0.0) continue;
        double lo1 = iv.anchor1[a], lo2 = iv.anchor2[a];
        if (is_inf(lo1)) continue;
        if (is_inf(lo2) || lo2 <= lo1 + w) {
            add_piece(a, lo1, is_inf(lo2) ? lo1 + w : std::max(lo1 + w, lo2 + w));
        } else {
            add_piece(a, lo1, lo1 + w);
            add_piece(a, lo2, lo2 + w);
        }
    }

    CutSolution best;
    best.kind = CutKind::Edge;
    if (events.empty()) {
        best.theta = top / 2.0;
        return best;
    }

    std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
        if (a.pos != b.pos) return a.pos < b.pos;
        if (a.type != b.type) return a.type < b.type;  // ends before starts
        return a.arc < b.arc;
    });

    double active = 0.0;
    double best_cost = kInf;
    double best_theta = 0.0;
    auto consider = [&](double lo, double hi) {
        if (!(lo < hi) || lo >= top || hi <= 0.0) return;
        double rep = lo > 0.0 ? lo : std::min(hi, top) / 2.0;
        if (active < best_cost) {
            best_cost = active;
            best_theta = rep;
        }
    };

    size_t i = 0;
    consider(0.0, events.front().pos);
    while (i < events.size()) {
        double pos = events[i].pos;
        for (; i < events.size() && events[i].pos == pos; ++i) {
            double w = inst.arcs[events[i].arc].weight;
            active += events[i].type == 1 ? w : -w;
        }
        consider(pos, i < events.size() ? events[i].pos : top);
    }

    std::vector<char> in_cut(inst.num_arcs(), 0);
    for (int a = 0; a < inst.num_arcs(); ++a) in_cut[a] = iv.contains(a, best_theta);
    best = collect_edge_cut(inst, in_cut);
    best.theta = best_theta;
    return best;
}

bool edge_cut_separates(const DirectedInstance& inst, const std::vector<bool>& removed_arcs) {
    ForwardGraph g(inst);
    std::vector<int> mark(inst.n, -1);
    std::vector<NodeId> stack;
    for (int i = 0; i < inst.k(); ++i) {
        NodeId s = inst.terminals[i];
        stack.assign(1, s);
        mark[s] = i;
        while (!stack.empty()) {
            NodeId u = stack.back();
            stack.pop_back();
            for (int j = g.first[u]; j < g.first[u + 1]; ++j) {
                if (removed_arcs[g.arc_id[j]]) continue;
                NodeId v = g.head[j];
                if (mark[v] == i) continue;
                if (inst.is_terminal(v) && v != s) return false;
                mark[v] = i;
                stack.push_back(v);
            }
        }
    }
    return true;
}

CutReport verify_cut(const DirectedInstance& inst, const CutSolution& cut) {
    if (cut.kind != CutKind::Edge) throw InputError("expected an edge cut");
    std::vector<bool> removed(inst.num_arcs(), false);
    for (int a : cut.members) {
        if (a < 0 || a >= inst.num_arcs()) throw InputError("cut member out of range");
        removed[a] = true;
    }

    ForwardGraph g(inst);
    CutReport rep;
    std::vector<int> parent_arc(inst.n);
    std::vector<char> seen(inst.n);
    for (int i = 0; i < inst.k(); ++i) {
        NodeId s = inst.terminals[i];
        std::fill(seen.begin(), seen.end(), 0);
        seen[s] = 1;
        parent_arc[s] = -1;
        std::vector<NodeId> queue{s};
        for (size_t qi = 0; qi < queue.size(); ++qi) {
            NodeId u = queue[qi];
            for (int j = g.first[u]; j < g.first[u + 1]; ++j) {
                if (removed[g.arc_id[j]]) continue;
                NodeId v = g.head[j];
                if (seen[v]) continue;
                seen[v] = 1;
                parent_arc[v] = g.arc_id[j];
                if (inst.is_terminal(v)) {
                    rep.feasible = false;
                    rep.from_terminal = i;
                    for (int jj = 0; jj < inst.k(); ++jj)
                        if (inst.terminals[jj] == v) rep.to_terminal = jj;
                    for (NodeId w = v; parent_arc[w] >= 0; w = inst.arcs[parent_arc[w]].tail)
                        rep.witness.push_back(parent_arc[w]);
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

std::vector<int> bidirected_twins(const DirectedInstance& inst) {
    std::map<std::pair<NodeId, NodeId>, std::vector<int>> groups;
    for (int a = 0; a < inst.num_arcs(); ++a) {
        auto [u, v] = std::pair(inst.arcs[a].tail, inst.arcs[a].head);
        groups[{std::min(u, v), std::max(u, v)}].push_back(a);
    }
    std::vector<int> twin(inst.num_arcs(), -1);
    for (auto& [key, idx] : groups) {
        std::vector<int> fwd, bwd;
        for (int a : idx)
            (inst.arcs[a].tail == key.first ? fwd : bwd).push_back(a);
        auto by_weight = [&](int a, int b) {
            if (inst.arcs[a].weight != inst.arcs[b].weight)
                return inst.arcs[a].weight < inst.arcs[b].weight;
            return a < b;
        };
        std::sort(fwd.begin(), fwd.end(), by_weight);
        std::sort(bwd.begin(), bwd.end(), by_weight);
        if (fwd.size() != bwd.size())
            throw InputError("instance is not bidirected: unmatched arc orientation");
        for (size_t i = 0; i < fwd.size(); ++i) {
            if (inst.arcs[fwd[i]].weight != inst.arcs[bwd[i]].weight &&
                !(is_inf(inst.arcs[fwd[i]].weight) && is_inf(inst.arcs[bwd[i]].weight)))
                throw InputError("instance is not bidirected: twin weights differ");
            twin[fwd[i]] = bwd[i];
            twin[bwd[i]] = fwd[i];
        }
    }
    return twin;
}

double undirected_lp_cost(const DirectedInstance& inst, const FractionalSolution& x) {
    check_edge_lengths(inst, x);
    std::vector<int> twin = bidirected_twins(inst);
    double acc = 0.0;
    for (int a = 0; a < inst.num_arcs(); ++a) {
        if (a > twin[a]) continue;
        if (x.values[a] != x.values[twin[a]])
            throw InputError("lengths differ between arc orientations");
        if (is_inf(inst.arcs[a].weight)) {
            if (x.values[a] > 0.0) return kInf;
        } else {
            acc += inst.arcs[a].weight * x.values[a];
        }
    }
    return acc;
}

CutSolution round_edge_undirected(const DirectedInstance& inst, const FractionalSolution& x,
                                  double theta) {
    if (!(theta > 0.0 && theta < 0.5)) throw InputError("theta must lie in (0, 1/2)");
    check_edge_lengths(inst, x);
    std::vector<int> twin = bidirected_twins(inst);
    if (is_inf(undirected_lp_cost(inst, x)))
        throw InputError("fractional solution puts positive length on an infinite-weight edge");

    // undirected distances from each terminal
    struct QItem {
        double dist;
        NodeId node;
        bool operator>(const QItem& o) const {
            if (dist != o.dist) return dist > o.dist;
            return node > o.node;
        }
    };
    std::vector<std::vector<std::pair<NodeId, double>>> adj(inst.n);
    for (int a = 0; a < inst.num_arcs(); ++a) {
        if (a > twin[a]) continue;
        adj[inst.arcs[a].tail].emplace_back(inst.arcs[a].head, x.values[a]);
        adj[inst.arcs[a].head].emplace_back(inst.arcs[a].tail, x.values[a]);
    }
    auto dijkstra = [&](NodeId src) {
        std::vector<double> dist(inst.n, kInf);
        std::priority_queue<QItem, std::vector<QItem>, std::greater<QItem>> pq;
        dist[src] = 0.0;
        pq.push({0.0, src});
        while (!pq.empty()) {
            auto [d, u] = pq.top();
            pq.pop();
            if (d > dist[u]) continue;
            for (auto [v, len] : adj[u])
                if (d + len < dist[v]) {
                    dist[v] = d + len;
                    pq.push({d + len, v});
                }
        }
        return dist;
    };

    std::vector<std::vector<double>> dist;
    double min_tt = kInf;
    for (int i = 0; i < inst.k(); ++i) {
        dist.push_back(dijkstra(inst.terminals[i]));
        for (int j = 0; j < inst.k(); ++j)
            if (j != i) min_tt = std::min(min_tt, dist[i][inst.terminals[j]]);
    }
    // the cut is feasible for any theta below the terminal separation; the
    // factor-2 expectation bound additionally needs full LP feasibility
    // (separation >= 1), which makes every theta in (0, 1/2) admissible
    if (!(theta < min_tt))
        throw InputError("theta must stay below the minimum inter-terminal distance");

    // cut every edge with exactly one endpoint inside some terminal ball
    std::vector<char> in_cut(inst.num_arcs(), 0);
    for (int a = 0; a < inst.num_arcs(); ++a) {
        if (a > twin[a]) continue;
        NodeId u = inst.arcs[a].tail, v = inst.arcs[a].head;
        for (int i = 0; i < inst.k(); ++i) {
            if ((dist[i][u] <= theta) != (dist[i][v] <= theta)) {
                in_cut[std::min(a, twin[a])] = 1;
                break;
            }
        }
    }
    CutSolution cut = collect_edge_cut(inst, in_cut);
    cut.theta = theta;
    return cut;
}

CutReport verify_undirected_cut(const DirectedInstance& inst, const CutSolution& cut) {
    if (cut.kind != CutKind::Edge) throw InputError("expected an edge cut");
    std::vector<int> twin = bidirected_twins(inst);
    CutSolution closed = cut;
    for (int a : cut.members) {
        if (a < 0 || a >= inst.num_arcs()) throw InputError("cut member out of range");
        closed.members.push_back(twin[a]);
    }
    std::sort(closed.members.begin(), closed.members.end());
    closed.members.erase(std::unique(closed.members.begin(), closed.members.end()),
                         closed.members.end());
    return verify_cut(inst, closed);
}

}  // namespace mwcut
