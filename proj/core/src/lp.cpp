#include "mwcut/lp.hpp"

#include <algorithm>
#include <cmath>

#include "mwcut/noderound.hpp"
#include "mwcut/paths.hpp"
#include "mwcut/reductions.hpp"

namespace mwcut {

namespace {

void check_edge_solution(const DirectedInstance& inst, const FractionalSolution& x) {
    if (x.mode != LpMode::Edge || static_cast<int>(x.values.size()) != inst.num_arcs())
        throw InputError("fractional solution does not match instance arcs");
    for (double v : x.values)
        if (!(v >= 0.0) || is_inf(v)) throw InputError("lengths must be finite and nonnegative");
}

void check_node_solution(const NodeInstance& inst, const FractionalSolution& x) {
    if (x.mode != LpMode::Node || static_cast<int>(x.values.size()) != inst.n)
        throw InputError("fractional solution does not match instance nodes");
    for (double v : x.values)
        if (!(v >= 0.0) || is_inf(v)) throw InputError("lengths must be finite and nonnegative");
    for (NodeId t : inst.terminals)
        if (x.values[t] != 0.0) throw InputError("terminals must carry length 0");
}

}  // namespace

double lp_cost(const DirectedInstance& inst, const FractionalSolution& x) {
    check_edge_solution(inst, x);
    double acc = 0.0;
    for (int i = 0; i < inst.num_arcs(); ++i) {
        if (is_inf(inst.arcs[i].weight)) {
            if (x.values[i] > 0.0) return kInf;
        } else {
            acc += inst.arcs[i].weight * x.values[i];
        }
    }
    return acc;
}

double lp_cost(const NodeInstance& inst, const FractionalSolution& x) {
    check_node_solution(inst, x);
    double acc = 0.0;
    for (int v = 0; v < inst.n; ++v) {
        if (is_inf(inst.weights[v])) {
            if (x.values[v] > 0.0) return kInf;
        } else {
            acc += inst.weights[v] * x.values[v];
        }
    }
    return acc;
}

FeasibilityReport verify_feasible(const DirectedInstance& inst, const FractionalSolution& x,
                                  double tol) {
    check_edge_solution(inst, x);
    ForwardGraph g(inst);
    auto sp = detail::shortest_interterminal_path(g, inst.n, x.values, inst.terminals);
    FeasibilityReport rep;
    rep.min_distance = sp.dist;
    rep.feasible = sp.dist >= 1.0 - tol;
    if (!rep.feasible) {
        rep.from_terminal = sp.from_idx;
        rep.to_terminal = sp.to_idx;
        rep.witness = sp.arcs;
    }
    return rep;
}

FeasibilityReport verify_feasible(const NodeInstance& inst, const FractionalSolution& x,
                                  double tol) {
    check_node_solution(inst, x);
    FeasibilityReport rep;
    rep.min_distance = kInf;
    for (int i = 0; i < inst.k(); ++i) {
        std::vector<NodeId> parent;
        NodeDistanceTable t = node_sssp_with_parents(inst, x, inst.terminals[i], parent);
        for (int j = 0; j < inst.k(); ++j) {
            if (j == i) continue;
            double d = t.dist[inst.terminals[j]];
            if (d < rep.min_distance) {
                rep.min_distance = d;
                rep.from_terminal = i;
                rep.to_terminal = j;
                rep.witness.clear();
                for (NodeId v = inst.terminals[j]; v >= 0; v = parent[v]) rep.witness.push_back(v);
                std::reverse(rep.witness.begin(), rep.witness.end());
            }
        }
    }
    rep.feasible = rep.min_distance >= 1.0 - tol;
    if (rep.feasible) {
        rep.from_terminal = rep.to_terminal = -1;
        rep.witness.clear();
    }
    return rep;
}

namespace {

// After dividing by the computed minimum distance the result can sit an ulp
// below 1; bump it until the computed metric itself certifies feasibility.
template <typename Inst>
void nudge_until_feasible(const Inst& inst, FractionalSolution& x) {
    for (int i = 0; i < 64; ++i) {
        if (verify_feasible(inst, x, 0.0).feasible) return;
        for (double& v : x.values) v *= 1.0 + 4 * std::numeric_limits<double>::epsilon();
    }
    throw GuardError("could not normalize lengths to an exactly feasible solution");
}

}  // namespace

FractionalSolution scale_to_feasible(const DirectedInstance& inst, const FractionalSolution& lengths) {
    check_edge_solution(inst, lengths);
    double d = min_interterminal_distance(inst, lengths);
    if (d == 0.0) throw InputError("cannot scale: a terminal pair is joined by a zero-length path");
    FractionalSolution out = lengths;
    for (double& v : out.values) v /= d;  // finite / inf == 0
    nudge_until_feasible(inst, out);
    return out;
}

FractionalSolution scale_to_feasible(const NodeInstance& inst, const FractionalSolution& lengths) {
    check_node_solution(inst, lengths);
    double d = kInf;
    for (int i = 0; i < inst.k(); ++i) {
        NodeDistanceTable t = node_sssp(inst, lengths, inst.terminals[i]);
        for (int j = 0; j < inst.k(); ++j)
            if (j != i) d = std::min(d, t.dist[inst.terminals[j]]);
    }
    if (d == 0.0) throw InputError("cannot scale: a terminal pair is joined by a zero-length path");
    FractionalSolution out = lengths;
    for (double& v : out.values) v /= d;
    nudge_until_feasible(inst, out);
    return out;
}

namespace {

struct GkRun {
    std::vector<double> lengths;
    double min_dist = kInf;  // final shortest inter-terminal distance
    double flow_total = 0.0;
    double max_overflow = 0.0;
    long iterations = 0;
};

// One Garg-Konemann pass at a fixed epsilon. Zero-weight arcs are treated as
// already cut (length pinned to +inf) and re-enter the solution as x = 1.
GkRun run_gk(const DirectedInstance& inst, const ForwardGraph& g, double eps,
             const std::vector<char>& zero_arc) {
    const int m = inst.num_arcs();
    int m_active = 0;
    for (int i = 0; i < m; ++i)
        if (!is_inf(inst.arcs[i].weight) && !zero_arc[i]) ++m_active;

    GkRun run;
    const double delta =
        (1.0 + eps) * std::pow((1.0 + eps) * std::max(m_active, 1), -1.0 / eps);
    run.lengths.resize(m);
    for (int i = 0; i < m; ++i) {
        const double w = inst.arcs[i].weight;
        run.lengths[i] = zero_arc[i] ? kInf : (is_inf(w) ? 0.0 : delta / w);
    }
    std::vector<double> flow(m, 0.0);

    const double cap_d =
        (static_cast<double>(std::max(m_active, 1)) / eps) *
            (std::log((1.0 + eps) / delta) / std::log1p(eps)) + 1024.0;
    const long cap = cap_d > 9e18 ? std::numeric_limits<long>::max() : static_cast<long>(cap_d);

    detail::NearestPathFinder finder(g, inst.n, inst.terminals);
    for (;;) {
        // labels past distance 1 never matter before termination
        const detail::InterTerminalPath* sp = &finder.compute(run.lengths, 1.0);
        if (!(sp->dist < 1.0)) {
            run.min_dist = finder.compute(run.lengths).dist;
            break;
        }

        double c = kInf;
        for (int a : sp->arcs)
            if (!is_inf(inst.arcs[a].weight)) c = std::min(c, inst.arcs[a].weight);
        if (is_inf(c)) throw InputError("LP optimum is infinite (all-infinite terminal path)");

        // reroute on this path while it stays near the shortest length; the
        // wider window trades a little duality gap for far fewer searches
        const double target = std::min(1.0, (1.0 + eps) * (1.0 + eps) * sp->dist);
        double plen = sp->dist;
        while (plen < target) {
            for (int a : sp->arcs) {
                const Arc& arc = inst.arcs[a];
                if (is_inf(arc.weight)) continue;
                flow[a] += c;
                run.lengths[a] *= 1.0 + eps * (c / arc.weight);
            }
            run.flow_total += c;
            if (++run.iterations > cap) throw GuardError("lp solver exceeded its iteration cap");
            plen = 0.0;
            for (int a : sp->arcs) plen += run.lengths[a];
        }
    }

    for (int i = 0; i < m; ++i) {
        const double w = inst.arcs[i].weight;
        if (!is_inf(w) && !zero_arc[i] && w > 0.0)
            run.max_overflow = std::max(run.max_overflow, flow[i] / w);
    }
    return run;
}

}  // namespace

LpResult solve_lp_mwu(const DirectedInstance& inst, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw InputError("epsilon must lie in (0,1)");
    validate(inst);
    const int m = inst.num_arcs();
    ForwardGraph g(inst);

    // a pair joined by infinite-weight arcs alone makes the LP optimum infinite
    std::vector<double> probe_len(m);
    for (int i = 0; i < m; ++i) probe_len[i] = is_inf(inst.arcs[i].weight) ? 0.0 : 1.0;
    auto probe = detail::shortest_interterminal_path(g, inst.n, probe_len, inst.terminals);
    if (probe.dist == 0.0)
        throw InputError("LP optimum is infinite: terminal pair connected by infinite-weight arcs only");
    if (probe.dist == kInf) {
        LpResult res;
        res.solution = {LpMode::Edge, std::vector<double>(m, 0.0)};
        return res;  // terminals pairwise disconnected, zero solution is optimal
    }

    std::vector<char> zero_arc(m, 0);
    for (int i = 0; i < m; ++i)
        if (!is_inf(inst.arcs[i].weight) && inst.arcs[i].weight == 0.0) zero_arc[i] = 1;

    // certify primal <= (1+epsilon) dual, trying progressively smaller
    // internal epsilons; the first rung is deliberately coarse since the
    // measured gap usually lands near half the internal epsilon
    LpResult res;
    for (double scale : {2.0, 1.0, 0.5, 0.25, 0.125}) {
        GkRun run = run_gk(inst, g, std::min(epsilon * scale, 0.45), zero_arc);

        FractionalSolution x{LpMode::Edge, std::vector<double>(m, 0.0)};
        for (int i = 0; i < m; ++i) {
            if (zero_arc[i])
                x.values[i] = 1.0;
            else if (!is_inf(inst.arcs[i].weight))
                x.values[i] = run.lengths[i] / run.min_dist;
        }
        nudge_until_feasible(inst, x);

        res.solution = std::move(x);
        res.primal_cost = lp_cost(inst, res.solution);
        res.dual_flow_value = run.flow_total / std::max(run.max_overflow, 1.0);
        res.iterations = run.iterations;
        res.epsilon = res.primal_cost == 0.0
                          ? 0.0
                          : std::max(res.primal_cost / res.dual_flow_value - 1.0, 0.0);
        if (res.epsilon <= epsilon) break;
    }
    if (res.epsilon > epsilon)
        throw GuardError("lp solver failed to certify the requested optimality gap");

    if (!verify_feasible(inst, res.solution, 0.0).feasible)
        throw GuardError("lp solver produced an infeasible solution");
    return res;
}

LpResult solve_node_lp(const NodeInstance& inst0, double epsilon) {
    NodeInstance inst = inst0;
    validate(inst);
    NodeInstance canon = canonicalize_node_instance(inst);
    NodeSplitResult red = node_split_reduction(canon);
    LpResult sub = solve_lp_mwu(red.directed, epsilon);

    LpResult res;
    res.solution.mode = LpMode::Node;
    res.solution.values.assign(inst.n, 0.0);
    for (NodeId v = 0; v < inst.n; ++v) {
        if (inst.is_terminal(v)) continue;
        int arc = red.split_arc_of_node[v];
        if (arc >= 0) res.solution.values[v] = sub.solution.values[arc];
    }
    nudge_until_feasible(inst, res.solution);
    res.primal_cost = lp_cost(inst, res.solution);
    res.dual_flow_value = sub.dual_flow_value;
    res.epsilon = sub.epsilon;
    res.iterations = sub.iterations;

    if (!verify_feasible(inst, res.solution, 0.0).feasible)
        throw GuardError("node lp solver produced an infeasible solution");
    return res;
}

}  // namespace mwcut
