#include "mwcut/families.hpp"

#include <algorithm>
#include <cmath>

#include "mwcut/random.hpp"

namespace mwcut {

namespace {

struct GapPiece {
    int n = 0;
    std::vector<Arc> arcs;
    NodeId s = 0;
    NodeId t = 0;
};

// G_0 on {s, q, r, t}: unit arc (q,r), infinite arcs (s,q),(t,q),(r,s),(r,t).
// One-way, two-way and LP value are all 1.
GapPiece build_gap(int level) {
    if (level == 0) {
        GapPiece g;
        g.n = 4;
        g.s = 0;
        g.t = 3;
        NodeId q = 1, r = 2;
        g.arcs.push_back({q, r, 1.0});
        g.arcs.push_back({g.s, q, kInf});
        g.arcs.push_back({g.t, q, kInf});
        g.arcs.push_back({r, g.s, kInf});
        g.arcs.push_back({r, g.t, kInf});
        return g;
    }
    GapPiece a = build_gap(level - 1);
    GapPiece b = build_gap(level - 1);

    // glue b's source onto a's sink (the center), then hang v1, v2 off it
    NodeId center = a.t;
    auto map_b = [&](NodeId v) -> NodeId {
        if (v == b.s) return center;
        return a.n + v - (v > b.s ? 1 : 0);
    };
    GapPiece g;
    g.n = a.n + b.n + 1;
    NodeId v1 = a.n + b.n - 1, v2 = v1 + 1;
    g.s = a.s;
    g.t = map_b(b.t);
    g.arcs = std::move(a.arcs);
    for (const Arc& e : b.arcs) g.arcs.push_back({map_b(e.tail), map_b(e.head), e.weight});
    g.arcs.push_back({v1, center, 1.0});
    g.arcs.push_back({center, v2, 1.0});
    g.arcs.push_back({g.s, v1, kInf});
    g.arcs.push_back({g.t, v1, kInf});
    g.arcs.push_back({v2, g.s, kInf});
    g.arcs.push_back({v2, g.t, kInf});
    return g;
}

}  // namespace

DirectedInstance gen_gap_family(int level) {
    if (level < 0) throw InputError("level must be nonnegative");
    if (level > 20) throw GuardError("gap family level too large (node count over 1e7)");
    GapPiece g = build_gap(level);
    DirectedInstance inst;
    inst.n = g.n;
    inst.arcs = std::move(g.arcs);
    inst.terminals = {g.s, g.t};
    validate(inst);
    return inst;
}

FamilyStats gap_family_stats(int level) {
    if (level < 0) throw InputError("level must be nonnegative");
    FamilyStats st;
    st.index = level;
    st.alpha = 2.0 - 1.0 / (level + 1);
    st.one_way_cut = level + 1;
    st.two_way_cut = 2 * level + 1;
    st.lp_opt = level + 1;
    st.flow_opt = level + 1;
    return st;
}

DirectedInstance gen_fractionality_family(int h) {
    if (h < 2) throw InputError("h must be at least 2");
    if (h > 5000000) throw GuardError("chain length too large (node count over 1e7)");
    DirectedInstance inst;
    inst.n = 2 + 2 * h;
    NodeId s = 0, t = 1;
    auto u = [&](int i) { return 1 + i; };          // u_1..u_h -> 2..h+1
    auto v = [&](int i) { return 1 + h + i; };      // v_1..v_h -> h+2..2h+1
    inst.terminals = {s, t};
    for (int i = 1; i < h; ++i) inst.arcs.push_back({u(i), u(i + 1), 1.0});
    for (int i = 1; i < h; ++i) inst.arcs.push_back({v(i), v(i + 1), 1.0});
    inst.arcs.push_back({s, u(1), kInf});
    inst.arcs.push_back({t, v(1), kInf});
    inst.arcs.push_back({v(h), t, kInf});
    inst.arcs.push_back({u(h), s, kInf});
    for (int i = 1; i < h; ++i) inst.arcs.push_back({u(i + 1), v(i), kInf});
    for (int i = 1; i < h; ++i) inst.arcs.push_back({v(i + 1), u(i), kInf});
    validate(inst);
    return inst;
}

FamilyStats fractionality_stats(int h) {
    if (h < 2) throw InputError("h must be at least 2");
    FamilyStats st;
    st.index = h;
    st.lp_opt = 2.0 * (h - 1) / h;
    st.flow_opt = st.lp_opt;
    st.pair_sum = 2.0 / h;
    return st;
}

namespace {

std::vector<NodeId> sample_terminals(std::mt19937_64& rng, int n, int k) {
    std::vector<NodeId> ids(n);
    for (int i = 0; i < n; ++i) ids[i] = i;
    for (int i = 0; i < k; ++i)
        std::swap(ids[i], ids[i + uniform_below(rng, n - i)]);
    ids.resize(k);
    return ids;
}

bool all_pairs_reachable(const DirectedInstance& inst) {
    std::vector<std::vector<NodeId>> adj(inst.n);
    for (const Arc& a : inst.arcs) adj[a.tail].push_back(a.head);
    std::vector<char> seen(inst.n);
    for (NodeId s : inst.terminals) {
        std::fill(seen.begin(), seen.end(), 0);
        std::vector<NodeId> stack{s};
        seen[s] = 1;
        while (!stack.empty()) {
            NodeId u = stack.back();
            stack.pop_back();
            for (NodeId v : adj[u])
                if (!seen[v]) {
                    seen[v] = 1;
                    stack.push_back(v);
                }
        }
        for (NodeId other : inst.terminals)
            if (!seen[other]) return false;
    }
    return true;
}

bool terminals_connected(const NodeInstance& inst) {
    std::vector<std::vector<NodeId>> adj(inst.n);
    for (auto [u, v] : inst.edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    std::vector<char> seen(inst.n);
    std::vector<NodeId> stack{inst.terminals[0]};
    seen[inst.terminals[0]] = 1;
    while (!stack.empty()) {
        NodeId u = stack.back();
        stack.pop_back();
        for (NodeId v : adj[u])
            if (!seen[v]) {
                seen[v] = 1;
                stack.push_back(v);
            }
    }
    for (NodeId t : inst.terminals)
        if (!seen[t]) return false;
    return true;
}

void check_random_params(int n, int k, double wmin, double wmax) {
    if (n < 2 || k < 2 || k > n) throw InputError("need 2 <= k <= n");
    if (n > 5000000) throw GuardError("random instance too large (node count over 5e6)");
    if (!(wmin >= 0.0) || !(wmax >= wmin) || is_inf(wmax))
        throw InputError("need finite 0 <= wmin <= wmax");
}

}  // namespace

DirectedInstance gen_random_dirmc(int n, double arc_density, int k, double wmin, double wmax,
                                  std::uint64_t seed) {
    check_random_params(n, k, wmin, wmax);
    long m = std::max<long>(1, std::lround(arc_density * n * (n - 1)));
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < 2000; ++attempt) {
        DirectedInstance inst;
        inst.n = n;
        inst.terminals = sample_terminals(rng, n, k);
        for (long i = 0; i < m; ++i) {
            NodeId tail = static_cast<NodeId>(uniform_below(rng, n));
            NodeId head = static_cast<NodeId>(uniform_below(rng, n - 1));
            if (head >= tail) ++head;
            double w = wmin + (wmax - wmin) * uniform01(rng);
            inst.arcs.push_back({tail, head, w});
        }
        if (!all_pairs_reachable(inst)) continue;
        validate(inst);
        return inst;
    }
    throw InputError("could not sample a connected instance; raise the density");
}

NodeInstance gen_random_nodemc(int n, double edge_density, int k, double wmin, double wmax,
                               std::uint64_t seed) {
    check_random_params(n, k, wmin, wmax);
    if (k >= n) throw InputError("node instances need at least one non-terminal");
    long m = std::max<long>(1, std::lround(edge_density * n * (n - 1) / 2));
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < 2000; ++attempt) {
        NodeInstance inst;
        inst.n = n;
        inst.terminals = sample_terminals(rng, n, k);
        inst.weights.assign(n, 0.0);
        for (NodeId v = 0; v < n; ++v) inst.weights[v] = wmin + (wmax - wmin) * uniform01(rng);
        bool ok = true;
        for (long i = 0; i < m; ++i) {
            NodeId u = 0, v = 0;
            int tries = 0;
            do {
                u = static_cast<NodeId>(uniform_below(rng, n));
                v = static_cast<NodeId>(uniform_below(rng, n - 1));
                if (v >= u) ++v;
                if (++tries > 1000) { ok = false; break; }
            } while (inst.is_terminal(u) && inst.is_terminal(v));
            if (!ok) break;
            inst.edges.emplace_back(u, v);
        }
        if (!ok || !terminals_connected(inst)) continue;
        validate(inst);
        return inst;
    }
    throw InputError("could not sample a connected instance; raise the density");
}

}  // namespace mwcut
