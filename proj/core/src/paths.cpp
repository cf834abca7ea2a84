#include "mwcut/paths.hpp"

#include <algorithm>
#include <queue>

namespace mwcut {

ForwardGraph::ForwardGraph(const DirectedInstance& inst) {
    first.assign(inst.n + 1, 0);
    for (const Arc& a : inst.arcs) ++first[a.tail + 1];
    for (int v = 0; v < inst.n; ++v) first[v + 1] += first[v];
    arc_id.resize(inst.arcs.size());
    head.resize(inst.arcs.size());
    std::vector<int> cursor(first.begin(), first.end() - 1);
    for (int i = 0; i < inst.num_arcs(); ++i) {
        int slot = cursor[inst.arcs[i].tail]++;
        arc_id[slot] = i;
        head[slot] = inst.arcs[i].head;
    }
}

namespace {

void check_lengths(const DirectedInstance& inst, const FractionalSolution& x) {
    if (x.mode != LpMode::Edge || static_cast<int>(x.values.size()) != inst.num_arcs())
        throw InputError("lengths do not match instance arcs");
    for (double v : x.values)
        if (!(v >= 0.0)) throw InputError("lengths must be nonnegative");
}

struct QItem {
    double dist;
    NodeId node;
    bool operator>(const QItem& o) const {
        if (dist != o.dist) return dist > o.dist;
        return node > o.node;
    }
};

}  // namespace

DistanceTable sssp_with_parents(const DirectedInstance& inst, const FractionalSolution& x,
                                NodeId source, std::vector<int>& parent_arc) {
    check_lengths(inst, x);
    if (source < 0 || source >= inst.n) throw InputError("source out of range");
    ForwardGraph g(inst);

    DistanceTable table;
    table.source = source;
    table.dist.assign(inst.n, kInf);
    parent_arc.assign(inst.n, -1);

    std::priority_queue<QItem, std::vector<QItem>, std::greater<QItem>> pq;
    table.dist[source] = 0.0;
    pq.push({0.0, source});
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (d > table.dist[u]) continue;
        for (int s = g.first[u]; s < g.first[u + 1]; ++s) {
            double nd = d + x.values[g.arc_id[s]];
            NodeId v = g.head[s];
            if (nd < table.dist[v]) {
                table.dist[v] = nd;
                parent_arc[v] = g.arc_id[s];
                pq.push({nd, v});
            }
        }
    }
    return table;
}

DistanceTable sssp(const DirectedInstance& inst, const FractionalSolution& x, NodeId source) {
    std::vector<int> parents;
    return sssp_with_parents(inst, x, source, parents);
}

namespace detail {

namespace {

struct MLItem {
    double dist;
    int term;   // terminal index, the tie-break key after dist
    NodeId node;
    int parent_label;
    int via_arc;
    bool operator>(const MLItem& o) const {
        if (dist != o.dist) return dist > o.dist;
        if (term != o.term) return term > o.term;
        return node > o.node;
    }
};

}  // namespace

LabeledNearTable h_nearest_on(const ForwardGraph& g, int n, const std::vector<double>& len,
                              const std::vector<NodeId>& terminals, int h, double dist_cap) {
    LabeledNearTable t;
    t.h = h;
    t.count.assign(n, 0);
    t.term.assign(static_cast<size_t>(n) * h, -1);
    t.dist.assign(static_cast<size_t>(n) * h, kInf);
    t.label_of.assign(static_cast<size_t>(n) * h, -1);

    std::priority_queue<MLItem, std::vector<MLItem>, std::greater<MLItem>> pq;
    for (int i = 0; i < static_cast<int>(terminals.size()); ++i)
        pq.push({0.0, i, terminals[i], -1, -1});

    while (!pq.empty()) {
        MLItem it = pq.top();
        pq.pop();
        NodeId u = it.node;
        if (t.count[u] >= h) continue;
        bool dup = false;
        size_t base = static_cast<size_t>(u) * h;
        for (int j = 0; j < t.count[u]; ++j)
            if (t.term[base + j] == it.term) { dup = true; break; }
        if (dup) continue;

        int slot = t.count[u]++;
        t.term[base + slot] = it.term;
        t.dist[base + slot] = it.dist;
        int label = static_cast<int>(t.parent.size());
        t.label_of[base + slot] = label;
        t.parent.push_back(it.parent_label);
        t.via_arc.push_back(it.via_arc);

        for (int s = g.first[u]; s < g.first[u + 1]; ++s) {
            double nd = it.dist + len[g.arc_id[s]];
            if (nd >= dist_cap) continue;
            NodeId v = g.head[s];
            if (t.count[v] >= h) continue;  // full nodes reject at pop anyway
            size_t vb = static_cast<size_t>(v) * h;
            bool have_term = false;
            for (int j = 0; j < t.count[v]; ++j)
                if (t.term[vb + j] == it.term) { have_term = true; break; }
            if (have_term) continue;
            pq.push({nd, it.term, v, label, g.arc_id[s]});
        }
    }
    return t;
}

InterTerminalPath shortest_interterminal_path(const ForwardGraph& g, int n,
                                              const std::vector<double>& len,
                                              const std::vector<NodeId>& terminals) {
    NearestPathFinder finder(g, n, terminals);
    return finder.compute(len);
}

namespace {

struct LeanItem {
    double dist;
    int term;
    NodeId node;
    bool operator>(const LeanItem& o) const {
        if (dist != o.dist) return dist > o.dist;
        if (term != o.term) return term > o.term;
        return node > o.node;
    }
};

}  // namespace

NearTerminalTable two_nearest_table(const ForwardGraph& g, int n, const std::vector<double>& len,
                                    const std::vector<NodeId>& terminals, double dist_cap) {
    NearTerminalTable t;
    t.h = 2;
    t.count.assign(n, 0);
    t.term.assign(static_cast<size_t>(n) * 2, -1);
    t.dist.assign(static_cast<size_t>(n) * 2, kInf);

    std::priority_queue<LeanItem, std::vector<LeanItem>, std::greater<LeanItem>> pq;
    for (int i = 0; i < static_cast<int>(terminals.size()); ++i)
        pq.push({0.0, i, terminals[i]});

    while (!pq.empty()) {
        LeanItem it = pq.top();
        pq.pop();
        NodeId u = it.node;
        size_t base = static_cast<size_t>(u) * 2;
        if (t.count[u] >= 2 || (t.count[u] == 1 && t.term[base] == it.term)) continue;

        int slot = t.count[u]++;
        t.term[base + slot] = it.term;
        t.dist[base + slot] = it.dist;

        for (int s = g.first[u]; s < g.first[u + 1]; ++s) {
            double nd = it.dist + len[g.arc_id[s]];
            if (nd >= dist_cap) continue;
            NodeId v = g.head[s];
            size_t vb = static_cast<size_t>(v) * 2;
            if (t.count[v] >= 2 || (t.count[v] == 1 && t.term[vb] == it.term)) continue;
            pq.push({nd, it.term, v});
        }
    }
    return t;
}

bool NearestPathFinder::later(const Item& a, const Item& b) {
    if (a.dist != b.dist) return a.dist > b.dist;
    if (a.term != b.term) return a.term > b.term;
    return a.node > b.node;
}

NearestPathFinder::NearestPathFinder(const ForwardGraph& g, int n, std::vector<NodeId> terminals)
    : g_(g), n_(n), terminals_(std::move(terminals)) {
    count_.resize(n_);
    term_.resize(static_cast<size_t>(n_) * 2);
    dist_.resize(static_cast<size_t>(n_) * 2);
    label_of_.resize(static_cast<size_t>(n_) * 2);
    parent_.reserve(static_cast<size_t>(n_) * 2);
    via_arc_.reserve(static_cast<size_t>(n_) * 2);
    heap_.reserve(g_.arc_id.size() + terminals_.size());
}

const InterTerminalPath& NearestPathFinder::compute(const std::vector<double>& len,
                                                    double dist_cap) {
    std::fill(count_.begin(), count_.end(), 0);
    parent_.clear();
    via_arc_.clear();
    heap_.clear();
    for (int i = 0; i < static_cast<int>(terminals_.size()); ++i) {
        heap_.push_back({0.0, i, terminals_[i], -1, -1});
        std::push_heap(heap_.begin(), heap_.end(), later);
    }

    while (!heap_.empty()) {
        std::pop_heap(heap_.begin(), heap_.end(), later);
        Item it = heap_.back();
        heap_.pop_back();
        NodeId u = it.node;
        if (count_[u] >= 2) continue;
        size_t base = static_cast<size_t>(u) * 2;
        if (count_[u] == 1 && term_[base] == it.term) continue;

        int slot = count_[u]++;
        term_[base + slot] = it.term;
        dist_[base + slot] = it.dist;
        int label = static_cast<int>(parent_.size());
        label_of_[base + slot] = label;
        parent_.push_back(it.parent_label);
        via_arc_.push_back(it.via_arc);

        for (int s = g_.first[u]; s < g_.first[u + 1]; ++s) {
            double nd = it.dist + len[g_.arc_id[s]];
            if (nd >= dist_cap) continue;
            NodeId h = g_.head[s];
            size_t hb = static_cast<size_t>(h) * 2;
            if (count_[h] >= 2 || (count_[h] == 1 && term_[hb] == it.term)) continue;
            heap_.push_back({nd, it.term, h, label, g_.arc_id[s]});
            std::push_heap(heap_.begin(), heap_.end(), later);
        }
    }

    out_.dist = kInf;
    out_.from_idx = out_.to_idx = -1;
    out_.arcs.clear();
    for (int j = 0; j < static_cast<int>(terminals_.size()); ++j) {
        NodeId v = terminals_[j];
        size_t base = static_cast<size_t>(v) * 2;
        for (int slot = 0; slot < count_[v]; ++slot) {
            if (term_[base + slot] == j) continue;  // own zero-distance label
            if (dist_[base + slot] < out_.dist) {
                out_.dist = dist_[base + slot];
                out_.from_idx = term_[base + slot];
                out_.to_idx = j;
                out_.arcs.clear();
                for (int lab = label_of_[base + slot]; lab >= 0; lab = parent_[lab])
                    if (via_arc_[lab] >= 0) out_.arcs.push_back(via_arc_[lab]);
                std::reverse(out_.arcs.begin(), out_.arcs.end());
            }
            break;  // nearer slots dominate farther ones for the same target
        }
    }
    return out_;
}

}  // namespace detail

NearTerminalTable h_nearest_terminals(const DirectedInstance& inst, const FractionalSolution& x, int h) {
    check_lengths(inst, x);
    if (h < 1 || h > inst.k()) throw InputError("need 1 <= h <= k");
    ForwardGraph g(inst);
    detail::LabeledNearTable lt = detail::h_nearest_on(g, inst.n, x.values, inst.terminals, h);
    NearTerminalTable t;
    t.h = h;
    t.count = std::move(lt.count);
    t.term = std::move(lt.term);
    t.dist = std::move(lt.dist);
    return t;
}

double min_interterminal_distance(const DirectedInstance& inst, const FractionalSolution& x) {
    check_lengths(inst, x);
    ForwardGraph g(inst);
    return detail::shortest_interterminal_path(g, inst.n, x.values, inst.terminals).dist;
}

}  // namespace mwcut
