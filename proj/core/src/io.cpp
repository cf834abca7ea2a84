#include "mwcut/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

namespace mwcut {

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
    throw ParseError("line " + std::to_string(line) + ": " + msg);
}

struct Tokens {
    std::vector<std::string> tok;
    int line = 0;
};

// Strip comments, split on whitespace, drop blank lines.
std::vector<Tokens> tokenize(std::istream& in) {
    std::vector<Tokens> out;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        if (auto pos = raw.find('#'); pos != std::string::npos) raw.erase(pos);
        std::istringstream ss(raw);
        Tokens t;
        t.line = line;
        std::string w;
        while (ss >> w) t.tok.push_back(w);
        if (!t.tok.empty()) out.push_back(std::move(t));
    }
    return out;
}

long parse_int(const Tokens& t, size_t i, const char* what) {
    if (i >= t.tok.size()) fail(t.line, std::string("missing ") + what);
    const std::string& s = t.tok[i];
    long v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        fail(t.line, std::string("bad ") + what + " '" + s + "'");
    return v;
}

NodeId parse_id(const Tokens& t, size_t i, int n, const char* what) {
    long v = parse_int(t, i, what);
    if (v < 1 || v > n) fail(t.line, std::string(what) + " out of range [1," + std::to_string(n) + "]");
    return static_cast<NodeId>(v - 1);
}

double parse_weight(const Tokens& t, size_t i, const char* what) {
    if (i >= t.tok.size()) fail(t.line, std::string("missing ") + what);
    const std::string& s = t.tok[i];
    if (s == "inf") return kInf;
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || std::isnan(v) || std::isinf(v))
        fail(t.line, std::string("bad ") + what + " '" + s + "'");
    if (v < 0.0) fail(t.line, std::string("negative ") + what);
    return v;
}

// lengths are plain finite decimals; the inf token is weights-only
double parse_length(const Tokens& t, size_t i) {
    if (i < t.tok.size() && t.tok[i] == "inf") fail(t.line, "lengths must be finite");
    return parse_weight(t, i, "length");
}

void expect_size(const Tokens& t, size_t n) {
    if (t.tok.size() != n) fail(t.line, "expected " + std::to_string(n) + " tokens");
}

}  // namespace

std::string format_weight(double w) {
    if (is_inf(w)) return "inf";
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, w);
    (void)ec;
    return std::string(buf, p);
}

AnyInstance parse_instance(std::istream& in) {
    auto lines = tokenize(in);
    if (lines.empty()) throw ParseError("line 1: empty instance");
    const Tokens& hdr = lines[0];
    expect_size(hdr, 5);
    if (hdr.tok[0] != "p") fail(hdr.line, "expected header 'p dirmc|nodemc <n> <m> <k>'");
    const std::string& kind = hdr.tok[1];
    if (kind != "dirmc" && kind != "nodemc") fail(hdr.line, "unknown problem kind '" + kind + "'");
    long n = parse_int(hdr, 2, "node count");
    long m = parse_int(hdr, 3, "arc/edge count");
    long k = parse_int(hdr, 4, "terminal count");
    if (n < 1) fail(hdr.line, "node count must be positive");
    if (m < 0 || k < 2) fail(hdr.line, "need m >= 0 and k >= 2");

    std::vector<NodeId> terminals;
    auto read_terminal = [&](const Tokens& t) {
        expect_size(t, 2);
        NodeId id = parse_id(t, 1, static_cast<int>(n), "terminal id");
        for (NodeId prev : terminals)
            if (prev == id) fail(t.line, "duplicate terminal");
        terminals.push_back(id);
    };

    if (kind == "dirmc") {
        DirectedInstance inst;
        inst.n = static_cast<int>(n);
        for (size_t i = 1; i < lines.size(); ++i) {
            const Tokens& t = lines[i];
            if (t.tok[0] == "t") {
                read_terminal(t);
            } else if (t.tok[0] == "a") {
                expect_size(t, 4);
                Arc a;
                a.tail = parse_id(t, 1, inst.n, "arc tail");
                a.head = parse_id(t, 2, inst.n, "arc head");
                if (a.tail == a.head) fail(t.line, "self-loop");
                a.weight = parse_weight(t, 3, "arc weight");
                inst.arcs.push_back(a);
            } else {
                fail(t.line, "unexpected line type '" + t.tok[0] + "' in dirmc instance");
            }
        }
        if (static_cast<long>(terminals.size()) != k)
            fail(lines.back().line, "expected " + std::to_string(k) + " terminals");
        if (static_cast<long>(inst.arcs.size()) != m)
            fail(lines.back().line, "expected " + std::to_string(m) + " arcs");
        inst.terminals = std::move(terminals);
        validate(inst);
        return inst;
    }

    NodeInstance inst;
    inst.n = static_cast<int>(n);
    inst.weights.assign(inst.n, -1.0);
    std::vector<bool> seen(inst.n, false);
    for (size_t i = 1; i < lines.size(); ++i) {
        const Tokens& t = lines[i];
        if (t.tok[0] == "t") {
            read_terminal(t);
        } else if (t.tok[0] == "n") {
            expect_size(t, 3);
            NodeId id = parse_id(t, 1, inst.n, "node id");
            if (seen[id]) fail(t.line, "duplicate node weight");
            seen[id] = true;
            inst.weights[id] = parse_weight(t, 2, "node weight");
        } else if (t.tok[0] == "e") {
            expect_size(t, 3);
            NodeId u = parse_id(t, 1, inst.n, "edge endpoint");
            NodeId v = parse_id(t, 2, inst.n, "edge endpoint");
            if (u == v) fail(t.line, "self-loop");
            inst.edges.emplace_back(u, v);
        } else {
            fail(t.line, "unexpected line type '" + t.tok[0] + "' in nodemc instance");
        }
    }
    if (static_cast<long>(terminals.size()) != k)
        fail(lines.back().line, "expected " + std::to_string(k) + " terminals");
    if (static_cast<long>(inst.edges.size()) != m)
        fail(lines.back().line, "expected " + std::to_string(m) + " edges");
    for (int v = 0; v < inst.n; ++v)
        if (!seen[v]) throw ParseError("missing weight for node " + std::to_string(v + 1));
    inst.terminals = std::move(terminals);
    validate(inst);
    return inst;
}

AnyInstance parse_instance_string(const std::string& text) {
    std::istringstream ss(text);
    return parse_instance(ss);
}

AnyInstance load_instance(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InputError("cannot open '" + path + "'");
    return parse_instance(f);
}

std::string serialize_instance(const DirectedInstance& inst) {
    std::ostringstream out;
    out << "p dirmc " << inst.n << ' ' << inst.num_arcs() << ' ' << inst.k() << '\n';
    for (NodeId t : inst.terminals) out << "t " << t + 1 << '\n';
    for (const Arc& a : inst.arcs)
        out << "a " << a.tail + 1 << ' ' << a.head + 1 << ' ' << format_weight(a.weight) << '\n';
    return out.str();
}

std::string serialize_instance(const NodeInstance& inst) {
    std::ostringstream out;
    out << "p nodemc " << inst.n << ' ' << inst.num_edges() << ' ' << inst.k() << '\n';
    for (NodeId t : inst.terminals) out << "t " << t + 1 << '\n';
    for (int v = 0; v < inst.n; ++v)
        out << "n " << v + 1 << ' ' << format_weight(inst.weights[v]) << '\n';
    for (auto [u, v] : inst.edges) out << "e " << u + 1 << ' ' << v + 1 << '\n';
    return out.str();
}

FractionalSolution parse_fractional(std::istream& in, const DirectedInstance& inst) {
    auto lines = tokenize(in);
    if (static_cast<int>(lines.size()) != inst.num_arcs())
        throw ParseError("expected one 'x' line per arc (" + std::to_string(inst.num_arcs()) + ")");
    FractionalSolution x;
    x.mode = LpMode::Edge;
    x.values.reserve(lines.size());
    for (int i = 0; i < inst.num_arcs(); ++i) {
        const Tokens& t = lines[i];
        expect_size(t, 4);
        if (t.tok[0] != "x") fail(t.line, "expected 'x <u> <v> <value>'");
        NodeId u = parse_id(t, 1, inst.n, "arc tail");
        NodeId v = parse_id(t, 2, inst.n, "arc head");
        if (u != inst.arcs[i].tail || v != inst.arcs[i].head)
            fail(t.line, "arc endpoints do not match instance arc order");
        x.values.push_back(parse_length(t, 3));
    }
    return x;
}

FractionalSolution parse_fractional(std::istream& in, const NodeInstance& inst) {
    auto lines = tokenize(in);
    if (static_cast<int>(lines.size()) != inst.n)
        throw ParseError("expected one 'xn' line per node (" + std::to_string(inst.n) + ")");
    FractionalSolution x;
    x.mode = LpMode::Node;
    x.values.assign(inst.n, 0.0);
    std::vector<bool> seen(inst.n, false);
    for (const Tokens& t : lines) {
        expect_size(t, 3);
        if (t.tok[0] != "xn") fail(t.line, "expected 'xn <id> <value>'");
        NodeId id = parse_id(t, 1, inst.n, "node id");
        if (seen[id]) fail(t.line, "duplicate node");
        seen[id] = true;
        x.values[id] = parse_length(t, 2);
        if (inst.is_terminal(id) && x.values[id] != 0.0)
            fail(t.line, "terminals must have length 0");
    }
    return x;
}

std::string serialize_fractional(const DirectedInstance& inst, const FractionalSolution& x) {
    if (x.mode != LpMode::Edge || static_cast<int>(x.values.size()) != inst.num_arcs())
        throw InputError("fractional solution does not match instance");
    std::ostringstream out;
    for (int i = 0; i < inst.num_arcs(); ++i)
        out << "x " << inst.arcs[i].tail + 1 << ' ' << inst.arcs[i].head + 1 << ' '
            << format_weight(x.values[i]) << '\n';
    return out.str();
}

std::string serialize_fractional(const NodeInstance& inst, const FractionalSolution& x) {
    if (x.mode != LpMode::Node || static_cast<int>(x.values.size()) != inst.n)
        throw InputError("fractional solution does not match instance");
    std::ostringstream out;
    for (int v = 0; v < inst.n; ++v) out << "xn " << v + 1 << ' ' << format_weight(x.values[v]) << '\n';
    return out.str();
}

CutSolution parse_cut(std::istream& in, const DirectedInstance& inst) {
    auto lines = tokenize(in);
    if (lines.empty()) throw ParseError("empty cut file");

    // parallel arcs share endpoints; consume matching indices in arc order
    std::vector<std::vector<int>> by_pair;
    std::vector<size_t> next;
    auto key = [&](NodeId u, NodeId v) { return static_cast<long>(u) * inst.n + v; };
    std::vector<std::pair<long, int>> index;
    index.reserve(inst.arcs.size());
    for (int i = 0; i < inst.num_arcs(); ++i) index.emplace_back(key(inst.arcs[i].tail, inst.arcs[i].head), i);
    std::sort(index.begin(), index.end());

    CutSolution cut;
    cut.kind = CutKind::Edge;
    bool have_cost = false;
    double file_cost = 0.0;
    std::vector<bool> used(inst.arcs.size(), false);
    for (const Tokens& t : lines) {
        if (t.tok[0] == "cost") {
            expect_size(t, 2);
            file_cost = parse_weight(t, 1, "cost");
            have_cost = true;
        } else if (t.tok[0] == "cut") {
            if (have_cost) fail(t.line, "'cost' must be the final line");
            if (t.tok.size() < 2 || t.tok[1] != "a") fail(t.line, "expected 'cut a <u> <v>'");
            expect_size(t, 4);
            NodeId u = parse_id(t, 2, inst.n, "arc tail");
            NodeId v = parse_id(t, 3, inst.n, "arc head");
            long kk = key(u, v);
            auto it = std::lower_bound(index.begin(), index.end(), std::make_pair(kk, 0));
            int found = -1;
            for (; it != index.end() && it->first == kk; ++it)
                if (!used[it->second]) { found = it->second; break; }
            if (found < 0) fail(t.line, "cut names an arc not in the instance (or too many copies)");
            used[found] = true;
            cut.members.push_back(found);
        } else {
            fail(t.line, "unexpected line type '" + t.tok[0] + "' in cut file");
        }
    }
    if (!have_cost) throw ParseError("cut file missing final 'cost' line");
    std::sort(cut.members.begin(), cut.members.end());
    cut.cost = 0.0;
    for (int i : cut.members) cut.cost += inst.arcs[i].weight;
    double tol = 1e-9 * (1.0 + std::abs(cut.cost));
    if (!(is_inf(cut.cost) && is_inf(file_cost)) && std::abs(cut.cost - file_cost) > tol)
        throw ParseError("cut file cost does not match member weights");
    return cut;
}

CutSolution parse_cut(std::istream& in, const NodeInstance& inst) {
    auto lines = tokenize(in);
    if (lines.empty()) throw ParseError("empty cut file");
    CutSolution cut;
    cut.kind = CutKind::Node;
    bool have_cost = false;
    double file_cost = 0.0;
    std::vector<bool> used(inst.n, false);
    for (const Tokens& t : lines) {
        if (t.tok[0] == "cost") {
            expect_size(t, 2);
            file_cost = parse_weight(t, 1, "cost");
            have_cost = true;
        } else if (t.tok[0] == "cut") {
            if (have_cost) fail(t.line, "'cost' must be the final line");
            if (t.tok.size() < 2 || t.tok[1] != "n") fail(t.line, "expected 'cut n <id>'");
            expect_size(t, 3);
            NodeId v = parse_id(t, 2, inst.n, "node id");
            if (used[v]) fail(t.line, "duplicate cut node");
            used[v] = true;
            cut.members.push_back(v);
        } else {
            fail(t.line, "unexpected line type '" + t.tok[0] + "' in cut file");
        }
    }
    if (!have_cost) throw ParseError("cut file missing final 'cost' line");
    std::sort(cut.members.begin(), cut.members.end());
    cut.cost = 0.0;
    for (int v : cut.members) cut.cost += inst.weights[v];
    double tol = 1e-9 * (1.0 + std::abs(cut.cost));
    if (!(is_inf(cut.cost) && is_inf(file_cost)) && std::abs(cut.cost - file_cost) > tol)
        throw ParseError("cut file cost does not match member weights");
    return cut;
}

std::string serialize_cut(const DirectedInstance& inst, const CutSolution& cut) {
    if (cut.kind != CutKind::Edge) throw InputError("cut kind does not match instance");
    std::ostringstream out;
    for (int i : cut.members) {
        if (i < 0 || i >= inst.num_arcs()) throw InputError("cut member out of range");
        out << "cut a " << inst.arcs[i].tail + 1 << ' ' << inst.arcs[i].head + 1 << '\n';
    }
    out << "cost " << format_weight(cut.cost) << '\n';
    return out.str();
}

std::string serialize_cut(const NodeInstance& inst, const CutSolution& cut) {
    if (cut.kind != CutKind::Node) throw InputError("cut kind does not match instance");
    std::ostringstream out;
    for (int v : cut.members) {
        if (v < 0 || v >= inst.n) throw InputError("cut member out of range");
        out << "cut n " << v + 1 << '\n';
    }
    out << "cost " << format_weight(cut.cost) << '\n';
    return out.str();
}

}  // namespace mwcut
