#include "gsf/structures.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace gsf {

// ---------------------------------------------------------------------------
// Signature
// ---------------------------------------------------------------------------

int Signature::index_of(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
        if (symbols[i].first == name) return i;
    throw error("unknown relation symbol: " + name);
}

void Signature::validate() const {
    std::set<std::string> seen;
    for (const auto& [name, ar] : symbols) {
        if (name.empty()) throw error("empty relation symbol name");
        if (ar < 1) throw error("relation arity must be >= 1: " + name);
        if (!seen.insert(name).second) throw error("duplicate relation symbol: " + name);
    }
}

Signature Signature::graph() {
    return Signature{{{"E", 2}}};
}

// ---------------------------------------------------------------------------
// Structure
// ---------------------------------------------------------------------------

int Structure::element_index(const std::string& id) const {
    auto v = find_element(id);
    if (!v) throw error("unknown element id: " + id);
    return *v;
}

std::optional<int> Structure::find_element(const std::string& id) const {
    for (int i = 0; i < n(); ++i)
        if (universe[i] == id) return i;
    return std::nullopt;
}

void Structure::add_tuple(int sym, std::vector<int> tuple) {
    if (sym < 0 || sym >= sig.size()) throw error("tuple for unknown symbol");
    if (static_cast<int>(tuple.size()) != sig.arity(sym))
        throw error("tuple arity mismatch for " + sig.name(sym));
    auto& ts = rels[sym];
    auto it = std::lower_bound(ts.begin(), ts.end(), tuple);
    if (it == ts.end() || *it != tuple) ts.insert(it, std::move(tuple));
}

bool Structure::has_tuple(int sym, const std::vector<int>& tuple) const {
    const auto& ts = rels[sym];
    return std::binary_search(ts.begin(), ts.end(), tuple);
}

void Structure::remove_tuple(int sym, const std::vector<int>& tuple) {
    auto& ts = rels[sym];
    auto it = std::lower_bound(ts.begin(), ts.end(), tuple);
    if (it != ts.end() && *it == tuple) ts.erase(it);
}

size_t Structure::tuple_count() const {
    size_t c = 0;
    for (const auto& ts : rels) c += ts.size();
    return c;
}

std::vector<std::pair<int, int>> Structure::incident_tuples(int v) const {
    std::vector<std::pair<int, int>> out;
    for (int s = 0; s < sig.size(); ++s) {
        const auto& ts = rels[s];
        for (int t = 0; t < static_cast<int>(ts.size()); ++t) {
            for (int e : ts[t])
                if (e == v) {
                    out.emplace_back(s, t);
                    break;
                }
        }
    }
    // rels[s] is sorted, so (symbol, tuple index) order is canonical order
    return out;
}

void Structure::validate() const {
    sig.validate();
    if (static_cast<int>(rels.size()) != sig.size())
        throw error("relation table count does not match signature");
    std::set<std::string> ids;
    for (const auto& id : universe) {
        if (id.empty()) throw error("empty element id");
        if (!ids.insert(id).second) throw error("duplicate element id: " + id);
    }
    for (int s = 0; s < sig.size(); ++s)
        for (const auto& t : rels[s]) {
            if (static_cast<int>(t.size()) != sig.arity(s))
                throw error("tuple arity mismatch for " + sig.name(s));
            for (int e : t)
                if (e < 0 || e >= n()) throw error("tuple element out of range");
        }
    for (int v = 0; v < n(); ++v)
        if (degree_of_idx(*this, v) > degree_bound)
            throw error("element " + universe[v] + " exceeds degree bound " +
                        std::to_string(degree_bound));
}

// ---------------------------------------------------------------------------
// Graph
// ---------------------------------------------------------------------------

bool Graph::has_edge(int u, int v) const {
    if (u == v) return loops[u] != 0;
    return std::binary_search(adj[u].begin(), adj[u].end(), v);
}

Graph Graph::empty(int n, int degree_bound, bool allow_loops) {
    Graph g;
    g.vertex_count = n;
    g.names.resize(n);
    for (int i = 0; i < n; ++i) g.names[i] = "v" + std::to_string(i);
    g.adj.assign(n, {});
    g.loops.assign(n, 0);
    g.degree_bound = degree_bound;
    g.allow_loops = allow_loops;
    return g;
}

void Graph::add_edge(int u, int v) {
    if (u == v) {
        set_loop(u, true);
        return;
    }
    auto ins = [&](int a, int b) {
        auto it = std::lower_bound(adj[a].begin(), adj[a].end(), b);
        if (it == adj[a].end() || *it != b) adj[a].insert(it, b);
    };
    ins(u, v);
    ins(v, u);
}

void Graph::remove_edge(int u, int v) {
    if (u == v) {
        set_loop(u, false);
        return;
    }
    auto del = [&](int a, int b) {
        auto it = std::lower_bound(adj[a].begin(), adj[a].end(), b);
        if (it != adj[a].end() && *it == b) adj[a].erase(it);
    };
    del(u, v);
    del(v, u);
}

void Graph::set_loop(int v, bool on) {
    if (on && !allow_loops) throw error("self-loop not permitted on this graph");
    loops[v] = on ? 1 : 0;
}

void Graph::validate() const {
    for (int v = 0; v < vertex_count; ++v) {
        if (loops[v] && !allow_loops) throw error("unexpected self-loop");
        for (int u : adj[v]) {
            if (u < 0 || u >= vertex_count || u == v) throw error("bad adjacency entry");
            if (!std::binary_search(adj[u].begin(), adj[u].end(), v))
                throw error("asymmetric adjacency");
        }
        if (degree(v) > degree_bound)
            throw error("vertex " + names[v] + " exceeds degree bound");
    }
}

Structure to_structure(const Graph& g) {
    Structure s;
    s.sig = Signature::graph();
    s.universe = g.names;
    s.rels.assign(1, {});
    s.degree_bound = 2 * g.degree_bound;
    for (int v = 0; v < g.n(); ++v) {
        if (g.loops[v]) s.add_tuple(0, {v, v});
        for (int u : g.adj[v]) s.add_tuple(0, {v, u});
    }
    return s;
}

Graph graph_view(const Structure& s) {
    if (s.sig.size() != 1 || s.sig.arity(0) != 2)
        throw error("graph view requires a single binary relation");
    Graph g = Graph::empty(s.n(), (s.degree_bound + 1) / 2, true);
    g.names = s.universe;
    for (const auto& t : s.rels[0]) {
        if (t[0] != t[1] && !s.has_tuple(0, {t[1], t[0]}))
            throw error("graph view requires a symmetric relation");
        g.add_edge(t[0], t[1]);
    }
    bool any_loop = false;
    for (char l : g.loops) any_loop |= (l != 0);
    g.allow_loops = any_loop;
    return g;
}

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

int degree_of_idx(const Structure& a, int v) {
    int c = 0;
    for (const auto& ts : a.rels)
        for (const auto& t : ts)
            for (int e : t)
                if (e == v) {
                    ++c;
                    break;
                }
    return c;
}

int degree_of(const Structure& a, const std::string& id) {
    return degree_of_idx(a, a.element_index(id));
}

Graph gaifman_graph(const Structure& a) {
    int bound = 0;
    Graph g = Graph::empty(a.n(), 0, false);
    g.names = a.universe;
    for (const auto& ts : a.rels)
        for (const auto& t : ts)
            for (size_t i = 0; i < t.size(); ++i)
                for (size_t j = i + 1; j < t.size(); ++j)
                    if (t[i] != t[j]) g.add_edge(t[i], t[j]);
    for (int v = 0; v < g.n(); ++v) bound = std::max(bound, g.degree(v));
    g.degree_bound = bound;
    return g;
}

TupleAnswer answer_query(const Structure& a, const std::string& id, int i) {
    int v = a.element_index(id);
    if (i < 1 || i > a.degree_bound)
        throw error("query index " + std::to_string(i) + " outside 1.." +
                    std::to_string(a.degree_bound));
    auto inc = a.incident_tuples(v);
    if (i > static_cast<int>(inc.size())) return TupleAnswer::none();
    auto [sym, tidx] = inc[i - 1];
    TupleAnswer ans;
    ans.bottom = false;
    ans.symbol = a.sig.name(sym);
    for (int e : a.rels[sym][tidx]) ans.elements.push_back(a.universe[e]);
    return ans;
}

CanonInput to_canon_input(const Structure& a, const std::vector<int>& colors) {
    CanonInput in;
    in.n = a.n();
    in.colors = colors;
    for (int s = 0; s < a.sig.size(); ++s) {
        CanonRelation r;
        r.name = a.sig.name(s);
        r.arity = a.sig.arity(s);
        r.tuples = a.rels[s];
        in.relations.push_back(std::move(r));
    }
    return in;
}

std::string canonical_key(const Structure& a) {
    return canonical_key(to_canon_input(a));
}

std::string canonical_key(const Graph& g) {
    return canonical_key(to_canon_input(to_structure(g)));
}

Structure disjoint_union(const Structure& a, const Structure& b) {
    if (a.sig != b.sig) throw error("disjoint union: signature mismatch");
    if (a.degree_bound != b.degree_bound) throw error("disjoint union: degree bound mismatch");
    Structure u;
    u.sig = a.sig;
    u.degree_bound = a.degree_bound;
    u.rels.assign(u.sig.size(), {});
    for (const auto& id : a.universe) u.universe.push_back("u0." + id);
    for (const auto& id : b.universe) u.universe.push_back("u1." + id);
    int off = a.n();
    for (int s = 0; s < u.sig.size(); ++s) {
        for (const auto& t : a.rels[s]) u.add_tuple(s, t);
        for (auto t : b.rels[s]) {
            for (int& e : t) e += off;
            u.add_tuple(s, std::move(t));
        }
    }
    return u;
}

Structure permute(const Structure& a, const std::vector<int>& perm,
                  const std::vector<std::string>& new_ids) {
    // perm[old index] = new index
    Structure p;
    p.sig = a.sig;
    p.degree_bound = a.degree_bound;
    p.universe.assign(a.n(), "");
    for (int v = 0; v < a.n(); ++v)
        p.universe[perm[v]] = new_ids.empty() ? a.universe[v] : new_ids[perm[v]];
    p.rels.assign(p.sig.size(), {});
    for (int s = 0; s < p.sig.size(); ++s)
        for (auto t : a.rels[s]) {
            for (int& e : t) e = perm[e];
            p.add_tuple(s, std::move(t));
        }
    return p;
}

// ---------------------------------------------------------------------------
// Text formats
// ---------------------------------------------------------------------------

namespace {

struct LineReader {
    std::istream& is;
    int line_no = 0;

    bool next(std::vector<std::string>& tokens, std::string& raw) {
        std::string line;
        while (std::getline(is, line)) {
            ++line_no;
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            std::istringstream ss(line);
            tokens.clear();
            std::string tok;
            while (ss >> tok) tokens.push_back(tok);
            if (!tokens.empty()) {
                raw = line;
                return true;
            }
        }
        return false;
    }
};

int parse_int(const std::string& s, int line) {
    try {
        size_t pos = 0;
        int v = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw parse_error("expected integer, got '" + s + "'", line);
    }
}

}  // namespace

Structure parse_structure(std::istream& is) {
    LineReader rd{is};
    std::vector<std::string> tok;
    std::string raw;
    if (!rd.next(tok, raw) || tok.size() != 2 || tok[0] != "sigma-structure" || tok[1] != "v1")
        throw parse_error("expected 'sigma-structure v1' header", rd.line_no);
    Structure s;
    bool have_sig = false, have_bound = false;
    std::unordered_map<std::string, int> index;
    while (rd.next(tok, raw)) {
        if (tok[0] == "signature:") {
            // comma-separated name/arity entries
            std::string rest;
            for (size_t i = 1; i < tok.size(); ++i) rest += tok[i];
            std::istringstream ss(rest);
            std::string entry;
            while (std::getline(ss, entry, ',')) {
                if (entry.empty()) continue;
                auto slash = entry.find('/');
                if (slash == std::string::npos)
                    throw parse_error("signature entry needs name/arity: " + entry, rd.line_no);
                s.sig.symbols.emplace_back(entry.substr(0, slash),
                                           parse_int(entry.substr(slash + 1), rd.line_no));
            }
            s.rels.assign(s.sig.size(), {});
            have_sig = true;
        } else if (tok[0] == "degree-bound:") {
            if (tok.size() != 2) throw parse_error("degree-bound takes one value", rd.line_no);
            s.degree_bound = parse_int(tok[1], rd.line_no);
            have_bound = true;
        } else if (tok[0] == "elements:") {
            for (size_t i = 1; i < tok.size(); ++i) {
                if (index.count(tok[i])) throw parse_error("duplicate element " + tok[i], rd.line_no);
                index[tok[i]] = s.n();
                s.universe.push_back(tok[i]);
            }
        } else if (tok[0] == "tuple:") {
            if (!have_sig) throw parse_error("tuple before signature", rd.line_no);
            if (tok.size() < 2) throw parse_error("tuple needs a symbol", rd.line_no);
            int sym;
            try {
                sym = s.sig.index_of(tok[1]);
            } catch (const error& e) {
                throw parse_error(e.what(), rd.line_no);
            }
            if (static_cast<int>(tok.size()) - 2 != s.sig.arity(sym))
                throw parse_error("tuple arity mismatch for " + tok[1], rd.line_no);
            std::vector<int> t;
            for (size_t i = 2; i < tok.size(); ++i) {
                auto it = index.find(tok[i]);
                if (it == index.end())
                    throw parse_error("tuple references unknown element " + tok[i], rd.line_no);
                t.push_back(it->second);
            }
            s.add_tuple(sym, std::move(t));
        } else {
            throw parse_error("unrecognized directive '" + tok[0] + "'", rd.line_no);
        }
    }
    if (!have_sig) throw parse_error("missing signature", rd.line_no);
    if (!have_bound) throw parse_error("missing degree-bound", rd.line_no);
    try {
        s.validate();
    } catch (const error& e) {
        throw parse_error(e.what(), rd.line_no);
    }
    return s;
}

Structure parse_structure_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw error("cannot open " + path);
    return parse_structure(f);
}

void write_structure(std::ostream& os, const Structure& s) {
    os << "sigma-structure v1\n";
    os << "signature:";
    for (int i = 0; i < s.sig.size(); ++i)
        os << (i ? ", " : " ") << s.sig.name(i) << "/" << s.sig.arity(i);
    os << "\n";
    os << "degree-bound: " << s.degree_bound << "\n";
    os << "elements:";
    for (const auto& id : s.universe) os << " " << id;
    os << "\n";
    for (int sym = 0; sym < s.sig.size(); ++sym)
        for (const auto& t : s.rels[sym]) {
            os << "tuple: " << s.sig.name(sym);
            for (int e : t) os << " " << s.universe[e];
            os << "\n";
        }
}

Graph parse_graph(std::istream& is) {
    LineReader rd{is};
    std::vector<std::string> tok;
    std::string raw;
    if (!rd.next(tok, raw) || tok.size() != 2 || tok[0] != "graph" || tok[1] != "v1")
        throw parse_error("expected 'graph v1' header", rd.line_no);
    Graph g;
    bool have_bound = false;
    std::unordered_map<std::string, int> index;
    struct Pending {
        std::string u, v;
        bool loop;
        int line;
    };
    std::vector<Pending> pend;
    while (rd.next(tok, raw)) {
        if (tok[0] == "degree-bound:") {
            g.degree_bound = parse_int(tok[1], rd.line_no);
            have_bound = true;
        } else if (tok[0] == "vertices:") {
            for (size_t i = 1; i < tok.size(); ++i) {
                if (index.count(tok[i])) throw parse_error("duplicate vertex " + tok[i], rd.line_no);
                index[tok[i]] = g.vertex_count++;
                g.names.push_back(tok[i]);
            }
        } else if (tok[0] == "edge:") {
            if (tok.size() != 3) throw parse_error("edge takes two vertices", rd.line_no);
            pend.push_back({tok[1], tok[2], false, rd.line_no});
        } else if (tok[0] == "loop:") {
            if (tok.size() != 2) throw parse_error("loop takes one vertex", rd.line_no);
            pend.push_back({tok[1], tok[1], true, rd.line_no});
        } else {
            throw parse_error("unrecognized directive '" + tok[0] + "'", rd.line_no);
        }
    }
    if (!have_bound) throw parse_error("missing degree-bound", rd.line_no);
    g.adj.assign(g.vertex_count, {});
    g.loops.assign(g.vertex_count, 0);
    for (const auto& p : pend)
        if (p.loop) g.allow_loops = true;
    for (const auto& p : pend) {
        auto iu = index.find(p.u), iv = index.find(p.v);
        if (iu == index.end()) throw parse_error("unknown vertex " + p.u, p.line);
        if (iv == index.end()) throw parse_error("unknown vertex " + p.v, p.line);
        if (p.loop)
            g.set_loop(iu->second, true);
        else if (iu->second == iv->second)
            throw parse_error("edge endpoints coincide; use loop:", p.line);
        else
            g.add_edge(iu->second, iv->second);  // loader symmetrizes
    }
    try {
        g.validate();
    } catch (const error& e) {
        throw parse_error(e.what(), rd.line_no);
    }
    return g;
}

Graph parse_graph_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw error("cannot open " + path);
    return parse_graph(f);
}

void write_graph(std::ostream& os, const Graph& g) {
    os << "graph v1\n";
    os << "degree-bound: " << g.degree_bound << "\n";
    os << "vertices:";
    for (const auto& nm : g.names) os << " " << nm;
    os << "\n";
    for (int v = 0; v < g.n(); ++v)
        for (int u : g.adj[v])
            if (v < u) os << "edge: " << g.names[v] << " " << g.names[u] << "\n";
    for (int v = 0; v < g.n(); ++v)
        if (g.loops[v]) os << "loop: " << g.names[v] << "\n";
}

}  // namespace gsf
