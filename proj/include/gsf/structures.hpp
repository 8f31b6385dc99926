#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "gsf/canon.hpp"

namespace gsf {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct parse_error : error {
    parse_error(const std::string& what, int line)
        : error(what + " (line " + std::to_string(line) + ")"), line(line) {}
    int line;
};

// ---------------------------------------------------------------------------
// Relational signatures and bounded-degree structures
// ---------------------------------------------------------------------------

struct Signature {
    // symbol order is fixed: it defines the tuple-answer encoding
    std::vector<std::pair<std::string, int>> symbols;  // (name, arity)

    int index_of(const std::string& name) const;
    int arity(int sym) const { return symbols[sym].second; }
    const std::string& name(int sym) const { return symbols[sym].first; }
    int size() const { return static_cast<int>(symbols.size()); }
    bool operator==(const Signature&) const = default;

    void validate() const;  // unique names, arities >= 1

    static Signature graph();  // one binary symbol "E"
};

struct TupleAnswer {
    bool bottom = true;
    std::string symbol;
    std::vector<std::string> elements;

    static TupleAnswer none() { return TupleAnswer{}; }
    bool operator==(const TupleAnswer&) const = default;
};

struct Structure {
    Signature sig;
    std::vector<std::string> universe;                 // ids, file order
    std::vector<std::vector<std::vector<int>>> rels;   // per symbol, sorted distinct tuples
    int degree_bound = 0;

    int n() const { return static_cast<int>(universe.size()); }
    int element_index(const std::string& id) const;    // throws on unknown id
    std::optional<int> find_element(const std::string& id) const;

    void add_tuple(int sym, std::vector<int> tuple);   // keeps rels sorted
    bool has_tuple(int sym, const std::vector<int>& tuple) const;
    void remove_tuple(int sym, const std::vector<int>& tuple);
    size_t tuple_count() const;

    // every tuple of every relation that contains element v, in canonical
    // order: (symbol index, then tuple lexicographically by element index)
    std::vector<std::pair<int, int>> incident_tuples(int v) const;

    void validate() const;  // arities, ids distinct, degree bound

    bool operator==(const Structure&) const = default;
};

// ---------------------------------------------------------------------------
// Graphs: the symmetric binary special case
// ---------------------------------------------------------------------------

struct Graph {
    int vertex_count = 0;
    std::vector<std::string> names;
    std::vector<std::vector<int>> adj;  // sorted, no self entries
    std::vector<char> loops;
    int degree_bound = 0;
    bool allow_loops = false;

    int n() const { return vertex_count; }
    int degree(int v) const { return static_cast<int>(adj[v].size()) + (loops[v] ? 1 : 0); }
    bool has_edge(int u, int v) const;

    static Graph empty(int n, int degree_bound, bool allow_loops = false);
    void add_edge(int u, int v);
    void remove_edge(int u, int v);
    void set_loop(int v, bool on);
    void validate() const;

    bool operator==(const Graph&) const = default;
};

// graphs as sigma_graph structures: each edge becomes two tuples, so the
// structure degree is exactly twice the graph degree
Structure to_structure(const Graph& g);
Graph graph_view(const Structure& s);  // requires symmetric single binary symbol

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

// number of tuples containing a (a tuple containing a twice counts once)
int degree_of(const Structure& a, const std::string& id);
int degree_of_idx(const Structure& a, int v);

Graph gaifman_graph(const Structure& a);

// the i-th tuple containing a under canonical order, 1 <= i <= degree bound
TupleAnswer answer_query(const Structure& a, const std::string& id, int i);

std::string canonical_key(const Structure& a);
std::string canonical_key(const Graph& g);
CanonInput to_canon_input(const Structure& a, const std::vector<int>& colors = {});

// tagged union; ids get "u0." / "u1." prefixes
Structure disjoint_union(const Structure& a, const Structure& b);

// relabel under a permutation of universe positions (testing support)
Structure permute(const Structure& a, const std::vector<int>& perm,
                  const std::vector<std::string>& new_ids = {});

// ---------------------------------------------------------------------------
// Line-oriented text formats
// ---------------------------------------------------------------------------

Structure parse_structure(std::istream& is);
Structure parse_structure_file(const std::string& path);
void write_structure(std::ostream& os, const Structure& s);

Graph parse_graph(std::istream& is);
Graph parse_graph_file(const std::string& path);
void write_graph(std::ostream& os, const Graph& g);

}  // namespace gsf
