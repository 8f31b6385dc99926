#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gsf/neighborhoods.hpp"
#include "gsf/structures.hpp"

namespace gsf {

// Marked graphs and generalised subgraph freeness. Neighbourhoods are
// closed throughout (N1 of a vertex contains the vertex), matching the
// r-ball convention.

enum class Mark { full, semifull, partial };

const char* mark_name(Mark m);
Mark parse_mark(const std::string& name);

struct MarkedGraph {
    Graph graph;
    std::vector<Mark> marks;

    int n() const { return graph.n(); }
    void validate() const;
    bool operator==(const MarkedGraph&) const = default;
};

std::string canonical_key(const MarkedGraph& f);

struct GSFFamily {
    std::vector<MarkedGraph> members;  // deduplicated, sorted by canonical key
    std::vector<std::string> keys;     // parallel to members
    int size_bound = 0;                // max member size

    void insert(MarkedGraph f);        // keeps the family canonical
    int size() const { return static_cast<int>(members.size()); }
};

// ---------------------------------------------------------------------------
// Embeddings
// ---------------------------------------------------------------------------
//
// An embedding is an injective map f with, for every vertex v of F:
//   full:      N1_G[f(v)] = f(N1_F[v])
//   semifull:  N1_G[f(v)] restricted to the image = f(N1_F[v])
//   partial:   N1_G[f(v)] contains f(N1_F[v])

// first embedding under canonical vertex order, or nullopt
std::optional<std::vector<int>> find_embedding(const MarkedGraph& f, const Graph& g);

// re-checks the three conditions directly (test oracle support)
bool embedding_valid(const MarkedGraph& f, const Graph& g, const std::vector<int>& map);

// every embedding, in deterministic order (use the callback form to stop early)
std::vector<std::vector<int>> find_all_embeddings(const MarkedGraph& f, const Graph& g);
void for_each_embedding(const MarkedGraph& f, const Graph& g,
                        const std::function<bool(const std::vector<int>&)>& visit);

// first embedding whose image avoids the given vertex set entirely
std::optional<std::vector<int>> find_embedding_avoiding(const MarkedGraph& f, const Graph& g,
                                                        const std::vector<char>& forbidden);

bool is_family_free(const Graph& g, const GSFFamily& fam);

// ---------------------------------------------------------------------------
// k-realisations and unions
// ---------------------------------------------------------------------------

// witnesses v_1..v_k of type tau covering F within distance r; vertices
// nearer than r to a witness are full, all others semifull
bool is_k_realisation(const MarkedGraph& f, int radius, const std::string& type_key, int k);

// generate-and-filter over all degree-bounded graphs up to size_bound.
// Feasibility envelope: degree <= 3, radius <= 1, k <= 3; size_bound is
// additionally capped at k * (ball size of tau) and at the enumeration cap.
std::vector<MarkedGraph> enumerate_k_realisations(const TypeCatalog& catalog,
                                                  const std::string& type_key, int k,
                                                  int size_bound);

// all (not necessarily disjoint) unions of two marked graphs, enumerated
// over candidate graphs of at most size_cap vertices; unions larger than
// size_cap cannot embed into graphs of that order, which is the regime the
// compiled families are checked in
std::vector<MarkedGraph> union_marked_graphs(const MarkedGraph& f1, const MarkedGraph& f2,
                                             int size_cap = 7);

// ---------------------------------------------------------------------------
// 0-profile compilation
// ---------------------------------------------------------------------------

// family whose free graphs coincide with the profile's models on graphs of
// at most member_cap vertices; catalog must be exhaustive (implicit [0,0]
// bounds apply to unlisted catalog types)
GSFFamily compile_zero_profile_to_gsf(const NeighbourhoodProfile& rho, const TypeCatalog& catalog,
                                      int member_cap = 6);

// union of >= 1 profiles, composed pairwise
GSFFamily compile_union_zero_profiles(const std::vector<NeighbourhoodProfile>& rhos,
                                      const TypeCatalog& catalog, int member_cap = 6);

// pairwise family composition used by the union construction
GSFFamily compose_families(const GSFFamily& a, const GSFFamily& b, int size_cap = 7);

// ---------------------------------------------------------------------------
// Cover sets
// ---------------------------------------------------------------------------

// true iff every embedding of every member maps some vertex into b
bool covers_family(const Graph& g, const std::vector<int>& b, const GSFFamily& fam);

// ---------------------------------------------------------------------------
// Files: graph format plus mark lines; families separated by ---
// ---------------------------------------------------------------------------

MarkedGraph parse_marked_graph(std::istream& is);
void write_marked_graph(std::ostream& os, const MarkedGraph& f);

GSFFamily parse_family(std::istream& is);
GSFFamily parse_family_file(const std::string& path);
void write_family(std::ostream& os, const GSFFamily& fam);

}  // namespace gsf
