#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gsf/neighborhoods.hpp"
#include "gsf/structures.hpp"

namespace gsf {

// The gadget-based local reduction from binary relational structures to
// bounded-degree graphs. Every element grows d spines of length ell+1; the
// i-th answer of an element decides how the i-th spine is finished: a
// k-arrow towards the partner element, a k-loop, or a non-arrow.

// vertex layout: per element a, a block [a] v^1..v^ell w (per port); all
// vertex indices derive from this arithmetic
struct ReductionLayout {
    int n = 0;
    int d = 0;
    int ell = 0;

    long block() const { return 1 + static_cast<long>(d) * (ell + 1); }
    long vertex_count() const { return static_cast<long>(n) * block(); }
    long element_vertex(int a) const { return a * block(); }
    long spine_vertex(int a, int port, int k) const {  // port, k are 1-based
        return a * block() + 1 + static_cast<long>(port - 1) * (ell + 1) + (k - 1);
    }
    long pendant_vertex(int a, int port) const {
        return a * block() + 1 + static_cast<long>(port - 1) * (ell + 1) + ell;
    }
};

struct Provenance {
    enum class Kind { element, spine, pendant };
    Kind kind = Kind::element;
    int element = 0;
    int port = 0;  // 1-based, 0 for element vertices
    int k = 0;     // spine position 1..ell, 0 otherwise
};

struct ReducedGraph {
    Graph graph;
    ReductionLayout layout;
    std::vector<Provenance> provenance;  // total and injective by construction
};

// graph per the four edge groups: spines, cross-gadget wiring for matched
// tuples, loop wiring, non-arrow wiring for bottom answers.
// Requires a purely binary signature.
ReducedGraph apply_reduction(const Structure& a);

Provenance decode_vertex(const ReductionLayout& layout, long v);
std::string provenance_string(const Structure& a, const Provenance& p);

enum class GadgetKind { arrow, loop, non_arrow };

// the per-k predicates: an isomorphism of the gadget template onto the
// induced neighbourhood of its interior vertices, endpoints as stated
bool has_arrow(const Graph& g, int ell, int k, int v, int w);
bool has_loop(const Graph& g, int ell, int k, int v);
bool has_non_arrow(const Graph& g, int ell, int v);

// first-match convenience: loops are scanned before non-arrows, smaller k
// first (several predicates can hold at one vertex, e.g. one per port)
std::optional<std::pair<GadgetKind, int>> detect_gadget(const Graph& g, int ell, int v,
                                                        std::optional<int> w = std::nullopt);

// ---------------------------------------------------------------------------
// Query translation (the c2 = d+1 simulation)
// ---------------------------------------------------------------------------

// answers structure query (element, i) with (symbol, tuple) or nullopt for
// bottom; translate_query counts invocations
using StructureQueryFn =
    std::function<std::optional<std::pair<int, std::vector<int>>>(int element, int i)>;

struct TranslateResult {
    std::optional<long> neighbor;  // graph vertex, or bottom
    int structure_queries = 0;
};

// neighbour query (vertex, port) against f(A) computed from oracle answers
// alone; agrees with the materialized graph and needs at most d+1 structure
// queries (0 for element vertices when ell >= 2). Ports range over
// 1..max(d,4), the degree bound of reduced graphs away from the ell = 1
// pendant corner.
TranslateResult translate_query(const StructureQueryFn& oracle, const Signature& sig,
                                const ReductionLayout& layout, long vertex, int port);

// (c1, c2) = (2d + 2d^2 ell, d + 1)
std::pair<long, long> reduction_constants(long d, long ell);

// ---------------------------------------------------------------------------
// Lifted graph profiles
// ---------------------------------------------------------------------------

// empirical profile at radius 4*ell+2 over the reduced corpus: [0,1] at the
// image of the root type, [0,inf) at every other observed type, implicit
// [0,0] elsewhere. Corpus members are selected by their root 2-type; types
// are keyed by refinement signatures (see neighborhoods).
NeighbourhoodProfile build_graph_profile(const std::vector<const Structure*>& corpus,
                                         const std::string& root_type_key);

// sidecar file: vertex provenance lines
void write_provenance(std::ostream& os, const Structure& a, const ReducedGraph& rg);

}  // namespace gsf
