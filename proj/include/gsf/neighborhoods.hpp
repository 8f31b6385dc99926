#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gsf/structures.hpp"

namespace gsf {

// ---------------------------------------------------------------------------
// r-balls and canonical r-types
// ---------------------------------------------------------------------------

struct Ball {
    Structure structure;
    std::string center;
    int radius = 0;

    int center_index() const { return structure.element_index(center); }
    void validate() const;  // everything within distance <= radius of center
};

// pointed canonical key: the center carries a distinguishing color
std::string ball_key(const Ball& b);

Ball extract_ball(const Structure& a, const std::string& center, int r);
Ball extract_ball_idx(const Structure& a, int center, int r);

enum class CatalogMode { exhaustive, observed };

struct TypeCatalog {
    Signature sig;
    int degree = 0;  // graph degree for sigma_graph catalogs
    int radius = 0;
    bool exhaustive = false;
    std::vector<std::string> keys;  // sorted, distinct
    std::vector<Ball> representatives;  // parallel to keys (may be empty if key-only)

    int size() const { return static_cast<int>(keys.size()); }
    std::optional<int> index_of(const std::string& key) const;
};

// exhaustive mode is limited to a small feasibility envelope:
//   sigma_graph with (d <= 3, r <= 1) or (d <= 2, r <= 2)
//   a single binary symbol with (d <= 2, r <= 1)
// observed mode accepts any corpus
TypeCatalog enumerate_types(const Signature& sig, int degree, int radius, CatalogMode mode,
                            const std::vector<const Structure*>& corpus = {});

// graph corpus convenience (graph degree semantics)
TypeCatalog enumerate_graph_types(int degree, int radius, CatalogMode mode,
                                  const std::vector<const Graph*>& corpus = {});

// ---------------------------------------------------------------------------
// Histogram vectors
// ---------------------------------------------------------------------------

struct HistogramVector {
    const TypeCatalog* catalog = nullptr;
    std::vector<long> counts;

    long total() const;
};

// canonical r-type key of every element; parallel when OpenMP is enabled,
// with a serial reference kept for testing
std::vector<std::string> element_type_keys(const Structure& a, int radius);
std::vector<std::string> element_type_keys_serial(const Structure& a, int radius);

// counts_i = number of elements whose r-ball has catalog type i;
// throws on an out-of-catalog type (catalog incompleteness)
HistogramVector histogram_vector(const Structure& a, const TypeCatalog& catalog);
HistogramVector histogram_vector(const Graph& g, const TypeCatalog& catalog);

// ---------------------------------------------------------------------------
// Neighbourhood profiles
// ---------------------------------------------------------------------------

struct Interval {
    long lo = 0;
    bool unbounded = true;  // [lo, inf)
    long hi = 0;

    bool contains(long v) const { return v >= lo && (unbounded || v <= hi); }
    static Interval bounded(long lo, long hi) { return {lo, false, hi}; }
    static Interval at_least(long lo) { return {lo, true, 0}; }
    bool operator==(const Interval&) const = default;
};

struct NeighbourhoodProfile {
    std::string signature_repr;  // informational header, e.g. "E/2"
    int radius = 0;
    int degree = 0;
    // sorted by key; unlisted keys are implicitly [0,0]
    std::vector<std::pair<std::string, Interval>> bounds;

    bool is_zero_profile() const;
    const Interval* find(const std::string& key) const;
    void set(const std::string& key, Interval iv);
};

std::string signature_repr(const Signature& sig);

// true iff every per-type count lies in its interval; elements whose type is
// not listed count against the implicit [0,0] bound
bool obeys_profile(const Structure& a, const NeighbourhoodProfile& rho);
bool obeys_profile(const Graph& g, const NeighbourhoodProfile& rho);

NeighbourhoodProfile parse_profile(std::istream& is);
NeighbourhoodProfile parse_profile_file(const std::string& path);
void write_profile(std::ostream& os, const NeighbourhoodProfile& rho);

// ---------------------------------------------------------------------------
// Refinement-signature type keys for large-radius profiling
// ---------------------------------------------------------------------------
//
// Exact ball canonicalization is replaced, above a size threshold, by an
// iterated neighbourhood-refinement hash truncated at the profile radius.
// The keys are isomorphism-invariant (equal on isomorphic balls), so
// histogram upper bounds checked against them remain sound; they are not
// guaranteed complete. Keys carry a "wl<radius>:" prefix so profiles built
// from them are never mixed with exact catalogs.

std::vector<std::string> refinement_type_keys(const Graph& g, int radius);
std::vector<std::string> refinement_type_keys_serial(const Graph& g, int radius);

bool is_refinement_key(const std::string& key);

}  // namespace gsf
