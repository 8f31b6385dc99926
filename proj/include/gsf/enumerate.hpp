#pragma once

#include <vector>

#include "gsf/rng.hpp"
#include "gsf/structures.hpp"

namespace gsf {

// Exhaustive small-instance generators backing the desk-scale oracles.
// Everything is deduplicated by canonical key and returned in a fixed order.

// all graphs with exactly n vertices and max degree <= max_deg, up to iso
std::vector<Graph> all_graphs(int n, int max_deg);

// all graphs with 0..max_n vertices (inclusive), max degree <= max_deg
std::vector<Graph> all_graphs_up_to(int max_n, int max_deg);

// all k-regular graphs on n vertices, up to iso
std::vector<Graph> regular_graphs(int n, int k);

// random bounded-degree structure over the given signature (test corpus)
Structure random_structure(const Signature& sig, int n, int degree_bound, Rng& rng,
                           int tuple_attempts = -1);

// random graph with max degree <= d
Graph random_graph(int n, int d, Rng& rng, double edge_bias = 0.5);

}  // namespace gsf
