#pragma once

#include <string>
#include <vector>

namespace gsf {

// Canonical labeling of vertex-colored relational skeletons.
//
// Tuples are ordered (the engine handles directed relations and arity >= 1);
// isomorphisms must preserve relation names, vertex colors and tuple
// membership. Used for structures, graphs, pointed balls (center gets a
// distinguished color) and marked graphs (marks as colors).

struct CanonRelation {
    std::string name;
    int arity = 2;
    std::vector<std::vector<int>> tuples;
};

struct CanonInput {
    int n = 0;
    std::vector<int> colors;  // empty means all-zero
    std::vector<CanonRelation> relations;
};

struct CanonResult {
    std::vector<int> order;  // canonical position -> original vertex
    std::string key;         // equal iff inputs are isomorphic
};

CanonResult canonical_form(const CanonInput& in);
std::string canonical_key(const CanonInput& in);

}  // namespace gsf
