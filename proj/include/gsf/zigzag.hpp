#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gsf/neighborhoods.hpp"
#include "gsf/structures.hpp"

namespace gsf {

// ---------------------------------------------------------------------------
// Rotation maps
// ---------------------------------------------------------------------------

// Port-labeled involution encoding a regular (multi)graph: entry (v,p)
// holds (w,q) with the invariant ROT(ROT(v,p)) = (v,p). Ports are indexed
// 0..degree-1 internally; files carry mixed-radix labels (plain "3" for a
// base map, "1.2" pairs after squaring).
struct RotationMap {
    int vertex_count = 0;
    int degree = 0;
    int label_base = 0;   // labels are depth-digit numbers in this base
    int label_depth = 1;  // degree == label_base^label_depth
    std::vector<int> to_vertex;  // (v * degree + p) -> vertex
    std::vector<int> to_port;

    std::pair<int, int> rot(int v, int p) const {
        return {to_vertex[v * degree + p], to_port[v * degree + p]};
    }
    void set(int v, int p, int w, int q) {
        to_vertex[v * degree + p] = w;
        to_port[v * degree + p] = q;
    }
    std::string port_label(int p) const;

    static RotationMap blank(int vertices, int degree, int label_base, int label_depth);
};

// total and involutive; on failure the diagnostic names a violating pair
bool validate_rotation_map(const RotationMap& rot, std::string* diagnostic = nullptr);

// ROT_{H^2}: ports are pairs, walks of length two; the arrival port pair is
// reversed (first-step arrival last)
RotationMap square_rotation(const RotationMap& rot);

// one zig-zag recursion level: `level` is the current D^2-regular level
// rotation, `base` the D-regular base map on D^4 vertices; the result is
// D^2-regular on vertex_count * D^4 vertices
RotationMap zigzag_level_step(const RotationMap& level, const RotationMap& base);

// built-in registry: a structurally valid base map with no expansion claim
RotationMap toy_rotation_map(int D);
RotationMap rotation_map_by_name(const std::string& name_or_path);

RotationMap parse_rotation_map(std::istream& is);
RotationMap parse_rotation_map_file(const std::string& path);
void write_rotation_map(std::ostream& os, const RotationMap& rot);

// ---------------------------------------------------------------------------
// The zig-zag signature and canonical models
// ---------------------------------------------------------------------------

// sigma = { E_{I,J} (I,J in [D]^2), F_k (k in ([D]^2)^2), R, L_k }
struct ZigZagSignature {
    int D = 0;
    Signature sig;
    int e_base = 0, f_base = 0, r_index = 0, l_base = 0;

    int d2() const { return D * D; }
    int d4() const { return D * D * D * D; }
    int e_sym(int out_port, int in_port) const { return e_base + out_port * d2() + in_port; }
    int f_sym(int k) const { return f_base + k; }
    int l_sym(int k) const { return l_base + k; }
    bool is_e(int s) const { return s >= e_base && s < e_base + d2() * d2(); }
    bool is_f(int s) const { return s >= f_base && s < f_base + d4(); }
    bool is_l(int s) const { return s >= l_base && s < l_base + d4(); }
    std::pair<int, int> e_ports(int s) const { return {(s - e_base) / d2(), (s - e_base) % d2()}; }
};

ZigZagSignature zigzag_signature(int D);

// recognize a structure's signature; throws if it is not a zig-zag signature
ZigZagSignature zigzag_signature_of(const Structure& a);

struct ZigZagModel {
    Structure structure;
    int D = 0;
    int levels = 0;
};

// complete D^4-ary tree of the given depth: R self-loop at the root, all
// E self-loops on the root, level 1 realizing ROT_{H^2} over the root's
// children, deeper levels by the zig-zag recursion, L self-loops on leaves
ZigZagModel build_canonical_model(const RotationMap& base, int levels,
                                  long element_budget = 1000000);

// ---------------------------------------------------------------------------
// Component checkers
// ---------------------------------------------------------------------------

enum class ZComponent {
    tree,
    tree_prime,     // root-count conjunct relaxed to "at most one"
    tree_unrooted,  // root-count conjunct removed (union-closure experiments)
    rotation_map,
    base,
    recursion,
    zigzag,        // tree and rotation_map and base and recursion
    zigzag_prime,  // tree' instead of tree
};

ZComponent parse_component(const std::string& name);
const char* component_name(ZComponent c);

struct CheckResult {
    bool ok = true;
    std::string clause;                  // violated conjunct, empty when ok
    std::vector<std::string> witnesses;  // offending element(s), canonical order

    explicit operator bool() const { return ok; }
};

// direct semantic evaluation of the named conjunct; all formulas are
// 2-local, evaluated by per-element loops (parallel, with a serial
// reference kept for testing). The base rotation map parametrizes the
// base and recursion conjuncts.
CheckResult check_component(const Structure& a, ZComponent which, const RotationMap& base);
CheckResult check_component_serial(const Structure& a, ZComponent which, const RotationMap& base);

// connectivity of the F-level graph (empty structure counts as connected)
bool check_connected_F(const Structure& a);

// the radius-2 profile of the model's root type: [0,1] at the root 2-type,
// [0,inf) at every other type observed in the model, implicit [0,0] rest
NeighbourhoodProfile root_type_profile(const Structure& model);

}  // namespace gsf
