#include "gsf/zigzag.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gsf {

// ---------------------------------------------------------------------------
// Rotation maps
// ---------------------------------------------------------------------------

RotationMap RotationMap::blank(int vertices, int degree, int label_base, int label_depth) {
    RotationMap r;
    r.vertex_count = vertices;
    r.degree = degree;
    r.label_base = label_base;
    r.label_depth = label_depth;
    r.to_vertex.assign(static_cast<size_t>(vertices) * degree, -1);
    r.to_port.assign(static_cast<size_t>(vertices) * degree, -1);
    return r;
}

std::string RotationMap::port_label(int p) const {
    std::vector<int> digits(label_depth);
    for (int i = label_depth - 1; i >= 0; --i) {
        digits[i] = p % label_base;
        p /= label_base;
    }
    std::string out;
    for (int i = 0; i < label_depth; ++i) {
        if (i) out += ".";
        out += std::to_string(digits[i] + 1);
    }
    return out;
}

bool validate_rotation_map(const RotationMap& rot, std::string* diagnostic) {
    for (int v = 0; v < rot.vertex_count; ++v)
        for (int p = 0; p < rot.degree; ++p) {
            auto [w, q] = rot.rot(v, p);
            if (w < 0 || w >= rot.vertex_count || q < 0 || q >= rot.degree) {
                if (diagnostic)
                    *diagnostic = "entry (" + std::to_string(v) + "," + rot.port_label(p) +
                                  ") missing or out of range";
                return false;
            }
            auto [v2, p2] = rot.rot(w, q);
            if (v2 != v || p2 != p) {
                if (diagnostic)
                    *diagnostic = "involution broken at (" + std::to_string(v) + "," +
                                  rot.port_label(p) + ") -> (" + std::to_string(w) + "," +
                                  rot.port_label(q) + ")";
                return false;
            }
        }
    return true;
}

RotationMap square_rotation(const RotationMap& rot) {
    std::string diag;
    if (!validate_rotation_map(rot, &diag)) throw error("square_rotation: " + diag);
    RotationMap sq = RotationMap::blank(rot.vertex_count, rot.degree * rot.degree, rot.label_base,
                                        rot.label_depth * 2);
    for (int v = 0; v < rot.vertex_count; ++v)
        for (int p = 0; p < rot.degree; ++p)
            for (int q = 0; q < rot.degree; ++q) {
                auto [u, pa] = rot.rot(v, p);
                auto [w, qa] = rot.rot(u, q);
                // arrival pair is reversed: second-step arrival first
                sq.set(v, p * rot.degree + q, w, qa * rot.degree + pa);
            }
    std::string check;
    if (!validate_rotation_map(sq, &check)) throw error("square_rotation produced " + check);
    return sq;
}

RotationMap zigzag_level_step(const RotationMap& level, const RotationMap& base) {
    const int D = base.degree;
    const int D2 = D * D, D4 = D2 * D2;
    if (level.degree != D2) throw error("zig-zag step: level degree must be D^2");
    if (base.vertex_count != D4) throw error("zig-zag step: base must live on D^4 vertices");
    RotationMap out =
        RotationMap::blank(level.vertex_count * D4, D2, D, 2);
    for (int x = 0; x < level.vertex_count; ++x)
        for (int k = 0; k < D4; ++k)
            for (int i = 0; i < D; ++i) {
                auto [kp, ip] = base.rot(k, i);  // zig inside the cloud
                int p = kp / D2, q = kp % D2;    // square step in two level moves
                auto [y, pt] = level.rot(x, p);
                auto [z, qt] = level.rot(y, q);
                int lp = qt * D2 + pt;           // arrival square port, reversed
                for (int j = 0; j < D; ++j) {
                    auto [ell, jp] = base.rot(lp, j);  // zag in the far cloud
                    out.set(x * D4 + k, i * D + j, z * D4 + ell, jp * D + ip);
                }
            }
    std::string diag;
    if (!validate_rotation_map(out, &diag)) throw error("zig-zag step produced " + diag);
    return out;
}

RotationMap toy_rotation_map(int D) {
    if (D != 2) throw error("registry only ships the D=2 toy base map");
    // a 16-cycle: structurally a valid base map, no expansion claim
    RotationMap rot = RotationMap::blank(16, 2, 2, 1);
    for (int v = 0; v < 16; ++v) {
        rot.set(v, 0, (v + 1) % 16, 1);
        rot.set(v, 1, (v + 15) % 16, 0);
    }
    return rot;
}

RotationMap rotation_map_by_name(const std::string& name_or_path) {
    if (name_or_path == "toy" || name_or_path == "toy-d2") return toy_rotation_map(2);
    return parse_rotation_map_file(name_or_path);
}

namespace {

int parse_port_label(const std::string& tok, int degree, int line) {
    std::vector<long> comps;
    std::string cur;
    for (char c : tok) {
        if (c == '.') {
            comps.push_back(std::stol(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    comps.push_back(std::stol(cur));
    int depth = static_cast<int>(comps.size());
    int base = static_cast<int>(std::llround(std::pow(double(degree), 1.0 / depth)));
    long check = 1;
    for (int i = 0; i < depth; ++i) check *= base;
    if (check != degree) throw parse_error("port label '" + tok + "' incompatible with degree", line);
    long p = 0;
    for (long c : comps) {
        if (c < 1 || c > base) throw parse_error("port component out of range in '" + tok + "'", line);
        p = p * base + (c - 1);
    }
    return static_cast<int>(p);
}

}  // namespace

RotationMap parse_rotation_map(std::istream& is) {
    std::string line;
    int line_no = 0;
    bool header = false;
    int vertices = -1, degree = -1;
    struct Entry {
        int v, p, w, q, line;
    };
    std::vector<Entry> entries;
    int depth = 1;
    while (std::getline(is, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        std::vector<std::string> tok;
        std::string t;
        while (ss >> t) tok.push_back(t);
        if (tok.empty()) continue;
        if (!header) {
            if (tok.size() != 2 || tok[0] != "rotation-map" || tok[1] != "v1")
                throw parse_error("expected 'rotation-map v1' header", line_no);
            header = true;
            continue;
        }
        if (tok[0] == "vertices:")
            vertices = std::stoi(tok[1]);
        else if (tok[0] == "degree:")
            degree = std::stoi(tok[1]);
        else if (tok[0] == "rot:") {
            if (tok.size() != 5) throw parse_error("rot: v i w j", line_no);
            if (vertices < 0 || degree < 0)
                throw parse_error("rot before vertices/degree", line_no);
            int v = std::stoi(tok[1]);
            int p = parse_port_label(tok[2], degree, line_no);
            int w = std::stoi(tok[3]);
            int q = parse_port_label(tok[4], degree, line_no);
            depth = std::max(depth,
                             1 + static_cast<int>(std::count(tok[2].begin(), tok[2].end(), '.')));
            if (v < 0 || v >= vertices || w < 0 || w >= vertices)
                throw parse_error("vertex out of range", line_no);
            entries.push_back({v, p, w, q, line_no});
        } else {
            throw parse_error("unrecognized directive '" + tok[0] + "'", line_no);
        }
    }
    if (!header) throw parse_error("missing 'rotation-map v1' header", line_no);
    if (vertices < 0 || degree < 0) throw parse_error("missing vertices/degree", line_no);
    int base = static_cast<int>(std::llround(std::pow(double(degree), 1.0 / depth)));
    long check = 1;
    for (int i = 0; i < depth; ++i) check *= base;
    if (check != degree) {
        base = degree;
        depth = 1;
    }
    RotationMap rot = RotationMap::blank(vertices, degree, base, depth);
    for (const auto& e : entries) {
        // the loader symmetrizes: each entry implies its involution partner
        auto conflict = [&](int v, int p, int w, int q) {
            int cv = rot.to_vertex[v * degree + p];
            int cp = rot.to_port[v * degree + p];
            return cv >= 0 && (cv != w || cp != q);
        };
        if (conflict(e.v, e.p, e.w, e.q) || conflict(e.w, e.q, e.v, e.p))
            throw parse_error("rotation entry conflicts with an earlier one (involution)", e.line);
        rot.set(e.v, e.p, e.w, e.q);
        rot.set(e.w, e.q, e.v, e.p);
    }
    std::string diag;
    if (!validate_rotation_map(rot, &diag)) throw error("rotation map invalid: " + diag);
    return rot;
}

RotationMap parse_rotation_map_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw error("cannot open " + path);
    return parse_rotation_map(f);
}

void write_rotation_map(std::ostream& os, const RotationMap& rot) {
    os << "rotation-map v1\n";
    os << "vertices: " << rot.vertex_count << "\n";
    os << "degree: " << rot.degree << "\n";
    for (int v = 0; v < rot.vertex_count; ++v)
        for (int p = 0; p < rot.degree; ++p) {
            auto [w, q] = rot.rot(v, p);
            if (std::make_pair(v, p) <= std::make_pair(w, q))
                os << "rot: " << v << " " << rot.port_label(p) << " " << w << " "
                   << rot.port_label(q) << "\n";
        }
}

// ---------------------------------------------------------------------------
// Signature
// ---------------------------------------------------------------------------

ZigZagSignature zigzag_signature(int D) {
    if (D < 2 || D > 3) throw error("zig-zag signature supported for D in {2,3}");
    ZigZagSignature z;
    z.D = D;
    int d2 = z.d2(), d4 = z.d4();
    z.e_base = 0;
    for (int i = 0; i < d2; ++i)
        for (int j = 0; j < d2; ++j)
            z.sig.symbols.emplace_back("E" + std::to_string(i) + std::to_string(j), 2);
    z.f_base = z.sig.size();
    for (int k = 0; k < d4; ++k) z.sig.symbols.emplace_back("F" + std::to_string(k), 2);
    z.r_index = z.sig.size();
    z.sig.symbols.emplace_back("R", 2);
    z.l_base = z.sig.size();
    for (int k = 0; k < d4; ++k) z.sig.symbols.emplace_back("L" + std::to_string(k), 2);
    return z;
}

ZigZagSignature zigzag_signature_of(const Structure& a) {
    for (int D = 2; D <= 3; ++D) {
        ZigZagSignature z = zigzag_signature(D);
        if (z.sig == a.sig) return z;
    }
    throw error("structure is not over a zig-zag signature");
}

// ---------------------------------------------------------------------------
// Canonical models
// ---------------------------------------------------------------------------

ZigZagModel build_canonical_model(const RotationMap& base, int levels, long element_budget) {
    std::string diag;
    if (!validate_rotation_map(base, &diag)) throw error("base map invalid: " + diag);
    const int D = base.degree;
    const int D2 = D * D, D4 = D2 * D2;
    if (base.vertex_count != D4)
        throw error("base map must be D-regular on D^4 vertices");
    if (levels < 1) throw error("levels must be >= 1");

    long total = 1, level_size = 1;
    std::vector<long> level_start{0};
    for (int m = 1; m <= levels; ++m) {
        level_size *= D4;
        level_start.push_back(total);
        total += level_size;
        if (total > element_budget) throw error("element budget exceeded");
    }

    ZigZagSignature z = zigzag_signature(D);
    ZigZagModel model;
    model.D = D;
    model.levels = levels;
    Structure& s = model.structure;
    s.sig = z.sig;
    s.rels.assign(z.sig.size(), {});
    s.degree_bound = 2 * D4 + 1;

    // ids follow the tree: root "r", child k appends ".k"
    s.universe.resize(total);
    s.universe[0] = "r";
    level_size = 1;
    for (int m = 1; m <= levels; ++m) {
        level_size *= D4;
        for (long w = 0; w < level_size; ++w) {
            long parent = level_start[m - 1] + w / D4;
            int k = static_cast<int>(w % D4);
            s.universe[level_start[m] + w] = s.universe[parent] + "." + std::to_string(k);
        }
    }

    // tree edges and leaf loops
    s.add_tuple(z.r_index, {0, 0});
    level_size = 1;
    for (int m = 1; m <= levels; ++m) {
        level_size *= D4;
        for (long w = 0; w < level_size; ++w) {
            long parent = level_start[m - 1] + w / D4;
            int k = static_cast<int>(w % D4);
            int self = static_cast<int>(level_start[m] + w);
            s.add_tuple(z.f_sym(k), {static_cast<int>(parent), self});
            if (m == levels)
                for (int lk = 0; lk < D4; ++lk) s.add_tuple(z.l_sym(lk), {self, self});
        }
    }

    // root: every E self-loop
    for (int i = 0; i < D2; ++i)
        for (int j = 0; j < D2; ++j) s.add_tuple(z.e_sym(i, j), {0, 0});

    // expander levels: square of the base on the root's children, then the
    // zig-zag recursion downwards
    RotationMap level_rot = square_rotation(base);
    for (int m = 1; m <= levels; ++m) {
        long start = level_start[m];
        for (int v = 0; v < level_rot.vertex_count; ++v)
            for (int p = 0; p < level_rot.degree; ++p) {
                auto [w, q] = level_rot.rot(v, p);
                s.add_tuple(z.e_sym(p, q),
                            {static_cast<int>(start + v), static_cast<int>(start + w)});
            }
        if (m < levels) level_rot = zigzag_level_step(level_rot, base);
    }
    return model;
}

// ---------------------------------------------------------------------------
// Checkers
// ---------------------------------------------------------------------------

ZComponent parse_component(const std::string& name) {
    if (name == "tree") return ZComponent::tree;
    if (name == "tree'" || name == "tree-prime") return ZComponent::tree_prime;
    if (name == "tree~" || name == "tree-unrooted") return ZComponent::tree_unrooted;
    if (name == "rotationMap" || name == "rotation-map") return ZComponent::rotation_map;
    if (name == "base") return ZComponent::base;
    if (name == "recursion") return ZComponent::recursion;
    if (name == "zigzag") return ZComponent::zigzag;
    if (name == "zigzag'" || name == "zigzag-prime") return ZComponent::zigzag_prime;
    throw error("unknown component '" + name + "'");
}

const char* component_name(ZComponent c) {
    switch (c) {
        case ZComponent::tree: return "tree";
        case ZComponent::tree_prime: return "tree'";
        case ZComponent::tree_unrooted: return "tree~";
        case ZComponent::rotation_map: return "rotationMap";
        case ZComponent::base: return "base";
        case ZComponent::recursion: return "recursion";
        case ZComponent::zigzag: return "zigzag";
        case ZComponent::zigzag_prime: return "zigzag'";
    }
    return "?";
}

namespace {

struct ZView {
    const Structure& s;
    ZigZagSignature z;
    int n;
    std::vector<std::vector<int>> parents;                 // distinct F-parents
    std::vector<std::vector<std::pair<int, int>>> children;  // (k, child)
    std::vector<char> r_loop;
    std::vector<char> r_other;  // element occurs in a non-(root,root) R tuple slot
    std::vector<std::vector<int>> l_loops;  // colors k with L_k(v,v)
    std::vector<char> l_other;              // some L tuple joins v with another element
    std::vector<std::vector<std::array<int, 3>>> e_out;  // (out port, in port, target)

    explicit ZView(const Structure& a) : s(a), z(zigzag_signature_of(a)), n(a.n()) {
        parents.resize(n);
        children.resize(n);
        r_loop.assign(n, 0);
        r_other.assign(n, 0);
        l_loops.resize(n);
        l_other.assign(n, 0);
        e_out.resize(n);
        for (int sym = 0; sym < s.sig.size(); ++sym) {
            for (const auto& t : s.rels[sym]) {
                int x = t[0], y = t[1];
                if (z.is_f(sym)) {
                    int k = sym - z.f_base;
                    children[x].emplace_back(k, y);
                    auto& ps = parents[y];
                    if (std::find(ps.begin(), ps.end(), x) == ps.end()) ps.push_back(x);
                } else if (sym == z.r_index) {
                    if (x == y)
                        r_loop[x] = 1;
                    else {
                        r_other[x] = 1;
                        r_other[y] = 1;
                    }
                } else if (z.is_l(sym)) {
                    if (x == y)
                        l_loops[x].push_back(sym - z.l_base);
                    else {
                        l_other[x] = 1;
                        l_other[y] = 1;
                    }
                } else if (z.is_e(sym)) {
                    auto [p, q] = z.e_ports(sym);
                    e_out[x].push_back({p, q, y});
                }
            }
        }
        for (auto& lk : l_loops) {
            std::sort(lk.begin(), lk.end());
            lk.erase(std::unique(lk.begin(), lk.end()), lk.end());
        }
    }

    bool is_root(int v) const { return parents[v].empty(); }

    bool has_e(int p, int q, int x, int y) const { return s.has_tuple(z.e_sym(p, q), {x, y}); }
};

using ElementCheck = std::function<const char*(int)>;

// evaluate a per-element clause across the universe; the reported witness is
// the least element regardless of thread schedule
std::optional<std::pair<int, std::string>> scan_elements(int n, const ElementCheck& check,
                                                         bool parallel) {
    int best = n;
    const char* best_clause = nullptr;
#ifdef _OPENMP
    if (parallel) {
#pragma omp parallel
        {
            int local = n;
            const char* local_clause = nullptr;
#pragma omp for schedule(dynamic, 64)
            for (int v = 0; v < n; ++v) {
                if (v >= local) continue;
                if (const char* c = check(v)) {
                    local = v;
                    local_clause = c;
                }
            }
#pragma omp critical
            {
                if (local < best) {
                    best = local;
                    best_clause = local_clause;
                }
            }
        }
    } else
#endif
    {
        (void)parallel;
        for (int v = 0; v < n; ++v)
            if (const char* c = check(v)) {
                best = v;
                best_clause = c;
                break;
            }
    }
    if (best == n) return std::nullopt;
    return std::make_pair(best, std::string(best_clause));
}

CheckResult fail_at(const ZView& view, int v, const std::string& clause) {
    CheckResult r;
    r.ok = false;
    r.clause = clause;
    r.witnesses = {view.s.universe[v]};
    return r;
}

CheckResult check_tree(const ZView& view, ZComponent variant, bool parallel) {
    const int n = view.n;
    if (variant != ZComponent::tree_unrooted) {
        long roots = 0;
        for (int v = 0; v < n; ++v)
            if (view.is_root(v)) ++roots;
        bool bad = variant == ZComponent::tree ? roots != 1 : roots > 1;
        if (bad) {
            CheckResult r;
            r.ok = false;
            r.clause = variant == ZComponent::tree ? "tree: exactly one root required"
                                                   : "tree': at most one root allowed";
            for (int v = 0; v < n && r.witnesses.size() < 2; ++v)
                if (view.is_root(v)) r.witnesses.push_back(view.s.universe[v]);
            return r;
        }
    }
    const int D4 = view.z.d4();
    auto per_element = [&](int v) -> const char* {
        // every element is either the rooted R-loop vertex or has a unique parent
        bool root_branch = view.is_root(v) && view.r_loop[v];
        bool child_branch =
            view.parents[v].size() == 1 && !view.r_loop[v] && !view.r_other[v];
        if (!root_branch && !child_branch) return "tree: root-with-R or unique-parent";

        // leaf with all L-loops, or internal with one child per colour
        bool leaf = view.children[v].empty() &&
                    static_cast<int>(view.l_loops[v].size()) == D4 && !view.l_other[v];
        bool internal = true;
        if (!view.l_loops[v].empty() || view.l_other[v]) internal = false;
        if (internal) {
            std::vector<int> count(D4, 0);
            std::vector<int> child_of(D4, -1);
            for (auto [k, y] : view.children[v]) {
                ++count[k];
                child_of[k] = y;
            }
            for (int k = 0; k < D4 && internal; ++k) {
                if (count[k] != 1) internal = false;
                else if (child_of[k] == v) internal = false;
            }
            if (internal) {
                // a child may carry only its own colour
                std::map<int, int> colors;
                for (auto [k, y] : view.children[v]) {
                    auto it = colors.find(y);
                    if (it != colors.end() && it->second != k) internal = false;
                    colors[y] = k;
                }
            }
        }
        if (!leaf && !internal) return "tree: leaf-loops or one-child-per-colour";
        return nullptr;
    };
    auto bad = scan_elements(n, per_element, parallel);
    if (bad) return fail_at(view, bad->first, bad->second);
    return {};
}

CheckResult check_rotation_map(const ZView& view, bool parallel) {
    const int D2 = view.z.d2();
    auto per_element = [&](int v) -> const char* {
        for (const auto& [p, q, y] : view.e_out[v])
            if (!view.has_e(q, p, y, v)) return "rotationMap: involution E_{i,j} -> E_{j,i}";
        if (!view.is_root(v)) {  // the root's self-loop block is governed by base
            std::vector<int> per_port(D2, 0);
            for (const auto& [p, q, y] : view.e_out[v]) ++per_port[p];
            for (int p = 0; p < D2; ++p)
                if (per_port[p] != 1) return "rotationMap: one outgoing edge per port";
        }
        return nullptr;
    };
    auto bad = scan_elements(view.n, per_element, parallel);
    if (bad) return fail_at(view, bad->first, bad->second);
    return {};
}

CheckResult check_base(const ZView& view, const RotationMap& base, bool parallel) {
    const int D2 = view.z.d2();
    RotationMap h2 = square_rotation(base);
    auto per_element = [&](int v) -> const char* {
        if (!view.is_root(v)) return nullptr;
        std::vector<char> self(D2 * D2, 0);
        for (const auto& [p, q, y] : view.e_out[v]) {
            if (y != v) return "base: root carries no E-edge to another element";
            self[p * D2 + q] = 1;
        }
        for (int p = 0; p < D2; ++p)
            for (int q = 0; q < D2; ++q)
                if (!self[p * D2 + q]) return "base: every E self-loop at the root";
        // incoming from elsewhere
        // (outgoing covered above; an incoming edge from y!=v shows in y's list,
        //  but the clause binds the root, so check explicitly)
        for (int y = 0; y < view.n; ++y) {
            if (y == v) continue;
            for (const auto& [p, q, t] : view.e_out[y])
                if (t == v) return "base: root carries no E-edge to another element";
        }
        std::vector<std::vector<int>> child_of(view.z.d4());
        for (auto [k, y] : view.children[v]) child_of[k].push_back(y);
        for (int k = 0; k < h2.vertex_count; ++k)
            for (int p = 0; p < h2.degree; ++p) {
                auto [kp, q] = h2.rot(k, p);
                bool found = false;
                for (int y : child_of[k]) {
                    for (int yp : child_of[kp])
                        if (view.has_e(p, q, y, yp)) {
                            found = true;
                            break;
                        }
                    if (found) break;
                }
                if (!found) return "base: children must realize the squared base map";
            }
        return nullptr;
    };
    auto bad = scan_elements(view.n, per_element, parallel);
    if (bad) return fail_at(view, bad->first, bad->second);
    return {};
}

CheckResult check_recursion(const ZView& view, const RotationMap& base, bool parallel) {
    const int D = base.degree;
    const int D2 = D * D;
    auto per_element = [&](int x) -> const char* {
        if (view.is_root(x)) return nullptr;  // root levels are governed by base
        for (const auto& [i1, j1, y] : view.e_out[x])
            for (const auto& [i2, j2, zv] : view.e_out[y]) {
                if (view.is_root(zv)) continue;
                if (view.children[x].empty() && view.children[zv].empty()) continue;
                int u = i1 * D2 + i2;
                int w = j2 * D2 + j1;
                for (int ip = 0; ip < D; ++ip) {
                    auto [k, i] = base.rot(u, ip);
                    for (int j = 0; j < D; ++j) {
                        auto [ell, jp] = base.rot(w, j);
                        bool found = false;
                        for (auto [ck, cx] : view.children[x]) {
                            if (ck != k) continue;
                            for (auto [cl, cz] : view.children[zv]) {
                                if (cl != ell) continue;
                                if (view.has_e(i * D + j, jp * D + ip, cx, cz)) {
                                    found = true;
                                    break;
                                }
                            }
                            if (found) break;
                        }
                        if (!found) return "recursion: zig-zag edge missing at the children";
                    }
                }
            }
        return nullptr;
    };
    auto bad = scan_elements(view.n, per_element, parallel);
    if (bad) return fail_at(view, bad->first, bad->second);
    return {};
}

CheckResult check_impl(const Structure& a, ZComponent which, const RotationMap& base,
                       bool parallel) {
    ZView view(a);  // n == 0 leaves every universally quantified conjunct vacuous
    if (base.degree != view.z.D || base.vertex_count != view.z.d4())
        throw error("base rotation map incompatible with the structure's signature (needs " +
                    std::to_string(view.z.D) + "-regular on " + std::to_string(view.z.d4()) +
                    " vertices)");
    auto run = [&](ZComponent c) -> CheckResult {
        switch (c) {
            case ZComponent::tree:
            case ZComponent::tree_prime:
            case ZComponent::tree_unrooted:
                return check_tree(view, c, parallel);
            case ZComponent::rotation_map:
                return check_rotation_map(view, parallel);
            case ZComponent::base:
                return check_base(view, base, parallel);
            case ZComponent::recursion:
                return check_recursion(view, base, parallel);
            default:
                return {};
        }
    };
    if (which == ZComponent::zigzag || which == ZComponent::zigzag_prime) {
        ZComponent tree_kind =
            which == ZComponent::zigzag ? ZComponent::tree : ZComponent::tree_prime;
        for (ZComponent c :
             {tree_kind, ZComponent::rotation_map, ZComponent::base, ZComponent::recursion}) {
            CheckResult r = run(c);
            if (!r.ok) return r;
        }
        return {};
    }
    return run(which);
}

}  // namespace

CheckResult check_component(const Structure& a, ZComponent which, const RotationMap& base) {
    return check_impl(a, which, base, true);
}

CheckResult check_component_serial(const Structure& a, ZComponent which,
                                   const RotationMap& base) {
    return check_impl(a, which, base, false);
}

bool check_connected_F(const Structure& a) {
    if (a.n() == 0) return true;
    ZigZagSignature z = zigzag_signature_of(a);
    std::vector<std::vector<int>> adj(a.n());
    for (int sym = z.f_base; sym < z.f_base + z.d4(); ++sym)
        for (const auto& t : a.rels[sym]) {
            adj[t[0]].push_back(t[1]);
            adj[t[1]].push_back(t[0]);
        }
    std::vector<char> seen(a.n(), 0);
    std::deque<int> queue{0};
    seen[0] = 1;
    int reached = 1;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int u : adj[v])
            if (!seen[u]) {
                seen[u] = 1;
                ++reached;
                queue.push_back(u);
            }
    }
    return reached == a.n();
}

NeighbourhoodProfile root_type_profile(const Structure& model) {
    ZigZagSignature z = zigzag_signature_of(model);
    std::vector<char> has_parent(model.n(), 0);
    for (int sym = z.f_base; sym < z.f_base + z.d4(); ++sym)
        for (const auto& t : model.rels[sym]) has_parent[t[1]] = 1;
    int root = -1;
    for (int v = 0; v < model.n(); ++v)
        if (!has_parent[v]) {
            if (root >= 0) throw error("model has several roots");
            root = v;
        }
    if (root < 0) throw error("model has no root");

    auto keys = element_type_keys(model, 2);
    NeighbourhoodProfile rho;
    rho.radius = 2;
    rho.degree = model.degree_bound;
    rho.signature_repr = signature_repr(model.sig);
    for (const auto& k : keys)
        if (k != keys[root]) rho.set(k, Interval::at_least(0));
    rho.set(keys[root], Interval::bounded(0, 1));
    return rho;
}

}  // namespace gsf
