#include "gsf/neighborhoods.hpp"

#include <algorithm>
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

#include "gsf/enumerate.hpp"
#include "gsf/rng.hpp"

namespace gsf {

// ---------------------------------------------------------------------------
// Balls
// ---------------------------------------------------------------------------

void Ball::validate() const {
    structure.validate();
    Graph gaif = gaifman_graph(structure);
    int c = center_index();
    std::vector<int> dist(structure.n(), -1);
    std::deque<int> queue{c};
    dist[c] = 0;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int u : gaif.adj[v])
            if (dist[u] < 0) {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
    }
    for (int v = 0; v < structure.n(); ++v)
        if (dist[v] < 0 || dist[v] > radius)
            throw error("ball element " + structure.universe[v] + " outside radius");
}

std::string ball_key(const Ball& b) {
    std::vector<int> colors(b.structure.n(), 0);
    colors[b.center_index()] = 1;
    return canonical_key(to_canon_input(b.structure, colors));
}

Ball extract_ball_idx(const Structure& a, int center, int r) {
    if (center < 0 || center >= a.n()) throw error("unknown element for ball extraction");
    // BFS over Gaifman adjacency, built on the fly from incident tuples
    std::vector<std::vector<int>> gaif(a.n());
    for (const auto& ts : a.rels)
        for (const auto& t : ts)
            for (size_t i = 0; i < t.size(); ++i)
                for (size_t j = 0; j < t.size(); ++j)
                    if (t[i] != t[j]) gaif[t[i]].push_back(t[j]);
    std::vector<int> dist(a.n(), -1);
    std::deque<int> queue{center};
    dist[center] = 0;
    std::vector<int> members{center};
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        if (dist[v] == r) continue;
        for (int u : gaif[v])
            if (dist[u] < 0) {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
                members.push_back(u);
            }
    }
    std::sort(members.begin(), members.end());
    std::vector<int> where(a.n(), -1);
    for (size_t i = 0; i < members.size(); ++i) where[members[i]] = static_cast<int>(i);

    Ball b;
    b.center = a.universe[center];
    b.radius = r;
    b.structure.sig = a.sig;
    b.structure.degree_bound = a.degree_bound;
    b.structure.rels.assign(a.sig.size(), {});
    for (int m : members) b.structure.universe.push_back(a.universe[m]);
    for (int s = 0; s < a.sig.size(); ++s)
        for (const auto& t : a.rels[s]) {
            bool inside = true;
            for (int e : t)
                if (where[e] < 0) {
                    inside = false;
                    break;
                }
            if (!inside) continue;
            std::vector<int> mapped(t.size());
            for (size_t i = 0; i < t.size(); ++i) mapped[i] = where[t[i]];
            b.structure.add_tuple(s, std::move(mapped));
        }
    return b;
}

Ball extract_ball(const Structure& a, const std::string& center, int r) {
    return extract_ball_idx(a, a.element_index(center), r);
}

// ---------------------------------------------------------------------------
// Catalogs
// ---------------------------------------------------------------------------

std::optional<int> TypeCatalog::index_of(const std::string& key) const {
    auto it = std::lower_bound(keys.begin(), keys.end(), key);
    if (it == keys.end() || *it != key) return std::nullopt;
    return static_cast<int>(it - keys.begin());
}

namespace {

bool is_graph_signature(const Signature& sig) {
    return sig.size() == 1 && sig.arity(0) == 2 && sig.name(0) == "E";
}

void insert_type(std::map<std::string, Ball>& types, Ball b) {
    std::string key = ball_key(b);
    types.emplace(std::move(key), std::move(b));
}

// all pointed graph balls for graph degree <= d, radius r
void enumerate_graph_balls(int d, int r, std::map<std::string, Ball>& types) {
    int cap = 1;
    int frontier = 1;
    for (int i = 0; i < r; ++i) {
        frontier *= (i == 0 ? d : d - 1);
        cap += frontier;
    }
    for (int n = 1; n <= cap; ++n) {
        for (const Graph& g : all_graphs(n, d)) {
            Structure s = to_structure(g);
            for (int c = 0; c < n; ++c) {
                Ball b = extract_ball_idx(s, c, r);
                if (b.structure.n() != n) continue;  // not spanning: some vertex too far
                insert_type(types, std::move(b));
            }
        }
    }
}

// all pointed balls over one binary (possibly asymmetric) symbol
void enumerate_binary_balls(const Signature& sig, int d, int r,
                            std::map<std::string, Ball>& types) {
    int cap = r == 0 ? 1 : 1 + d + (r >= 2 ? d * std::max(0, d - 1) : 0);
    for (int n = 1; n <= cap; ++n) {
        std::vector<std::pair<int, int>> slots;
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v) slots.emplace_back(u, v);
        const int m = static_cast<int>(slots.size());
        if (m > 20) throw error("binary ball enumeration out of range");
        for (uint64_t mask = 0; mask < (uint64_t(1) << m); ++mask) {
            Structure s;
            s.sig = sig;
            s.degree_bound = d;
            s.rels.assign(1, {});
            for (int i = 0; i < n; ++i) s.universe.push_back("x" + std::to_string(i));
            bool ok = true;
            for (int b = 0; b < m && ok; ++b)
                if (mask >> b & 1) s.add_tuple(0, {slots[b].first, slots[b].second});
            for (int v = 0; v < n && ok; ++v)
                if (degree_of_idx(s, v) > d) ok = false;
            if (!ok) continue;
            for (int c = 0; c < n; ++c) {
                Ball b = extract_ball_idx(s, c, r);
                if (b.structure.n() != n) continue;
                insert_type(types, std::move(b));
            }
        }
    }
}

}  // namespace

TypeCatalog enumerate_types(const Signature& sig, int degree, int radius, CatalogMode mode,
                            const std::vector<const Structure*>& corpus) {
    TypeCatalog cat;
    cat.sig = sig;
    cat.degree = degree;
    cat.radius = radius;
    std::map<std::string, Ball> types;
    if (mode == CatalogMode::exhaustive) {
        cat.exhaustive = true;
        if (is_graph_signature(sig)) {
            bool ok = (radius <= 1 && degree <= 3) || (radius <= 2 && degree <= 2);
            if (!ok)
                throw error("exhaustive type enumeration outside feasibility envelope "
                            "(graphs: d<=3 r<=1 or d<=2 r<=2)");
            enumerate_graph_balls(degree, radius, types);
        } else if (sig.size() == 1 && sig.arity(0) == 2) {
            if (!(degree <= 2 && radius <= 1))
                throw error("exhaustive type enumeration outside feasibility envelope "
                            "(single binary symbol: d<=2 r<=1)");
            enumerate_binary_balls(sig, degree, radius, types);
        } else {
            throw error("exhaustive type enumeration unsupported for this signature");
        }
    } else {
        for (const Structure* a : corpus)
            for (int v = 0; v < a->n(); ++v)
                insert_type(types, extract_ball_idx(*a, v, radius));
    }
    for (auto& [key, ball] : types) {
        cat.keys.push_back(key);
        cat.representatives.push_back(std::move(ball));
    }
    return cat;
}

TypeCatalog enumerate_graph_types(int degree, int radius, CatalogMode mode,
                                  const std::vector<const Graph*>& corpus) {
    std::vector<Structure> owned;
    owned.reserve(corpus.size());
    for (const Graph* g : corpus) owned.push_back(to_structure(*g));
    std::vector<const Structure*> ptrs;
    for (const auto& s : owned) ptrs.push_back(&s);
    return enumerate_types(Signature::graph(), degree, radius, mode, ptrs);
}

// ---------------------------------------------------------------------------
// Histograms
// ---------------------------------------------------------------------------

long HistogramVector::total() const {
    long t = 0;
    for (long c : counts) t += c;
    return t;
}

std::vector<std::string> element_type_keys_serial(const Structure& a, int radius) {
    std::vector<std::string> keys(a.n());
    for (int v = 0; v < a.n(); ++v) keys[v] = ball_key(extract_ball_idx(a, v, radius));
    return keys;
}

std::vector<std::string> element_type_keys(const Structure& a, int radius) {
    std::vector<std::string> keys(a.n());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8) if (a.n() > 32)
#endif
    for (int v = 0; v < a.n(); ++v) keys[v] = ball_key(extract_ball_idx(a, v, radius));
    return keys;
}

HistogramVector histogram_vector(const Structure& a, const TypeCatalog& catalog) {
    HistogramVector h;
    h.catalog = &catalog;
    h.counts.assign(catalog.size(), 0);
    auto keys = element_type_keys(a, catalog.radius);
    for (int v = 0; v < a.n(); ++v) {
        auto idx = catalog.index_of(keys[v]);
        if (!idx)
            throw error("element " + a.universe[v] +
                        " has an out-of-catalog type (catalog incomplete): " + keys[v]);
        ++h.counts[*idx];
    }
    return h;
}

HistogramVector histogram_vector(const Graph& g, const TypeCatalog& catalog) {
    return histogram_vector(to_structure(g), catalog);
}

// ---------------------------------------------------------------------------
// Profiles
// ---------------------------------------------------------------------------

bool NeighbourhoodProfile::is_zero_profile() const {
    for (const auto& [key, iv] : bounds)
        if (iv.lo != 0) return false;
    return true;
}

const Interval* NeighbourhoodProfile::find(const std::string& key) const {
    auto it = std::lower_bound(bounds.begin(), bounds.end(), key,
                               [](const auto& p, const std::string& k) { return p.first < k; });
    if (it == bounds.end() || it->first != key) return nullptr;
    return &it->second;
}

void NeighbourhoodProfile::set(const std::string& key, Interval iv) {
    auto it = std::lower_bound(bounds.begin(), bounds.end(), key,
                               [](const auto& p, const std::string& k) { return p.first < k; });
    if (it != bounds.end() && it->first == key)
        it->second = iv;
    else
        bounds.insert(it, {key, iv});
}

std::string signature_repr(const Signature& sig) {
    std::string out;
    for (int i = 0; i < sig.size(); ++i) {
        if (i) out += ", ";
        out += sig.name(i) + "/" + std::to_string(sig.arity(i));
    }
    return out;
}

namespace {

bool obeys_key_counts(const std::vector<std::string>& keys, const NeighbourhoodProfile& rho) {
    std::map<std::string, long> counts;
    for (const auto& k : keys) ++counts[k];
    for (const auto& [key, iv] : rho.bounds) {
        auto it = counts.find(key);
        long c = it == counts.end() ? 0 : it->second;
        if (!iv.contains(c)) return false;
    }
    // out-of-catalog types count against the implicit [0,0] bound
    for (const auto& [key, c] : counts)
        if (!rho.find(key)) return false;
    return true;
}

}  // namespace

bool obeys_profile(const Structure& a, const NeighbourhoodProfile& rho) {
    if (!rho.bounds.empty() && is_refinement_key(rho.bounds.front().first))
        return obeys_key_counts(refinement_type_keys(graph_view(a), rho.radius), rho);
    return obeys_key_counts(element_type_keys(a, rho.radius), rho);
}

bool obeys_profile(const Graph& g, const NeighbourhoodProfile& rho) {
    if (!rho.bounds.empty() && is_refinement_key(rho.bounds.front().first))
        return obeys_key_counts(refinement_type_keys(g, rho.radius), rho);
    return obeys_profile(to_structure(g), rho);
}

NeighbourhoodProfile parse_profile(std::istream& is) {
    NeighbourhoodProfile rho;
    std::string line;
    int line_no = 0;
    bool header = false;
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
            if (tok.size() != 2 || tok[0] != "profile" || tok[1] != "v1")
                throw parse_error("expected 'profile v1' header", line_no);
            header = true;
            continue;
        }
        if (tok[0] == "radius:")
            rho.radius = std::stoi(tok[1]);
        else if (tok[0] == "degree:")
            rho.degree = std::stoi(tok[1]);
        else if (tok[0] == "signature:") {
            std::string rest;
            for (size_t i = 1; i < tok.size(); ++i) {
                if (i > 1) rest += " ";
                rest += tok[i];
            }
            rho.signature_repr = rest;
        } else if (tok[0] == "bound:") {
            if (tok.size() != 3) throw parse_error("bound takes key and interval", line_no);
            const std::string& iv = tok[2];
            if (iv.size() < 5 || iv.front() != '[' || iv.back() != ']')
                throw parse_error("malformed interval " + iv, line_no);
            auto comma = iv.find(',');
            if (comma == std::string::npos) throw parse_error("malformed interval " + iv, line_no);
            long lo = std::stol(iv.substr(1, comma - 1));
            std::string hi = iv.substr(comma + 1, iv.size() - comma - 2);
            if (hi == "inf")
                rho.set(tok[1], Interval::at_least(lo));
            else
                rho.set(tok[1], Interval::bounded(lo, std::stol(hi)));
        } else {
            throw parse_error("unrecognized directive '" + tok[0] + "'", line_no);
        }
    }
    if (!header) throw parse_error("missing 'profile v1' header", line_no);
    for (const auto& [key, iv] : rho.bounds)
        if (!iv.unbounded && iv.lo > iv.hi)
            throw error("profile interval with lo > hi at " + key);
    return rho;
}

NeighbourhoodProfile parse_profile_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw error("cannot open " + path);
    return parse_profile(f);
}

void write_profile(std::ostream& os, const NeighbourhoodProfile& rho) {
    os << "profile v1\n";
    os << "radius: " << rho.radius << "\n";
    os << "degree: " << rho.degree << "\n";
    os << "signature: " << rho.signature_repr << "\n";
    for (const auto& [key, iv] : rho.bounds) {
        os << "bound: " << key << " [" << iv.lo << ",";
        if (iv.unbounded)
            os << "inf";
        else
            os << iv.hi;
        os << "]\n";
    }
}

// ---------------------------------------------------------------------------
// Refinement-signature keys
// ---------------------------------------------------------------------------

namespace {

struct Sig128 {
    uint64_t a = 0x243f6a8885a308d3ULL;
    uint64_t b = 0x13198a2e03707344ULL;
    void mix(uint64_t v) {
        a = hash_mix(a, v);
        b = hash_mix(b, v ^ 0x452821e638d01377ULL);
    }
};

std::vector<std::string> refinement_keys_impl(const Graph& g, int radius, bool parallel) {
    const int n = g.n();
    std::vector<std::pair<uint64_t, uint64_t>> cur(n), next(n);
    for (int v = 0; v < n; ++v) {
        Sig128 s;
        s.mix(static_cast<uint64_t>(g.degree(v)));
        s.mix(g.loops[v] ? 2 : 1);
        cur[v] = {s.a, s.b};
    }
    std::vector<uint64_t> scratch;
    for (int round = 0; round < radius; ++round) {
        auto body = [&](int v, std::vector<uint64_t>& buf) {
            buf.clear();
            for (int u : g.adj[v]) buf.push_back(cur[u].first ^ (cur[u].second << 1 | cur[u].second >> 63));
            if (g.loops[v]) buf.push_back(cur[v].first ^ 0x9e3779b97f4a7c15ULL);
            std::sort(buf.begin(), buf.end());
            Sig128 s;
            s.a = cur[v].first;
            s.b = cur[v].second;
            s.mix(0x6b54a1c3u);
            for (uint64_t h : buf) s.mix(h);
            next[v] = {s.a, s.b};
        };
#ifdef _OPENMP
        if (parallel) {
#pragma omp parallel
            {
                std::vector<uint64_t> buf;
#pragma omp for schedule(static)
                for (int v = 0; v < n; ++v) body(v, buf);
            }
        } else
#endif
        {
            (void)parallel;
            for (int v = 0; v < n; ++v) body(v, scratch);
        }
        cur.swap(next);
    }
    std::vector<std::string> keys(n);
    char buf[64];
    for (int v = 0; v < n; ++v) {
        std::snprintf(buf, sizeof buf, "wl%d:%016llx%016llx", radius,
                      static_cast<unsigned long long>(cur[v].first),
                      static_cast<unsigned long long>(cur[v].second));
        keys[v] = buf;
    }
    return keys;
}

}  // namespace

std::vector<std::string> refinement_type_keys(const Graph& g, int radius) {
    return refinement_keys_impl(g, radius, true);
}

std::vector<std::string> refinement_type_keys_serial(const Graph& g, int radius) {
    return refinement_keys_impl(g, radius, false);
}

bool is_refinement_key(const std::string& key) {
    return key.size() > 2 && key[0] == 'w' && key[1] == 'l';
}

}  // namespace gsf
