#pragma once

// shared helpers for the unit suites

#include <algorithm>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "gsf/rng.hpp"
#include "gsf/structures.hpp"

namespace gsf::testutil {

inline Graph make_graph(int n, std::vector<std::pair<int, int>> edges, int degree_bound = 0) {
    int d = degree_bound;
    if (d == 0) {
        std::vector<int> deg(n, 0);
        for (auto [u, v] : edges) {
            ++deg[u];
            ++deg[v];
        }
        for (int x : deg) d = std::max(d, x);
    }
    Graph g = Graph::empty(n, d);
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
}

inline Graph cycle(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
    return make_graph(n, e, 2);
}

inline Graph path(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return make_graph(n, e, 2);
}

inline Graph complete(int n) {
    std::vector<std::pair<int, int>> e;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) e.emplace_back(u, v);
    return make_graph(n, e, n - 1);
}

inline std::vector<int> random_permutation(int n, Rng& rng) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    for (int i = n - 1; i > 0; --i) std::swap(p[i], p[rng.range(0, i)]);
    return p;
}

// brute-force structure isomorphism over all universe bijections (oracle)
inline bool brute_force_isomorphic(const Structure& a, const Structure& b) {
    if (a.sig != b.sig || a.n() != b.n()) return false;
    std::vector<int> perm(a.n());
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (int s = 0; s < a.sig.size() && ok; ++s) {
            if (a.rels[s].size() != b.rels[s].size()) {
                ok = false;
                break;
            }
            for (const auto& t : a.rels[s]) {
                std::vector<int> m(t.size());
                for (size_t i = 0; i < t.size(); ++i) m[i] = perm[t[i]];
                if (!b.has_tuple(s, m)) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

inline std::string to_text(const Structure& s) {
    std::ostringstream os;
    write_structure(os, s);
    return os.str();
}

inline std::string to_text(const Graph& g) {
    std::ostringstream os;
    write_graph(os, g);
    return os.str();
}

}  // namespace gsf::testutil
