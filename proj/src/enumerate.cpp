#include "gsf/enumerate.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <string>

namespace gsf {

namespace {

// isomorph-free generation by vertex extension: every n-vertex graph arises
// from an (n-1)-vertex graph by attaching one vertex, so extending every
// smaller representative with every feasible neighbour set is complete
const std::vector<Graph>& cached_graphs(int n, int max_deg) {
    static std::map<std::pair<int, int>, std::vector<Graph>> cache;
    static std::recursive_mutex mtx;
    std::lock_guard<std::recursive_mutex> lock(mtx);
    auto key = std::make_pair(n, max_deg);
    auto hit = cache.find(key);
    if (hit != cache.end()) return hit->second;

    std::vector<Graph> out;
    if (n == 0) {
        out.push_back(Graph::empty(0, max_deg));
    } else {
        if (n > 8) throw error("exhaustive graph enumeration capped at 8 vertices");
        const auto& smaller = cached_graphs(n - 1, max_deg);
        std::set<std::string> seen;
        for (const Graph& h : smaller) {
            for (uint64_t mask = 0; mask < (uint64_t(1) << (n - 1)); ++mask) {
                if (__builtin_popcountll(mask) > max_deg) continue;
                bool ok = true;
                for (int v = 0; v < n - 1 && ok; ++v)
                    if (mask >> v & 1)
                        if (h.degree(v) + 1 > max_deg) ok = false;
                if (!ok) continue;
                Graph g = Graph::empty(n, max_deg);
                for (int v = 0; v < n - 1; ++v) {
                    for (int u : h.adj[v])
                        if (v < u) g.add_edge(v, u);
                    if (mask >> v & 1) g.add_edge(v, n - 1);
                }
                if (seen.insert(canonical_key(g)).second) out.push_back(std::move(g));
            }
        }
    }
    return cache.emplace(key, std::move(out)).first->second;
}

}  // namespace

std::vector<Graph> all_graphs(int n, int max_deg) {
    if (n < 0) throw error("negative vertex count");
    return cached_graphs(n, max_deg);
}

std::vector<Graph> all_graphs_up_to(int max_n, int max_deg) {
    std::vector<Graph> out;
    for (int n = 0; n <= max_n; ++n) {
        auto part = all_graphs(n, max_deg);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

namespace {

// backtracking over the lexicographic pair order with degree feasibility
void regular_rec(int n, int k, int pair_idx, const std::vector<std::pair<int, int>>& pairs,
                 std::vector<int>& deg, Graph& g, std::set<std::string>& seen,
                 std::vector<Graph>& out) {
    if (pair_idx == static_cast<int>(pairs.size())) {
        for (int v = 0; v < n; ++v)
            if (deg[v] != k) return;
        if (seen.insert(canonical_key(g)).second) out.push_back(g);
        return;
    }
    auto [u, v] = pairs[pair_idx];
    if (v == u + 1) {
        // entering block u: vertices before u see no further pairs
        for (int w = 0; w < u; ++w)
            if (deg[w] != k) return;
    }
    if (deg[u] + (n - v) < k) return;  // u cannot reach k even taking the rest

    regular_rec(n, k, pair_idx + 1, pairs, deg, g, seen, out);
    if (deg[u] < k && deg[v] < k) {
        ++deg[u];
        ++deg[v];
        g.add_edge(u, v);
        regular_rec(n, k, pair_idx + 1, pairs, deg, g, seen, out);
        g.remove_edge(u, v);
        --deg[u];
        --deg[v];
    }
}

}  // namespace

std::vector<Graph> regular_graphs(int n, int k) {
    std::vector<Graph> out;
    if (n <= 0 || k < 0 || k >= n) return out;
    if ((static_cast<long long>(n) * k) % 2 != 0) return out;
    if (n > 8) throw error("regular graph enumeration capped at 8 vertices");
    std::vector<std::pair<int, int>> pairs;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
    std::vector<int> deg(n, 0);
    Graph g = Graph::empty(n, k);
    std::set<std::string> seen;
    regular_rec(n, k, 0, pairs, deg, g, seen, out);
    return out;
}

Structure random_structure(const Signature& sig, int n, int degree_bound, Rng& rng,
                           int tuple_attempts) {
    Structure s;
    s.sig = sig;
    s.degree_bound = degree_bound;
    s.rels.assign(sig.size(), {});
    for (int i = 0; i < n; ++i) s.universe.push_back("e" + std::to_string(i));
    if (n == 0) return s;
    if (tuple_attempts < 0) tuple_attempts = 2 * n * degree_bound;
    std::vector<int> deg(n, 0);
    for (int a = 0; a < tuple_attempts; ++a) {
        int sym = rng.range(0, sig.size() - 1);
        std::vector<int> t(sig.arity(sym));
        for (int& e : t) e = rng.range(0, n - 1);
        if (s.has_tuple(sym, t)) continue;
        std::set<int> members(t.begin(), t.end());
        bool ok = true;
        for (int e : members)
            if (deg[e] + 1 > degree_bound) ok = false;
        if (!ok) continue;
        for (int e : members) ++deg[e];
        s.add_tuple(sym, std::move(t));
    }
    return s;
}

Graph random_graph(int n, int d, Rng& rng, double edge_bias) {
    Graph g = Graph::empty(n, d);
    if (n < 2) return g;
    std::vector<std::pair<int, int>> pairs;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
    // fixed-order pass with rejection keeps degrees within bound
    for (auto [u, v] : pairs) {
        if (!rng.chance(edge_bias)) continue;
        if (g.degree(u) < d && g.degree(v) < d) g.add_edge(u, v);
    }
    return g;
}

}  // namespace gsf
