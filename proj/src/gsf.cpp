#include "gsf/gsf.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "gsf/enumerate.hpp"

namespace gsf {

const char* mark_name(Mark m) {
    switch (m) {
        case Mark::full: return "full";
        case Mark::semifull: return "semifull";
        case Mark::partial: return "partial";
    }
    return "?";
}

Mark parse_mark(const std::string& name) {
    if (name == "full") return Mark::full;
    if (name == "semifull") return Mark::semifull;
    if (name == "partial") return Mark::partial;
    throw error("unknown mark '" + name + "'");
}

void MarkedGraph::validate() const {
    graph.validate();
    if (static_cast<int>(marks.size()) != graph.n())
        throw error("marked graph: every vertex needs exactly one mark");
}

std::string canonical_key(const MarkedGraph& f) {
    std::vector<int> colors(f.n());
    for (int v = 0; v < f.n(); ++v) colors[v] = static_cast<int>(f.marks[v]) + 1;
    return canonical_key(to_canon_input(to_structure(f.graph), colors));
}

void GSFFamily::insert(MarkedGraph f) {
    std::string key = canonical_key(f);
    auto it = std::lower_bound(keys.begin(), keys.end(), key);
    if (it != keys.end() && *it == key) return;
    size_bound = std::max(size_bound, f.n());
    members.insert(members.begin() + (it - keys.begin()), std::move(f));
    keys.insert(it, std::move(key));
}

// ---------------------------------------------------------------------------
// Embedding search
// ---------------------------------------------------------------------------

namespace {

struct EmbedSearch {
    const MarkedGraph& f;
    const Graph& g;
    const std::vector<char>* forbidden = nullptr;
    std::vector<int> order;       // F vertices, most-constrained first
    std::vector<int> assign;      // F vertex -> G vertex or -1
    std::vector<char> used;       // G vertex taken
    const std::function<bool(const std::vector<int>&)>* visit;
    bool done = false;

    EmbedSearch(const MarkedGraph& f_, const Graph& g_) : f(f_), g(g_) {
        order.resize(f.n());
        std::iota(order.begin(), order.end(), 0);
        auto weight = [&](int v) {
            int w = f.marks[v] == Mark::full ? 0 : f.marks[v] == Mark::semifull ? 1 : 2;
            return std::make_tuple(w, -f.graph.degree(v), v);
        };
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return weight(a) < weight(b); });
        assign.assign(f.n(), -1);
        used.assign(g.n(), 0);
    }

    bool consistent(int v, int t) const {
        if (forbidden && (*forbidden)[t]) return false;
        int dv = f.graph.degree(v), dt = g.degree(t);
        if (f.marks[v] == Mark::full ? dt != dv : dt < dv) return false;
        for (int u = 0; u < f.n(); ++u) {
            int s = assign[u];
            if (s < 0) continue;
            bool adj_f = f.graph.has_edge(u, v);
            bool adj_g = g.has_edge(s, t);
            if (adj_f && !adj_g) return false;  // images of F-neighbours must be adjacent
            if (!adj_f && adj_g) {
                // an in-image adjacency not present in F violates exactness
                // at a full or semifull endpoint
                if (f.marks[v] != Mark::partial || f.marks[u] != Mark::partial) return false;
            }
        }
        return true;
    }

    bool full_check(const std::vector<int>& map) const {
        return embedding_valid(f, g, map);
    }

    void run(int depth) {
        if (done) return;
        if (depth == f.n()) {
            if (full_check(assign))
                if (!(*visit)(assign)) done = true;
            return;
        }
        int v = order[depth];
        for (int t = 0; t < g.n() && !done; ++t) {
            if (used[t] || !consistent(v, t)) continue;
            assign[v] = t;
            used[t] = 1;
            run(depth + 1);
            used[t] = 0;
            assign[v] = -1;
        }
    }
};

}  // namespace

bool embedding_valid(const MarkedGraph& f, const Graph& g, const std::vector<int>& map) {
    if (static_cast<int>(map.size()) != f.n()) return false;
    std::vector<char> taken(g.n(), 0);
    for (int v = 0; v < f.n(); ++v) {
        if (map[v] < 0 || map[v] >= g.n() || taken[map[v]]) return false;
        taken[map[v]] = 1;
    }
    std::vector<int> preimage(g.n(), -1);
    for (int v = 0; v < f.n(); ++v) preimage[map[v]] = v;
    for (int v = 0; v < f.n(); ++v) {
        int t = map[v];
        // f(N1_F[v]) subset of N1_G[f(v)] holds for every mark
        for (int u : f.graph.adj[v])
            if (!g.has_edge(t, map[u])) return false;
        if (f.marks[v] == Mark::partial) continue;
        // exactness within the image for semifull, globally for full
        for (int s : g.adj[t]) {
            int u = preimage[s];
            if (u < 0) {
                if (f.marks[v] == Mark::full) return false;
                continue;
            }
            if (!f.graph.has_edge(v, u)) return false;
        }
    }
    return true;
}

void for_each_embedding(const MarkedGraph& f, const Graph& g,
                        const std::function<bool(const std::vector<int>&)>& visit) {
    f.validate();
    if (f.n() > g.n()) return;
    EmbedSearch search(f, g);
    search.visit = &visit;
    search.run(0);
}

std::optional<std::vector<int>> find_embedding(const MarkedGraph& f, const Graph& g) {
    std::optional<std::vector<int>> out;
    for_each_embedding(f, g, [&](const std::vector<int>& map) {
        out = map;
        return false;
    });
    return out;
}

std::vector<std::vector<int>> find_all_embeddings(const MarkedGraph& f, const Graph& g) {
    std::vector<std::vector<int>> out;
    for_each_embedding(f, g, [&](const std::vector<int>& map) {
        out.push_back(map);
        return true;
    });
    return out;
}

std::optional<std::vector<int>> find_embedding_avoiding(const MarkedGraph& f, const Graph& g,
                                                        const std::vector<char>& forbidden) {
    f.validate();
    if (f.n() > g.n()) return std::nullopt;
    EmbedSearch search(f, g);
    search.forbidden = &forbidden;
    std::optional<std::vector<int>> out;
    std::function<bool(const std::vector<int>&)> visit = [&](const std::vector<int>& map) {
        out = map;
        return false;
    };
    search.visit = &visit;
    search.run(0);
    return out;
}

bool is_family_free(const Graph& g, const GSFFamily& fam) {
    for (const auto& f : fam.members)
        if (find_embedding(f, g)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// k-realisations
// ---------------------------------------------------------------------------

namespace {

std::vector<int> bfs_distances(const Graph& g, int src) {
    std::vector<int> dist(g.n(), -1);
    std::deque<int> queue{src};
    dist[src] = 0;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int u : g.adj[v])
            if (dist[u] < 0) {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
    }
    return dist;
}

bool realisation_with_witnesses(const MarkedGraph& f, int radius, const std::string& type_key,
                                const std::vector<int>& witnesses, bool check_marks,
                                std::vector<Mark>* derived) {
    Structure s = to_structure(f.graph);
    for (int w : witnesses)
        if (ball_key(extract_ball_idx(s, w, radius)) != type_key) return false;
    std::vector<int> nearest(f.n(), -1);
    for (int w : witnesses) {
        auto dist = bfs_distances(f.graph, w);
        for (int v = 0; v < f.n(); ++v)
            if (dist[v] >= 0 && (nearest[v] < 0 || dist[v] < nearest[v])) nearest[v] = dist[v];
    }
    for (int v = 0; v < f.n(); ++v) {
        if (nearest[v] < 0 || nearest[v] > radius) return false;  // not covered
        Mark expect = nearest[v] < radius ? Mark::full : Mark::semifull;
        if (check_marks && f.marks[v] != expect) return false;
        if (derived) (*derived)[v] = expect;
    }
    return true;
}

}  // namespace

bool is_k_realisation(const MarkedGraph& f, int radius, const std::string& type_key, int k) {
    if (k < 1 || f.n() == 0) return false;
    std::vector<int> candidates;
    Structure s = to_structure(f.graph);
    for (int v = 0; v < f.n(); ++v)
        if (ball_key(extract_ball_idx(s, v, radius)) == type_key) candidates.push_back(v);
    if (static_cast<int>(candidates.size()) < k) return false;
    std::vector<int> pick(k);
    std::function<bool(int, int)> choose = [&](int idx, int from) -> bool {
        if (idx == k)
            return realisation_with_witnesses(f, radius, type_key, pick, true, nullptr);
        for (int i = from; i < static_cast<int>(candidates.size()); ++i) {
            pick[idx] = candidates[i];
            if (choose(idx + 1, i + 1)) return true;
        }
        return false;
    };
    return choose(0, 0);
}

std::vector<MarkedGraph> enumerate_k_realisations(const TypeCatalog& catalog,
                                                  const std::string& type_key, int k,
                                                  int size_bound) {
    if (catalog.degree > 3 || catalog.radius > 1 || k > 3)
        throw error("k-realisation enumeration outside the envelope (d<=3, r<=1, k<=3)");
    auto idx = catalog.index_of(type_key);
    if (!idx) throw error("type key not in catalog");
    if (catalog.representatives.empty()) throw error("catalog lacks representatives");
    int ball_size = catalog.representatives[*idx].structure.n();
    size_bound = std::min(size_bound, k * ball_size);
    size_bound = std::min(size_bound, 7);  // enumeration cap

    std::vector<MarkedGraph> out;
    std::set<std::string> seen;
    for (int n = 1; n <= size_bound; ++n) {
        for (const Graph& g : all_graphs(n, catalog.degree)) {
            // witness candidates: vertices of the right ball type
            Structure s = to_structure(g);
            std::vector<int> candidates;
            for (int v = 0; v < n; ++v)
                if (ball_key(extract_ball_idx(s, v, catalog.radius)) == type_key)
                    candidates.push_back(v);
            if (static_cast<int>(candidates.size()) < k) continue;
            std::vector<int> pick(k);
            std::function<void(int, int)> choose = [&](int at, int from) {
                if (at == k) {
                    MarkedGraph f;
                    f.graph = g;
                    f.marks.assign(n, Mark::partial);
                    std::vector<Mark> derived(n, Mark::partial);
                    if (!realisation_with_witnesses(f, catalog.radius, type_key, pick, false,
                                                    &derived))
                        return;
                    f.marks = derived;
                    if (seen.insert(canonical_key(f)).second) out.push_back(std::move(f));
                    return;
                }
                for (int i = from; i < static_cast<int>(candidates.size()); ++i) {
                    pick[at] = candidates[i];
                    choose(at + 1, i + 1);
                }
            };
            choose(0, 0);
        }
    }
    std::sort(out.begin(), out.end(), [](const MarkedGraph& a, const MarkedGraph& b) {
        return canonical_key(a) < canonical_key(b);
    });
    return out;
}

// ---------------------------------------------------------------------------
// Unions
// ---------------------------------------------------------------------------

std::vector<MarkedGraph> union_marked_graphs(const MarkedGraph& f1, const MarkedGraph& f2,
                                             int size_cap) {
    if (f1.n() + f2.n() > 10) throw error("union enumeration envelope exceeded (|F1|+|F2| <= 10)");
    int max_n = std::min({f1.n() + f2.n(), size_cap, 8});
    std::vector<MarkedGraph> out;
    std::set<std::string> seen;
    for (int n = 1; n <= max_n; ++n) {
        for (const Graph& u : all_graphs(n, n == 1 ? 0 : n - 1)) {
            auto e1 = find_all_embeddings(f1, u);
            if (e1.empty()) continue;
            auto e2 = find_all_embeddings(f2, u);
            if (e2.empty()) continue;
            for (const auto& m1 : e1)
                for (const auto& m2 : e2) {
                    std::vector<char> covered(n, 0);
                    for (int t : m1) covered[t] = 1;
                    for (int t : m2) covered[t] = 1;
                    bool all = true;
                    for (char c : covered) all = all && c;
                    if (!all) continue;
                    // mark precedence full > semifull > partial
                    std::vector<Mark> marks(n, Mark::partial);
                    auto apply = [&](const MarkedGraph& f, const std::vector<int>& m) {
                        for (int v = 0; v < f.n(); ++v) {
                            Mark mk = f.marks[v];
                            int t = m[v];
                            if (mk == Mark::full)
                                marks[t] = Mark::full;
                            else if (mk == Mark::semifull && marks[t] != Mark::full)
                                marks[t] = Mark::semifull;
                        }
                    };
                    apply(f1, m1);
                    apply(f2, m2);
                    MarkedGraph fu{u, marks};
                    if (seen.insert(canonical_key(fu)).second) out.push_back(std::move(fu));
                }
        }
    }
    std::sort(out.begin(), out.end(), [](const MarkedGraph& a, const MarkedGraph& b) {
        return canonical_key(a) < canonical_key(b);
    });
    return out;
}

// ---------------------------------------------------------------------------
// Compilation
// ---------------------------------------------------------------------------

GSFFamily compile_zero_profile_to_gsf(const NeighbourhoodProfile& rho, const TypeCatalog& catalog,
                                      int member_cap) {
    if (!rho.is_zero_profile()) throw error("compile_zero_profile_to_gsf needs a 0-profile");
    if (!catalog.exhaustive) throw error("compilation needs an exhaustive catalog");
    struct Task {
        std::string key;
        int k;  // forbid k+1 realisations
    };
    std::vector<Task> tasks;
    for (const auto& key : catalog.keys) {
        const Interval* iv = rho.find(key);
        long hi;
        if (!iv)
            hi = 0;  // unlisted types carry the implicit [0,0] bound
        else if (iv->unbounded)
            continue;
        else
            hi = iv->hi;
        tasks.push_back({key, static_cast<int>(hi)});
    }
    std::vector<std::vector<MarkedGraph>> results(tasks.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (tasks.size() > 1)
#endif
    for (size_t t = 0; t < tasks.size(); ++t)
        results[t] = enumerate_k_realisations(catalog, tasks[t].key, tasks[t].k + 1, member_cap);

    GSFFamily fam;
    for (auto& part : results)
        for (auto& f : part) fam.insert(std::move(f));
    return fam;
}

GSFFamily compose_families(const GSFFamily& a, const GSFFamily& b, int size_cap) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < a.size(); ++i)
        for (int j = 0; j < b.size(); ++j) pairs.emplace_back(i, j);
    std::vector<std::vector<MarkedGraph>> results(pairs.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (pairs.size() > 1)
#endif
    for (size_t p = 0; p < pairs.size(); ++p)
        results[p] =
            union_marked_graphs(a.members[pairs[p].first], b.members[pairs[p].second], size_cap);
    GSFFamily fam;
    for (auto& part : results)
        for (auto& f : part) fam.insert(std::move(f));
    return fam;
}

GSFFamily compile_union_zero_profiles(const std::vector<NeighbourhoodProfile>& rhos,
                                      const TypeCatalog& catalog, int member_cap) {
    if (rhos.empty()) throw error("empty profile list");
    GSFFamily fam = compile_zero_profile_to_gsf(rhos[0], catalog, member_cap);
    for (size_t i = 1; i < rhos.size(); ++i) {
        GSFFamily next = compile_zero_profile_to_gsf(rhos[i], catalog, member_cap);
        fam = compose_families(fam, next, member_cap + 1);
    }
    return fam;
}

// ---------------------------------------------------------------------------
// Cover sets
// ---------------------------------------------------------------------------

bool covers_family(const Graph& g, const std::vector<int>& b, const GSFFamily& fam) {
    std::vector<char> in_b(g.n(), 0);
    for (int v : b) {
        if (v < 0 || v >= g.n()) throw error("cover set vertex out of range");
        in_b[v] = 1;
    }
    for (const auto& f : fam.members)
        if (find_embedding_avoiding(f, g, in_b)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Files
// ---------------------------------------------------------------------------

namespace {

MarkedGraph parse_marked_block(const std::vector<std::string>& lines, int base_line) {
    // split mark lines from the plain graph block
    std::ostringstream graph_part;
    std::vector<std::pair<std::string, std::string>> mark_lines;
    int ln = base_line;
    for (const auto& line : lines) {
        ++ln;
        std::istringstream ss(line);
        std::string head;
        ss >> head;
        if (head == "mark:") {
            std::string v, m;
            if (!(ss >> v >> m)) throw parse_error("mark takes vertex and kind", ln);
            mark_lines.emplace_back(v, m);
        } else {
            graph_part << line << "\n";
        }
    }
    std::istringstream gs(graph_part.str());
    MarkedGraph f;
    f.graph = parse_graph(gs);
    f.marks.assign(f.graph.n(), Mark::partial);
    std::vector<char> seen(f.graph.n(), 0);
    for (const auto& [v, m] : mark_lines) {
        auto it = std::find(f.graph.names.begin(), f.graph.names.end(), v);
        if (it == f.graph.names.end()) throw error("mark for unknown vertex " + v);
        int idx = static_cast<int>(it - f.graph.names.begin());
        if (seen[idx]) throw error("vertex " + v + " marked twice");
        seen[idx] = 1;
        f.marks[idx] = parse_mark(m);
    }
    for (int v = 0; v < f.graph.n(); ++v)
        if (!seen[v]) throw error("vertex " + f.graph.names[v] + " has no mark");
    return f;
}

}  // namespace

MarkedGraph parse_marked_graph(std::istream& is) {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(is, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        lines.push_back(line);
    }
    return parse_marked_block(lines, 0);
}

void write_marked_graph(std::ostream& os, const MarkedGraph& f) {
    write_graph(os, f.graph);
    for (int v = 0; v < f.n(); ++v)
        os << "mark: " << f.graph.names[v] << " " << mark_name(f.marks[v]) << "\n";
}

GSFFamily parse_family(std::istream& is) {
    GSFFamily fam;
    std::vector<std::string> block;
    std::string line;
    int base = 0, ln = 0;
    auto flush = [&]() {
        if (block.empty()) return;
        fam.insert(parse_marked_block(block, base));
        block.clear();
    };
    while (std::getline(is, line)) {
        ++ln;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        if (line.rfind("---", 0) == 0) {
            flush();
            base = ln;
            continue;
        }
        block.push_back(line);
    }
    flush();
    return fam;
}

GSFFamily parse_family_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw error("cannot open " + path);
    return parse_family(f);
}

void write_family(std::ostream& os, const GSFFamily& fam) {
    for (int i = 0; i < fam.size(); ++i) {
        if (i) os << "---\n";
        write_marked_graph(os, fam.members[i]);
    }
}

}  // namespace gsf
