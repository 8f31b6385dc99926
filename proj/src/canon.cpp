#include "gsf/canon.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "gsf/rng.hpp"

namespace gsf {

namespace {

using Sig = std::pair<uint64_t, uint64_t>;  // 128-bit refinement signature

struct Incidence {
    int rel;
    int tuple;
    int pos;
};

struct Engine {
    const CanonInput& in;
    int n;
    std::vector<std::vector<Incidence>> inc;

    std::string best_key;
    bool have_best = false;

    // discovered automorphisms, as full vertex permutations
    std::vector<std::vector<int>> autos;
    std::vector<int> best_order;

    explicit Engine(const CanonInput& input) : in(input), n(input.n), inc(input.n) {
        for (int r = 0; r < static_cast<int>(in.relations.size()); ++r) {
            const auto& rel = in.relations[r];
            for (int t = 0; t < static_cast<int>(rel.tuples.size()); ++t) {
                const auto& tup = rel.tuples[t];
                for (int p = 0; p < static_cast<int>(tup.size()); ++p) {
                    int v = tup[p];
                    if (v < 0 || v >= n) throw std::invalid_argument("canon: tuple index out of range");
                    inc[v].push_back({r, t, p});
                }
            }
        }
    }

    int initial_color(int v) const {
        return in.colors.empty() ? 0 : in.colors[v];
    }

    // One refinement round: new color of v hashes its color plus the colors
    // seen through every tuple it occurs in. Colors are re-ranked by sorted
    // signature so the result is isomorphism-invariant.
    static Sig mix_sig(Sig a, uint64_t v) {
        a.first = hash_mix(a.first, v);
        a.second = hash_mix(a.second, v ^ 0xabcdef0123456789ULL);
        return a;
    }

    int refine(std::vector<int>& col) const {
        int classes = rank_colors(col);
        for (int round = 0; round < n + 2; ++round) {
            std::vector<Sig> sig(n, {0x12345678, 0x87654321});
            for (int v = 0; v < n; ++v) {
                sig[v] = mix_sig(sig[v], static_cast<uint64_t>(col[v]) + 1);
                std::vector<uint64_t> parts;
                parts.reserve(inc[v].size());
                for (const auto& ic : inc[v]) {
                    const auto& tup = in.relations[ic.rel].tuples[ic.tuple];
                    uint64_t h = hash_mix(0x5bd1e995, static_cast<uint64_t>(ic.rel) * 131 + ic.pos);
                    for (int u : tup) h = hash_mix(h, static_cast<uint64_t>(col[u]) + 1);
                    parts.push_back(h);
                }
                std::sort(parts.begin(), parts.end());
                for (uint64_t p : parts) sig[v] = mix_sig(sig[v], p);
            }
            std::vector<int> order(n);
            std::iota(order.begin(), order.end(), 0);
            std::sort(order.begin(), order.end(), [&](int a, int b) {
                if (col[a] != col[b]) return col[a] < col[b];
                return sig[a] < sig[b];
            });
            std::vector<int> next(n);
            int c = 0;
            for (int i = 0; i < n; ++i) {
                if (i > 0 && (col[order[i]] != col[order[i - 1]] || sig[order[i]] != sig[order[i - 1]])) ++c;
                next[order[i]] = c;
            }
            int nc = c + 1;
            if (nc == classes) {
                col = next;
                break;
            }
            col = next;
            classes = nc;
            if (classes == n) break;
        }
        return classes;
    }

    static int rank_colors(std::vector<int>& col) {
        std::vector<int> sorted(col);
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        for (int& c : col)
            c = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), c) - sorted.begin());
        return static_cast<int>(sorted.size());
    }

    std::string serialize(const std::vector<int>& col) const {
        // col is discrete here: col[v] = canonical position of v
        std::vector<int> pos(n);
        for (int v = 0; v < n; ++v) pos[v] = col[v];
        std::string out = "n" + std::to_string(n);
        bool colored = false;
        for (int v = 0; v < n; ++v)
            if (initial_color(v) != 0) colored = true;
        if (colored) {
            std::vector<int> c(n);
            for (int v = 0; v < n; ++v) c[pos[v]] = initial_color(v);
            out += "|c";
            for (int i = 0; i < n; ++i) {
                if (i) out += ",";
                out += std::to_string(c[i]);
            }
        }
        // relations in name order, empty ones skipped
        std::vector<int> rel_order(in.relations.size());
        std::iota(rel_order.begin(), rel_order.end(), 0);
        std::sort(rel_order.begin(), rel_order.end(), [&](int a, int b) {
            return in.relations[a].name < in.relations[b].name;
        });
        for (int r : rel_order) {
            const auto& rel = in.relations[r];
            if (rel.tuples.empty()) continue;
            std::vector<std::vector<int>> mapped;
            mapped.reserve(rel.tuples.size());
            for (const auto& tup : rel.tuples) {
                std::vector<int> m(tup.size());
                for (size_t i = 0; i < tup.size(); ++i) m[i] = pos[tup[i]];
                mapped.push_back(std::move(m));
            }
            std::sort(mapped.begin(), mapped.end());
            mapped.erase(std::unique(mapped.begin(), mapped.end()), mapped.end());
            out += "|" + rel.name + ":";
            for (size_t t = 0; t < mapped.size(); ++t) {
                if (t) out += ",";
                for (size_t i = 0; i < mapped[t].size(); ++i) {
                    if (i) out += ".";
                    out += std::to_string(mapped[t][i]);
                }
            }
        }
        return out;
    }

    void record_automorphism(const std::vector<int>& col) {
        // both col and the best leaf serialize identically; the map
        // best_vertex_at_position -> this_vertex_at_position is an automorphism
        if (autos.size() >= 64) return;
        std::vector<int> here(n);
        for (int v = 0; v < n; ++v) here[col[v]] = v;
        std::vector<int> g(n);
        for (int i = 0; i < n; ++i) g[best_order[i]] = here[i];
        autos.push_back(std::move(g));
    }

    void search(std::vector<int> col, std::vector<int>& individualized) {
        int classes = refine(col);
        if (classes == n) {
            std::string key = serialize(col);
            if (!have_best || key < best_key) {
                best_key = key;
                have_best = true;
                best_order.assign(n, 0);
                for (int v = 0; v < n; ++v) best_order[col[v]] = v;
            } else if (key == best_key) {
                record_automorphism(col);
            }
            return;
        }
        // first non-singleton cell in color order
        int target = -1;
        {
            std::vector<int> count(classes, 0);
            for (int v = 0; v < n; ++v) count[col[v]]++;
            for (int c = 0; c < classes; ++c)
                if (count[c] > 1) {
                    target = c;
                    break;
                }
        }
        std::vector<int> cell;
        for (int v = 0; v < n; ++v)
            if (col[v] == target) cell.push_back(v);

        // orbit pruning: skip candidates equivalent to an already-tried one
        // under automorphisms that fix every individualized vertex so far
        std::vector<int> uf(n);
        std::iota(uf.begin(), uf.end(), 0);
        auto find = [&](int x) {
            while (uf[x] != x) x = uf[x] = uf[uf[x]];
            return x;
        };
        auto rebuild_orbits = [&]() {
            std::iota(uf.begin(), uf.end(), 0);
            for (const auto& g : autos) {
                bool fixes = true;
                for (int w : individualized)
                    if (g[w] != w) {
                        fixes = false;
                        break;
                    }
                if (!fixes) continue;
                for (int v = 0; v < n; ++v) {
                    int a = find(v), b = find(g[v]);
                    if (a != b) uf[a] = b;
                }
            }
        };

        std::vector<int> tried;
        for (int v : cell) {
            rebuild_orbits();
            bool skip = false;
            for (int u : tried)
                if (find(u) == find(v)) {
                    skip = true;
                    break;
                }
            if (skip) continue;
            tried.push_back(v);
            std::vector<int> child(col);
            for (int& c : child) c *= 2;
            child[v] -= 1;
            individualized.push_back(v);
            search(std::move(child), individualized);
            individualized.pop_back();
        }
    }
};

}  // namespace

CanonResult canonical_form(const CanonInput& in) {
    if (in.n == 0) {
        CanonResult r;
        r.key = "n0";
        return r;
    }
    Engine eng(in);
    std::vector<int> col(in.n);
    for (int v = 0; v < in.n; ++v) col[v] = eng.initial_color(v);
    Engine::rank_colors(col);
    std::vector<int> individualized;
    eng.search(std::move(col), individualized);
    CanonResult r;
    r.key = eng.best_key;
    r.order = eng.best_order;
    return r;
}

std::string canonical_key(const CanonInput& in) {
    return canonical_form(in).key;
}

}  // namespace gsf
