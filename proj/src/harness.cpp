#include "gsf/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <deque>
#include <map>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gsf {

// ---------------------------------------------------------------------------
// Counting oracles
// ---------------------------------------------------------------------------

namespace {

void bump(CountingOracle& o, int a, int i) {
    ++o.counter;
    if (o.ceiling >= 0 && o.counter > o.ceiling)
        throw error("query ceiling exceeded (" + std::to_string(o.ceiling) + ")");
    if (o.keep_log) o.log.emplace_back(a, i);
}

}  // namespace

std::optional<std::pair<int, std::vector<int>>> CountingOracle::structure_query(int element,
                                                                                int i) {
    if (!structure) throw error("not a structure oracle");
    bump(*this, element, i);
    if (element < 0 || element >= structure->n()) throw error("unknown element");
    if (i < 1 || i > structure->degree_bound) throw error("query index out of range");
    if (incident_cache.empty()) {
        incident_cache.resize(structure->n());
        for (int sv = 0; sv < structure->sig.size(); ++sv) {
            const auto& ts = structure->rels[sv];
            for (int t = 0; t < static_cast<int>(ts.size()); ++t)
                for (int e : std::set<int>(ts[t].begin(), ts[t].end()))
                    incident_cache[e].emplace_back(sv, t);
        }
        // rels are sorted, so per-element order is already canonical
    }
    const auto& inc = incident_cache[element];
    if (i > static_cast<int>(inc.size())) return std::nullopt;
    auto [sym, tidx] = inc[i - 1];
    return std::make_pair(sym, structure->rels[sym][tidx]);
}

std::optional<int> CountingOracle::graph_query(int v, int i) {
    if (!graph) throw error("not a graph oracle");
    bump(*this, v, i);
    if (v < 0 || v >= graph->n()) throw error("unknown vertex");
    if (i < 1 || i > std::max(graph->degree_bound, 1)) throw error("query index out of range");
    // loops appear as a self entry at the sorted position
    std::vector<int> nbrs = graph->adj[v];
    if (graph->loops[v]) nbrs.insert(std::lower_bound(nbrs.begin(), nbrs.end(), v), v);
    if (i > static_cast<int>(nbrs.size())) return std::nullopt;
    return nbrs[i - 1];
}

StructureQueryFn CountingOracle::as_query_fn() {
    return [this](int element, int i) { return structure_query(element, i); };
}

// ---------------------------------------------------------------------------
// Distance search
// ---------------------------------------------------------------------------

namespace {

struct SearchState {
    long examined = 0;
    long cap;
};

// lexicographic combinations of fixed size over the candidate list
template <typename Apply>
bool search_sets(size_t count, int size, int from, std::vector<int>& picked, SearchState& st,
                 const Apply& apply) {
    if (size == 0) {
        ++st.examined;
        if (st.examined > st.cap) throw DistanceVerdict::exhausted;
        return apply(picked);
    }
    for (int c = from; c + size <= static_cast<int>(count); ++c) {
        picked.push_back(c);
        if (search_sets(count, size - 1, c + 1, picked, st, apply)) return true;
        picked.pop_back();
    }
    return false;
}

}  // namespace

DistanceResult epsilon_distance(const Structure& a,
                                const std::function<bool(const Structure&)>& member, double eps,
                                long cap) {
    DistanceResult res;
    res.budget = static_cast<long>(eps * a.degree_bound * a.n());

    std::vector<Modification> candidates;
    for (int s = 0; s < a.sig.size(); ++s)
        for (const auto& t : a.rels[s]) candidates.push_back({false, s, t});
    for (int s = 0; s < a.sig.size(); ++s) {
        int ar = a.sig.arity(s);
        std::vector<int> t(ar, 0);
        auto rec = [&](auto&& self, int pos) -> void {
            if (pos == ar) {
                if (!a.has_tuple(s, t)) candidates.push_back({true, s, t});
                return;
            }
            for (int e = 0; e < a.n(); ++e) {
                t[pos] = e;
                self(self, pos + 1);
            }
        };
        rec(rec, 0);
    }

    SearchState st{0, cap};
    auto apply = [&](const std::vector<int>& picked) {
        Structure m = a;
        for (int c : picked) {
            const Modification& mod = candidates[c];
            if (mod.insert)
                m.add_tuple(mod.sym, mod.tuple);
            else
                m.remove_tuple(mod.sym, mod.tuple);
        }
        for (int c : picked) {
            // degree-respecting only
            for (int e : std::set<int>(candidates[c].tuple.begin(), candidates[c].tuple.end()))
                if (degree_of_idx(m, e) > m.degree_bound) return false;
        }
        if (!member(m)) return false;
        for (int c : picked) res.witness.push_back(candidates[c]);
        return true;
    };

    try {
        std::vector<int> picked;
        for (int size = 0; size <= res.budget; ++size)
            if (search_sets(candidates.size(), size, 0, picked, st, apply)) {
                res.verdict = DistanceVerdict::close;
                res.examined = st.examined;
                return res;
            }
        res.verdict = DistanceVerdict::far;
    } catch (DistanceVerdict v) {
        res.verdict = v;
    }
    res.examined = st.examined;
    return res;
}

DistanceResult epsilon_distance(const Graph& g, const std::function<bool(const Graph&)>& member,
                                double eps, long cap) {
    DistanceResult res;
    res.budget = static_cast<long>(eps * g.degree_bound * g.n());

    std::vector<std::pair<int, int>> candidates;  // edge toggles
    for (int u = 0; u < g.n(); ++u)
        for (int v = u + 1; v < g.n(); ++v) candidates.emplace_back(u, v);

    SearchState st{0, cap};
    auto apply = [&](const std::vector<int>& picked) {
        Graph m = g;
        for (int c : picked) {
            auto [u, v] = candidates[c];
            if (m.has_edge(u, v))
                m.remove_edge(u, v);
            else
                m.add_edge(u, v);
        }
        for (int c : picked) {
            auto [u, v] = candidates[c];
            if (m.degree(u) > m.degree_bound || m.degree(v) > m.degree_bound) return false;
        }
        if (!member(m)) return false;
        for (int c : picked) {
            auto [u, v] = candidates[c];
            res.witness.push_back({!g.has_edge(u, v), 0, {u, v}});
        }
        return true;
    };

    try {
        std::vector<int> picked;
        for (int size = 0; size <= res.budget; ++size)
            if (search_sets(candidates.size(), size, 0, picked, st, apply)) {
                res.verdict = DistanceVerdict::close;
                res.examined = st.examined;
                return res;
            }
        res.verdict = DistanceVerdict::far;
    } catch (DistanceVerdict v) {
        res.verdict = v;
    }
    res.examined = st.examined;
    return res;
}

// ---------------------------------------------------------------------------
// Trials
// ---------------------------------------------------------------------------

namespace {

void wilson(TesterReport& r) {
    if (r.trials == 0) return;
    double n = static_cast<double>(r.trials);
    double p = static_cast<double>(r.acceptances) / n;
    const double z = 1.959963984540054;  // 95%
    double den = 1 + z * z / n;
    double center = (p + z * z / (2 * n)) / den;
    double half = z * std::sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / den;
    r.estimate = p;
    r.lo = std::max(0.0, center - half);
    r.hi = std::min(1.0, center + half);
}

template <typename X>
TesterReport run_trials_impl(const Tester& tester, const X& x, long trials, uint64_t seed,
                             long ceiling) {
    if (trials < 1) throw error("trials must be >= 1");
    TesterReport r;
    r.trials = trials;
    r.queries_per_trial.assign(trials, 0);
    std::vector<char> accepted(trials, 0);
    std::atomic<bool> failed{false};
    std::string failure;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16)
#endif
    for (long t = 0; t < trials; ++t) {
        if (failed.load(std::memory_order_relaxed)) continue;
        CountingOracle oracle(x);
        oracle.ceiling = ceiling;
        Rng rng = Rng::derive(seed, static_cast<uint64_t>(t));
        try {
            accepted[t] = tester(oracle, rng) ? 1 : 0;
            r.queries_per_trial[t] = oracle.counter;
        } catch (const std::exception& e) {
#ifdef _OPENMP
#pragma omp critical
#endif
            {
                if (!failed.exchange(true))
                    failure = "trial " + std::to_string(t) + " aborted: " + e.what();
            }
        }
    }
    if (failed.load()) throw error(failure);
    for (long t = 0; t < trials; ++t) r.acceptances += accepted[t];
    wilson(r);
    return r;
}

}  // namespace

TesterReport run_trials(const Tester& tester, const Structure& x, long trials, uint64_t seed,
                        long query_ceiling) {
    return run_trials_impl(tester, x, trials, seed, query_ceiling);
}

TesterReport run_trials(const Tester& tester, const Graph& x, long trials, uint64_t seed,
                        long query_ceiling) {
    return run_trials_impl(tester, x, trials, seed, query_ceiling);
}

Tester ball_sampling_tester(const GSFFamily& fam, int radius) {
    return [fam, radius](CountingOracle& oracle, Rng& rng) {
        if (!oracle.graph) throw error("the ball sampling tester needs a graph oracle");
        int n = oracle.universe_size();
        if (n == 0) return true;
        int start = static_cast<int>(rng.below(static_cast<uint64_t>(n)));

        // explore the ball through neighbour queries only
        std::vector<int> dist_of;  // explored vertices + distances
        std::vector<int> verts;
        std::map<int, int> where;
        verts.push_back(start);
        dist_of.push_back(0);
        where[start] = 0;
        int bound = oracle.graph ? oracle.graph->degree_bound
                                 : oracle.structure->degree_bound;
        for (size_t h = 0; h < verts.size(); ++h) {
            if (dist_of[h] == radius) continue;
            for (int i = 1; i <= bound; ++i) {
                std::optional<int> nb = oracle.graph_query(verts[h], i);
                if (!nb) break;
                if (*nb != verts[h] && !where.count(*nb)) {
                    where[*nb] = static_cast<int>(verts.size());
                    verts.push_back(*nb);
                    dist_of.push_back(dist_of[h] + 1);
                }
            }
        }
        // interior = vertices whose full neighbourhood is visible
        Graph view = Graph::empty(static_cast<int>(verts.size()), bound);
        for (size_t h = 0; h < verts.size(); ++h)
            for (int u : oracle.graph->adj[verts[h]]) {
                auto it = where.find(u);
                if (it != where.end()) view.add_edge(static_cast<int>(h), it->second);
            }
        std::vector<char> interior(verts.size(), 0);
        for (size_t h = 0; h < verts.size(); ++h) interior[h] = dist_of[h] < radius;

        for (const auto& f : fam.members) {
            bool hit = false;
            for_each_embedding(f, view, [&](const std::vector<int>& map) {
                for (int t : map)
                    if (!interior[t]) return true;  // keep searching
                hit = true;
                return false;
            });
            if (hit) return false;  // reject: a member embeds in the interior
        }
        return true;
    };
}

// ---------------------------------------------------------------------------
// Spectral diagnostics
// ---------------------------------------------------------------------------

namespace {

// cyclic Jacobi on a dense symmetric matrix; fine for the small fallback
std::vector<double> jacobi_eigenvalues(std::vector<std::vector<double>> m) {
    const int n = static_cast<int>(m.size());
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += m[i][j] * m[i][j];
        if (off < 1e-26) break;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                if (std::abs(m[p][q]) < 1e-18) continue;
                double theta = (m[q][q] - m[p][p]) / (2 * m[p][q]);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1));
                double c = 1 / std::sqrt(t * t + 1), s = t * c;
                for (int k = 0; k < n; ++k) {
                    double mkp = m[k][p], mkq = m[k][q];
                    m[k][p] = c * mkp - s * mkq;
                    m[k][q] = s * mkp + c * mkq;
                }
                for (int k = 0; k < n; ++k) {
                    double mpk = m[p][k], mqk = m[q][k];
                    m[p][k] = c * mpk - s * mqk;
                    m[q][k] = s * mpk + c * mqk;
                }
            }
    }
    std::vector<double> ev(n);
    for (int i = 0; i < n; ++i) ev[i] = m[i][i];
    return ev;
}

}  // namespace

double spectral_gap(const Graph& g) {
    const int n = g.n();
    if (n == 0) throw error("spectral gap of the empty graph");
    int k = g.degree(0);
    for (int v = 0; v < n; ++v)
        if (g.degree(v) != k) throw error("spectral gap needs a degree-regular graph");
    if (k == 0) throw error("spectral gap needs positive degree");
    if (n == 1) return 0.0;

    if (n <= 64) {
        std::vector<std::vector<double>> m(n, std::vector<double>(n, 0));
        for (int v = 0; v < n; ++v) {
            for (int u : g.adj[v]) m[v][u] = 1.0 / k;
            if (g.loops[v]) m[v][v] = 1.0 / k;
        }
        auto ev = jacobi_eigenvalues(std::move(m));
        std::vector<double> mag(ev.size());
        for (size_t i = 0; i < ev.size(); ++i) mag[i] = std::abs(ev[i]);
        std::sort(mag.rbegin(), mag.rend());
        return mag[1];
    }

    // power iteration on M^2 restricted to the complement of the constant
    // vector: the limit is lambda_2^2 regardless of sign structure
    std::vector<double> x(n), y(n), z(n);
    Rng rng(0x5eed);
    for (int v = 0; v < n; ++v)
        x[v] = static_cast<double>(rng.next() >> 11) / 9007199254740992.0 - 0.5;
    auto project = [&](std::vector<double>& w) {
        double mean = 0;
        for (double c : w) mean += c;
        mean /= n;
        for (double& c : w) c -= mean;
    };
    auto mul = [&](const std::vector<double>& in, std::vector<double>& out) {
        for (int v = 0; v < n; ++v) {
            double acc = 0;
            for (int u : g.adj[v]) acc += in[u];
            if (g.loops[v]) acc += in[v];
            out[v] = acc / k;
        }
    };
    project(x);
    double value = 0;
    for (int it = 0; it < 200000; ++it) {
        mul(x, y);
        mul(y, z);
        project(z);
        double norm = 0;
        for (double c : z) norm += c * c;
        norm = std::sqrt(norm);
        if (norm < 1e-300) return 0.0;
        for (double& c : z) c /= norm;
        double rayleigh = 0;
        mul(z, y);
        mul(y, x);  // x = M^2 z
        for (int v = 0; v < n; ++v) rayleigh += z[v] * x[v];
        if (it > 16 && std::abs(rayleigh - value) < 1e-14) {
            value = rayleigh;
            break;
        }
        value = rayleigh;
        x = z;
    }
    return std::sqrt(std::max(0.0, value));
}

// ---------------------------------------------------------------------------
// Propagation probes
// ---------------------------------------------------------------------------

ProbeReport propagation_probe(const Graph& g, const GSFFamily& fam, const std::vector<int>& b,
                              long budget, long cap) {
    ProbeReport report;
    report.covers = covers_family(g, b, fam);

    // vertices within distance 1 of B
    std::vector<char> margin(g.n(), 0);
    for (int v : b) {
        margin[v] = 1;
        for (int u : g.adj[v]) margin[u] = 1;
    }

    std::vector<std::pair<int, int>> candidates;
    for (int u = 0; u < g.n(); ++u)
        for (int v = u + 1; v < g.n(); ++v) candidates.emplace_back(u, v);

    SearchState st{0, cap};
    std::vector<int> found;
    auto apply = [&](const std::vector<int>& picked) {
        Graph m = g;
        for (int c : picked) {
            auto [u, v] = candidates[c];
            if (m.has_edge(u, v))
                m.remove_edge(u, v);
            else if (m.degree(u) < m.degree_bound && m.degree(v) < m.degree_bound)
                m.add_edge(u, v);
            else
                return false;
        }
        if (!is_family_free(m, fam)) return false;
        found = picked;
        return true;
    };
    try {
        std::vector<int> picked;
        for (long size = 0; size <= budget; ++size)
            if (search_sets(candidates.size(), static_cast<int>(size), 0, picked, st, apply)) {
                report.repair_size = size;
                report.within_margin = true;
                for (int c : found) {
                    auto [u, v] = candidates[c];
                    if (!margin[u] && !margin[v]) report.within_margin = false;
                }
                break;
            }
    } catch (DistanceVerdict) {
        // budget exhaustion is reported, not thrown
    }
    report.examined = st.examined;
    return report;
}

}  // namespace gsf
