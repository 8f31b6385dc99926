#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gsf/gsf.hpp"
#include "gsf/reduction.hpp"
#include "gsf/rng.hpp"
#include "gsf/structures.hpp"

namespace gsf {

// ---------------------------------------------------------------------------
// Counting oracles
// ---------------------------------------------------------------------------

// query access with an exact invocation counter and optional log; one owner
// per trial, never shared across threads
struct CountingOracle {
    const Structure* structure = nullptr;
    const Graph* graph = nullptr;
    long counter = 0;
    long ceiling = -1;  // abort when exceeded, -1 = unlimited
    bool keep_log = false;
    std::vector<std::pair<int, int>> log;  // (element/vertex, port)
    std::vector<std::vector<std::pair<int, int>>> incident_cache;

    explicit CountingOracle(const Structure& s) : structure(&s) {}
    explicit CountingOracle(const Graph& g) : graph(&g) {}

    void reset() {
        counter = 0;
        log.clear();
    }

    // structure query: the i-th tuple containing the element
    std::optional<std::pair<int, std::vector<int>>> structure_query(int element, int i);
    // graph query: the i-th neighbour (loops appear as the vertex itself)
    std::optional<int> graph_query(int v, int i);

    int universe_size() const { return structure ? structure->n() : graph->n(); }
    StructureQueryFn as_query_fn();
};

// ---------------------------------------------------------------------------
// Distance by exact bounded search
// ---------------------------------------------------------------------------

struct Modification {
    bool insert = false;  // otherwise delete
    int sym = 0;          // relation (structures) or unused (graphs)
    std::vector<int> tuple;

    bool operator==(const Modification&) const = default;
};

enum class DistanceVerdict { close, far, exhausted };

struct DistanceResult {
    DistanceVerdict verdict = DistanceVerdict::far;
    std::vector<Modification> witness;  // smallest, lexicographically least
    long budget = 0;                    // floor(eps * d * n)
    long examined = 0;                  // candidate sets tried
};

// exact search over all modification sets up to the budget: delete any
// existing tuple or insert any degree-respecting tuple over the existing
// elements. The cap bounds the number of candidate sets examined.
DistanceResult epsilon_distance(const Structure& a,
                                const std::function<bool(const Structure&)>& member, double eps,
                                long cap = 10000000);

// graph variant: edge modifications
DistanceResult epsilon_distance(const Graph& g, const std::function<bool(const Graph&)>& member,
                                double eps, long cap = 10000000);

// ---------------------------------------------------------------------------
// Trial runner
// ---------------------------------------------------------------------------

struct TesterReport {
    long trials = 0;
    long acceptances = 0;
    std::vector<long> queries_per_trial;
    double estimate = 0;  // acceptance probability with a Wilson interval
    double lo = 0;
    double hi = 0;
};

using Tester = std::function<bool(CountingOracle&, Rng&)>;

// deterministic given the seed; per-trial query counts recorded from the
// counting oracle; trials run in parallel with per-trial oracles
TesterReport run_trials(const Tester& tester, const Structure& x, long trials, uint64_t seed,
                        long query_ceiling = 1000000);
TesterReport run_trials(const Tester& tester, const Graph& x, long trials, uint64_t seed,
                        long query_ceiling = 1000000);

// the one-sided basic test behind the pot subcommand: sample an element,
// explore its ball, reject iff a family member embeds with every image
// vertex in the explored interior (never rejects a free graph)
Tester ball_sampling_tester(const GSFFamily& fam, int radius);

// ---------------------------------------------------------------------------
// Spectral diagnostics
// ---------------------------------------------------------------------------

// second-largest absolute eigenvalue of the degree-normalized adjacency
// operator of a regular graph; dense Jacobi for n <= 64, power iteration
// with deflation above
double spectral_gap(const Graph& g);

// ---------------------------------------------------------------------------
// Propagation probes
// ---------------------------------------------------------------------------

struct ProbeReport {
    bool covers = false;
    std::optional<long> repair_size;  // smallest modification count within budget
    bool within_margin = false;       // all repairs touch N_1[B]
    long examined = 0;
};

// reports whether B covers the family and the smallest edge-modification
// count (within budget) achieving family-freeness
ProbeReport propagation_probe(const Graph& g, const GSFFamily& fam, const std::vector<int>& b,
                              long budget, long cap = 10000000);

}  // namespace gsf
