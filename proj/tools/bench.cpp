// Benchmark: OpenMP kernels against their serial reference implementations.
// Each kernel pair is checked for identical output before timing.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "gsf/enumerate.hpp"
#include "gsf/harness.hpp"
#include "gsf/neighborhoods.hpp"
#include "gsf/reduction.hpp"
#include "gsf/zigzag.hpp"

using namespace gsf;
using Clock = std::chrono::steady_clock;

namespace {

double time_of(const std::function<void()>& fn, int reps) {
    auto t0 = Clock::now();
    for (int i = 0; i < reps; ++i) fn();
    auto t1 = Clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

void row(const std::string& name, double serial_ms, double parallel_ms, bool equal) {
    std::printf("%-34s %10.1f ms %10.1f ms %7.2fx   %s\n", name.c_str(), serial_ms, parallel_ms,
                serial_ms / parallel_ms, equal ? "outputs equal" : "OUTPUTS DIFFER");
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads: %d\n\n", omp_get_max_threads());
#else
    std::printf("serial build (OpenMP not found)\n\n");
#endif
    std::printf("%-34s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

    RotationMap base = toy_rotation_map(2);
    ZigZagModel m2 = build_canonical_model(base, 2);

    {
        auto serial = element_type_keys_serial(m2.structure, 1);
        auto parallel = element_type_keys(m2.structure, 1);
        row("element 1-type keys (273 elems)",
            time_of([&] { element_type_keys_serial(m2.structure, 1); }, 3),
            time_of([&] { element_type_keys(m2.structure, 1); }, 3), serial == parallel);
    }

    {
        Structure mut = m2.structure;
        ZigZagSignature z = zigzag_signature(2);
        mut.remove_tuple(z.l_sym(3), {272, 272});
        auto check_all_serial = [&] {
            for (ZComponent c : {ZComponent::tree, ZComponent::rotation_map, ZComponent::base,
                                 ZComponent::recursion})
                check_component_serial(mut, c, base);
        };
        auto check_all_parallel = [&] {
            for (ZComponent c : {ZComponent::tree, ZComponent::rotation_map, ZComponent::base,
                                 ZComponent::recursion})
                check_component(mut, c, base);
        };
        bool equal = true;
        for (ZComponent c : {ZComponent::tree, ZComponent::rotation_map, ZComponent::base,
                             ZComponent::recursion}) {
            auto a = check_component_serial(mut, c, base);
            auto b = check_component(mut, c, base);
            equal = equal && a.ok == b.ok && a.clause == b.clause && a.witnesses == b.witnesses;
        }
        row("formula checkers (mutant, L=2)", time_of(check_all_serial, 3),
            time_of(check_all_parallel, 3), equal);
    }

    {
        ZigZagModel m1 = build_canonical_model(base, 1);
        ReducedGraph rg = apply_reduction(m1.structure);
        int radius = 4 * m1.structure.sig.size() + 2;
        auto serial = refinement_type_keys_serial(rg.graph, radius);
        auto parallel = refinement_type_keys(rg.graph, radius);
        row("refinement keys (28k vertices)",
            time_of([&] { refinement_type_keys_serial(rg.graph, radius); }, 3),
            time_of([&] { refinement_type_keys(rg.graph, radius); }, 3), serial == parallel);
    }

    {
        GSFFamily fam;
        fam.insert(MarkedGraph{Graph::empty(1, 3), {Mark::full}});
        Rng rng(1);
        Graph g = random_graph(400, 3, rng);
        Tester tester = ball_sampling_tester(fam, 2);
        auto serial_report = [&] {
#ifdef _OPENMP
            int saved = omp_get_max_threads();
            omp_set_num_threads(1);
            run_trials(tester, g, 4000, 7);
            omp_set_num_threads(saved);
#else
            run_trials(tester, g, 4000, 7);
#endif
        };
        auto a = run_trials(tester, g, 4000, 7);
        auto b = run_trials(tester, g, 4000, 7);
        row("tester trials (4000 on n=400)", time_of(serial_report, 3),
            time_of([&] { run_trials(tester, g, 4000, 7); }, 3),
            a.acceptances == b.acceptances && a.queries_per_trial == b.queries_per_trial);
    }

    return 0;
}
