#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <sstream>

#include "gsf/enumerate.hpp"
#include "gsf/gsf.hpp"
#include "test_util.hpp"

using namespace gsf;
using namespace gsf::testutil;

namespace {

MarkedGraph marked(const Graph& g, std::vector<Mark> marks) {
    return MarkedGraph{g, std::move(marks)};
}

MarkedGraph single_vertex(Mark m) {
    return marked(make_graph(1, {}, 2), {m});
}

// exhaustive embedding oracle over all injective maps
bool brute_force_embeddable(const MarkedGraph& f, const Graph& g) {
    if (f.n() > g.n()) return false;
    std::vector<int> targets(g.n());
    std::iota(targets.begin(), targets.end(), 0);
    std::vector<int> pick(f.n(), -1);
    std::vector<char> used(g.n(), 0);
    std::function<bool(int)> rec = [&](int v) -> bool {
        if (v == f.n()) return embedding_valid(f, g, pick);
        for (int t = 0; t < g.n(); ++t) {
            if (used[t]) continue;
            used[t] = 1;
            pick[v] = t;
            if (rec(v + 1)) {
                used[t] = 0;
                return true;
            }
            used[t] = 0;
        }
        return false;
    };
    return rec(0);
}

std::string graph_type_key(const Graph& g, int v, int r) {
    return ball_key(extract_ball_idx(to_structure(g), v, r));
}

NeighbourhoodProfile random_zero_profile(const TypeCatalog& cat, Rng& rng) {
    NeighbourhoodProfile rho;
    rho.radius = cat.radius;
    rho.degree = cat.degree;
    rho.signature_repr = signature_repr(cat.sig);
    for (const auto& key : cat.keys) {
        if (rng.chance(0.6))
            rho.set(key, Interval::at_least(0));
        else
            rho.set(key, Interval::bounded(0, rng.range(0, 2)));
    }
    return rho;
}

}  // namespace

TEST_CASE("find_embedding basics") {
    Graph g = path(3);

    // one partial vertex embeds into anything nonempty
    CHECK(find_embedding(single_vertex(Mark::partial), g));
    CHECK(!find_embedding(single_vertex(Mark::partial), Graph::empty(0, 2)));

    // full-partial edge embeds iff some vertex has degree exactly 1
    MarkedGraph pendant = marked(make_graph(2, {{0, 1}}, 2), {Mark::full, Mark::partial});
    CHECK(find_embedding(pendant, path(3)));
    CHECK(!find_embedding(pendant, cycle(4)));
    CHECK(!find_embedding(pendant, Graph::empty(3, 2)));

    // returned maps satisfy the definition
    auto m = find_embedding(pendant, path(4));
    REQUIRE(m);
    CHECK(embedding_valid(pendant, path(4), *m));
}

TEST_CASE("embedding search agrees with the brute-force oracle") {
    Rng rng(19);
    int checked = 0;
    for (int t = 0; t < 60; ++t) {
        int fn = rng.range(1, 4);
        Graph fg = random_graph(fn, 3, rng);
        std::vector<Mark> marks(fn);
        for (auto& mk : marks)
            mk = static_cast<Mark>(rng.range(0, 2));
        MarkedGraph f = marked(fg, marks);
        Graph g = random_graph(rng.range(0, 6), 3, rng);
        bool fast = find_embedding(f, g).has_value();
        bool slow = brute_force_embeddable(f, g);
        CHECK(fast == slow);
        ++checked;
    }
    CHECK(checked == 60);
}

TEST_CASE("is_family_free") {
    GSFFamily empty_fam;
    CHECK(is_family_free(cycle(5), empty_fam));

    GSFFamily fam;
    fam.insert(single_vertex(Mark::full));  // a full isolated vertex
    CHECK(is_family_free(Graph::empty(0, 2), fam));
    CHECK(is_family_free(cycle(3), fam));      // no isolated vertex
    CHECK(!is_family_free(Graph::empty(1, 2), fam));

    Graph edge_plus_isolated = make_graph(3, {{0, 1}}, 2);
    CHECK(!is_family_free(edge_plus_isolated, fam));
}

TEST_CASE("family insert deduplicates up to isomorphism") {
    GSFFamily fam;
    fam.insert(marked(path(2), {Mark::full, Mark::semifull}));
    // relabeled copy
    Graph p = path(2);
    std::swap(p.names[0], p.names[1]);
    fam.insert(marked(p, {Mark::semifull, Mark::full}));
    CHECK(fam.size() == 1);
    fam.insert(marked(path(2), {Mark::full, Mark::full}));
    CHECK(fam.size() == 2);
}

TEST_CASE("k-realisations of the isolated-vertex type") {
    auto cat = enumerate_graph_types(2, 1, CatalogMode::exhaustive);
    std::string isolated = graph_type_key(Graph::empty(1, 2), 0, 1);

    auto s1 = enumerate_k_realisations(cat, isolated, 1, 4);
    REQUIRE(s1.size() == 1);
    CHECK(s1[0].n() == 1);
    CHECK(s1[0].marks[0] == Mark::full);

    auto s2 = enumerate_k_realisations(cat, isolated, 2, 4);
    REQUIRE(s2.size() == 1);
    CHECK(s2[0].n() == 2);
    CHECK(s2[0].graph.adj[0].empty());
    CHECK(s2[0].marks[0] == Mark::full);
    CHECK(s2[0].marks[1] == Mark::full);

    CHECK(enumerate_k_realisations(cat, isolated, 1, 0).empty());

    // direct checks
    CHECK(is_k_realisation(s2[0], 1, isolated, 2));
    MarkedGraph half = s2[0];
    half.marks[1] = Mark::semifull;
    CHECK(!is_k_realisation(half, 1, isolated, 2));  // witness at distance 0 < r must be full

    // a vertex farther than r from every witness violates coverage
    MarkedGraph spread = marked(path(3), {Mark::full, Mark::semifull, Mark::semifull});
    std::string deg1 = graph_type_key(path(2), 0, 1);
    CHECK(!is_k_realisation(spread, 1, deg1, 1));
}

TEST_CASE("k-realisation marks follow distance") {
    auto cat = enumerate_graph_types(2, 1, CatalogMode::exhaustive);
    std::string deg1 = graph_type_key(path(2), 0, 1);
    auto s1 = enumerate_k_realisations(cat, deg1, 1, 2);
    // single witness of the pendant type: the edge with witness full and
    // its neighbour semifull
    REQUIRE(s1.size() == 1);
    CHECK(s1[0].n() == 2);
    std::multiset<Mark> ms(s1[0].marks.begin(), s1[0].marks.end());
    CHECK(ms == std::multiset<Mark>{Mark::full, Mark::semifull});
}

TEST_CASE("union of marked graphs") {
    MarkedGraph fv = single_vertex(Mark::full);
    auto u = union_marked_graphs(fv, fv);
    // total overlap and the disjoint union
    REQUIRE(u.size() == 2);
    bool saw1 = false, saw2 = false;
    for (const auto& f : u) {
        if (f.n() == 1) saw1 = f.marks[0] == Mark::full;
        if (f.n() == 2) {
            saw2 = f.graph.adj[0].empty() && f.marks[0] == Mark::full &&
                   f.marks[1] == Mark::full;
        }
    }
    CHECK(saw1);
    CHECK(saw2);

    // disjoint union with preserved marks always appears
    MarkedGraph e = marked(path(2), {Mark::semifull, Mark::partial});
    auto u2 = union_marked_graphs(fv, e);
    bool saw_disjoint = false;
    for (const auto& f : u2)
        if (f.n() == 3) {
            std::multiset<Mark> ms(f.marks.begin(), f.marks.end());
            if (ms == std::multiset<Mark>{Mark::full, Mark::semifull, Mark::partial})
                saw_disjoint = true;
        }
    CHECK(saw_disjoint);

    // precedence: overlapping full and semifull merges to full
    MarkedGraph sv = single_vertex(Mark::semifull);
    auto u3 = union_marked_graphs(fv, sv);
    bool merged_full = false;
    for (const auto& f : u3)
        if (f.n() == 1 && f.marks[0] == Mark::full) merged_full = true;
    CHECK(merged_full);
}

TEST_CASE("compile_zero_profile_to_gsf basics") {
    auto cat = enumerate_graph_types(2, 1, CatalogMode::exhaustive);

    NeighbourhoodProfile free;
    free.radius = 1;
    free.degree = 2;
    for (const auto& key : cat.keys) free.set(key, Interval::at_least(0));
    CHECK(compile_zero_profile_to_gsf(free, cat).size() == 0);

    // forbidding the isolated-vertex type gives exactly the full isolated vertex
    NeighbourhoodProfile rho = free;
    std::string isolated = graph_type_key(Graph::empty(1, 2), 0, 1);
    rho.set(isolated, Interval::bounded(0, 0));
    auto fam = compile_zero_profile_to_gsf(rho, cat);
    REQUIRE(fam.size() == 1);
    CHECK(fam.members[0].n() == 1);
    CHECK(fam.members[0].marks[0] == Mark::full);
    for (const auto& g : all_graphs_up_to(5, 2)) {
        bool no_isolated = true;
        for (int v = 0; v < g.n(); ++v) no_isolated = no_isolated && g.degree(v) > 0;
        CHECK(is_family_free(g, fam) == no_isolated);
    }

    NeighbourhoodProfile not_zero = free;
    not_zero.set(isolated, Interval::bounded(1, 2));
    CHECK_THROWS_AS(compile_zero_profile_to_gsf(not_zero, cat), error);
}

TEST_CASE("compiled families match profile membership on the enumeration") {
    Rng rng(67);
    auto cat = enumerate_graph_types(3, 1, CatalogMode::exhaustive);
    auto graphs = all_graphs_up_to(6, 3);
    for (int trial = 0; trial < 3; ++trial) {
        auto rho = random_zero_profile(cat, rng);
        auto fam = compile_zero_profile_to_gsf(rho, cat, 6);
        for (const auto& g : graphs)
            CHECK(is_family_free(g, fam) == obeys_profile(g, rho));
    }
}

TEST_CASE("union closure at desk scale") {
    Rng rng(71);
    auto cat = enumerate_graph_types(2, 1, CatalogMode::exhaustive);
    auto graphs = all_graphs_up_to(5, 2);
    for (int trial = 0; trial < 2; ++trial) {
        auto rho1 = random_zero_profile(cat, rng);
        auto rho2 = random_zero_profile(cat, rng);
        auto fam1 = compile_zero_profile_to_gsf(rho1, cat, 5);
        auto fam2 = compile_zero_profile_to_gsf(rho2, cat, 5);
        auto both = compose_families(fam1, fam2, 6);
        for (const auto& g : graphs) {
            bool lhs = is_family_free(g, both);
            bool rhs = is_family_free(g, fam1) || is_family_free(g, fam2);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("covers_family") {
    GSFFamily fam;
    fam.insert(single_vertex(Mark::full));

    Graph g = make_graph(3, {{0, 1}}, 2);  // vertex 2 isolated
    std::vector<int> all{0, 1, 2};
    CHECK(covers_family(g, all, fam));   // B = V(G)
    CHECK(!covers_family(g, {}, fam));   // the embedding avoids the empty set
    CHECK(covers_family(g, {2}, fam));   // every embedding hits vertex 2

    CHECK(covers_family(cycle(3), {}, fam));  // free graph: no embeddings at all

    // monotone in B
    Rng rng(3);
    for (int t = 0; t < 10; ++t) {
        Graph h = random_graph(5, 2, rng);
        std::vector<int> b;
        for (int v = 0; v < h.n(); ++v)
            if (rng.chance(0.4)) b.push_back(v);
        if (!covers_family(h, b, fam)) continue;
        std::vector<int> bigger = b;
        for (int v = 0; v < h.n(); ++v)
            if (rng.chance(0.3) && std::find(bigger.begin(), bigger.end(), v) == bigger.end())
                bigger.push_back(v);
        CHECK(covers_family(h, bigger, fam));
    }
}

TEST_CASE("marked graph and family files round-trip") {
    MarkedGraph f = marked(path(3), {Mark::full, Mark::semifull, Mark::partial});
    std::ostringstream os;
    write_marked_graph(os, f);
    std::istringstream is(os.str());
    MarkedGraph back = parse_marked_graph(is);
    CHECK(back == f);

    GSFFamily fam;
    fam.insert(f);
    fam.insert(single_vertex(Mark::full));
    std::ostringstream fs;
    write_family(fs, fam);
    std::istringstream fis(fs.str());
    GSFFamily famback = parse_family(fis);
    CHECK(famback.keys == fam.keys);

    std::istringstream missing("graph v1\ndegree-bound: 2\nvertices: a b\nedge: a b\nmark: a full\n");
    CHECK_THROWS_AS(parse_marked_graph(missing), error);
}

TEST_CASE("figure fixtures: disjoint edges with and without an isolated vertex") {
    GSFFamily f_even = parse_family_file("fixtures/marked_even.fam");
    GSFFamily f_odd = parse_family_file("fixtures/marked_odd.fam");
    REQUIRE(f_even.size() == 1);
    REQUIRE(f_odd.size() == 2);

    auto g_m = [](int m) {  // m disjoint edges plus one isolated vertex
        Graph g = Graph::empty(2 * m + 1, 2);
        for (int i = 0; i < m; ++i) g.add_edge(2 * i, 2 * i + 1);
        return g;
    };
    auto h_m = [](int m) {  // m disjoint edges
        Graph g = Graph::empty(2 * m, 2);
        for (int i = 0; i < m; ++i) g.add_edge(2 * i, 2 * i + 1);
        return g;
    };

    for (int m = 0; m <= 3; ++m) {
        CHECK(is_family_free(g_m(m), f_odd));       // in the property (odd order)
        CHECK(!is_family_free(h_m(m + 1), f_even)); // not in the property (even order)
    }
    // fully-full edge pair is forbidden only when a second isolated vertex exists
    Graph two_isolated = Graph::empty(3, 2);
    two_isolated.add_edge(0, 1);
    CHECK(is_family_free(two_isolated, f_odd));
    CHECK(!is_family_free(Graph::empty(3, 2), f_odd));
}
