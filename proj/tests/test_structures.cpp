#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <sstream>

#include "gsf/enumerate.hpp"
#include "gsf/structures.hpp"
#include "test_util.hpp"

using namespace gsf;
using namespace gsf::testutil;

namespace {

Structure binary_structure(std::vector<std::string> symbols, int n, int bound) {
    Structure s;
    for (auto& name : symbols) s.sig.symbols.emplace_back(name, 2);
    s.rels.assign(s.sig.size(), {});
    s.degree_bound = bound;
    for (int i = 0; i < n; ++i) s.universe.push_back("a" + std::to_string(i));
    return s;
}

}  // namespace

TEST_CASE("degree_of counts tuples, not positions") {
    auto s = binary_structure({"R"}, 3, 4);
    CHECK(degree_of(s, "a2") == 0);  // isolated element

    s.add_tuple(0, {0, 1});
    s.add_tuple(0, {1, 0});
    CHECK(degree_of(s, "a0") == 2);
    CHECK(degree_of(s, "a1") == 2);

    // tuple containing an element twice counts once
    s.add_tuple(0, {2, 2});
    CHECK(degree_of(s, "a2") == 1);

    CHECK_THROWS_AS(degree_of(s, "zz"), error);
}

TEST_CASE("graph degree differs from structure degree by a factor 2") {
    Graph g = make_graph(2, {{0, 1}});
    CHECK(g.degree(0) == 1);
    Structure s = to_structure(g);
    CHECK(degree_of(s, "v0") == 2);
}

TEST_CASE("gaifman graph") {
    auto s = binary_structure({"R"}, 4, 4);
    CHECK(gaifman_graph(s).n() == 4);
    for (int v = 0; v < 4; ++v) CHECK(gaifman_graph(s).degree(v) == 0);

    // ternary tuple gives a triangle
    Structure t;
    t.sig.symbols.emplace_back("S", 3);
    t.rels.assign(1, {});
    t.degree_bound = 2;
    t.universe = {"a", "b", "c"};
    t.add_tuple(0, {0, 1, 2});
    Graph tri = gaifman_graph(t);
    CHECK(tri.has_edge(0, 1));
    CHECK(tri.has_edge(1, 2));
    CHECK(tri.has_edge(0, 2));

    // symmetric sigma_graph structure: gaifman graph is the graph itself
    Graph c4 = cycle(4);
    Graph back = gaifman_graph(to_structure(c4));
    CHECK(back.adj == c4.adj);
}

TEST_CASE("answer_query follows the canonical tuple order") {
    auto s = binary_structure({"R", "S"}, 3, 4);
    s.add_tuple(1, {0, 2});  // S(a0,a2)
    s.add_tuple(0, {0, 1});  // R(a0,a1)

    auto first = answer_query(s, "a0", 1);
    CHECK(!first.bottom);
    CHECK(first.symbol == "R");
    CHECK(first.elements == std::vector<std::string>{"a0", "a1"});

    auto second = answer_query(s, "a0", 2);
    CHECK(second.symbol == "S");
    CHECK(second.elements == std::vector<std::string>{"a0", "a2"});

    CHECK(answer_query(s, "a2", 2).bottom);
    CHECK(answer_query(s, "a1", 2).bottom);
    CHECK_THROWS_AS(answer_query(s, "a0", 0), error);
    CHECK_THROWS_AS(answer_query(s, "a0", 5), error);
}

TEST_CASE("answer_query is injective up to the element degree") {
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        Signature sig;
        sig.symbols = {{"R", 2}, {"S", 2}};
        Structure s = random_structure(sig, 6, 3, rng);
        for (int v = 0; v < s.n(); ++v) {
            int d = degree_of_idx(s, v);
            std::set<std::pair<std::string, std::vector<std::string>>> seen;
            for (int i = 1; i <= s.degree_bound; ++i) {
                auto ans = answer_query(s, s.universe[v], i);
                CHECK((i <= d) == !ans.bottom);
                if (!ans.bottom) seen.insert({ans.symbol, ans.elements});
            }
            CHECK(static_cast<int>(seen.size()) == d);
        }
    }
}

TEST_CASE("canonical_key: relabeled copies agree, non-isomorphic differ") {
    Rng rng(11);
    Signature sig;
    sig.symbols = {{"R", 2}, {"T", 3}};
    for (int trial = 0; trial < 10; ++trial) {
        Structure s = random_structure(sig, 6, 3, rng);
        std::string key = canonical_key(s);
        for (int p = 0; p < 100; ++p) {
            auto perm = random_permutation(s.n(), rng);
            CHECK(canonical_key(permute(s, perm)) == key);
        }
    }
    CHECK(canonical_key(cycle(4)) != canonical_key(path(4)));

    auto a = binary_structure({"R"}, 3, 4);
    a.add_tuple(0, {0, 1});
    auto b = binary_structure({"R"}, 3, 4);
    b.add_tuple(0, {0, 1});
    b.add_tuple(0, {1, 2});
    CHECK(canonical_key(a) != canonical_key(b));  // different tuple counts
}

TEST_CASE("canonical_key agrees with brute-force isomorphism") {
    Rng rng(23);
    Signature sig;
    sig.symbols = {{"R", 2}};
    std::vector<Structure> pool;
    for (int i = 0; i < 12; ++i) pool.push_back(random_structure(sig, 5, 2, rng));
    for (size_t i = 0; i < pool.size(); ++i)
        for (size_t j = i + 1; j < pool.size(); ++j) {
            bool iso = brute_force_isomorphic(pool[i], pool[j]);
            bool keys = canonical_key(pool[i]) == canonical_key(pool[j]);
            CHECK(iso == keys);
        }
}

TEST_CASE("disjoint_union") {
    auto a = binary_structure({"R"}, 3, 4);
    a.add_tuple(0, {0, 1});
    auto empty = binary_structure({"R"}, 0, 4);

    // A + empty is isomorphic to A
    CHECK(canonical_key(disjoint_union(a, empty)) == canonical_key(a));

    auto b = binary_structure({"R"}, 2, 4);
    b.add_tuple(0, {0, 0});
    auto u = disjoint_union(a, b);
    CHECK(u.n() == a.n() + b.n());

    // degrees preserved for tagged elements
    for (int v = 0; v < a.n(); ++v)
        CHECK(degree_of(u, "u0." + a.universe[v]) == degree_of_idx(a, v));
    for (int v = 0; v < b.n(); ++v)
        CHECK(degree_of(u, "u1." + b.universe[v]) == degree_of_idx(b, v));

    // commutes with canonical_key up to argument order
    CHECK(canonical_key(disjoint_union(a, b)) == canonical_key(disjoint_union(b, a)));

    auto other = binary_structure({"Q"}, 2, 4);
    CHECK_THROWS_AS(disjoint_union(a, other), error);
}

TEST_CASE("degree bound validated on load") {
    std::istringstream bad(
        "sigma-structure v1\n"
        "signature: R/2\n"
        "degree-bound: 1\n"
        "elements: x y z\n"
        "tuple: R x y\n"
        "tuple: R x z\n");
    CHECK_THROWS_AS(parse_structure(bad), parse_error);
}

TEST_CASE("structure text round-trip") {
    Rng rng(5);
    Signature sig;
    sig.symbols = {{"E00", 2}, {"F0", 2}, {"R", 2}, {"L0", 2}};
    for (int trial = 0; trial < 15; ++trial) {
        Structure s = random_structure(sig, rng.range(0, 7), 4, rng);
        std::istringstream in(to_text(s));
        Structure back = parse_structure(in);
        CHECK(back == s);
    }
}

TEST_CASE("graph text round-trip symmetrizes and keeps loops") {
    std::istringstream in(
        "graph v1\n"
        "# comment\n"
        "degree-bound: 3\n"
        "vertices: u v w\n"
        "edge: u v\n"
        "loop: w\n");
    Graph g = parse_graph(in);
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(1, 0));
    CHECK(g.loops[2]);

    Rng rng(9);
    for (int trial = 0; trial < 15; ++trial) {
        Graph h = random_graph(rng.range(0, 8), 3, rng);
        std::istringstream is(to_text(h));
        CHECK(parse_graph(is) == h);
    }
}

TEST_CASE("small graph enumeration counts") {
    // classic counts of graphs up to isomorphism
    CHECK(all_graphs(0, 5).size() == 1);
    CHECK(all_graphs(1, 5).size() == 1);
    CHECK(all_graphs(2, 5).size() == 2);
    CHECK(all_graphs(3, 5).size() == 4);
    CHECK(all_graphs(4, 5).size() == 11);
    CHECK(all_graphs(5, 5).size() == 34);
    CHECK(all_graphs(6, 5).size() == 156);
}

TEST_CASE("regular graph enumeration") {
    CHECK(regular_graphs(4, 3).size() == 1);  // K4
    CHECK(regular_graphs(5, 2).size() == 1);  // C5
    CHECK(regular_graphs(6, 3).size() == 2);  // K33 and prism
    CHECK(regular_graphs(8, 3).size() == 6);  // 5 connected plus K4+K4
    CHECK(regular_graphs(8, 2).size() == 3);  // C8, C5+C3, C4+C4
    CHECK(regular_graphs(5, 3).empty());      // odd sum
}
