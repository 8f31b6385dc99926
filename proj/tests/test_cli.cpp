#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gsf/cli.hpp"
#include "gsf/gsf.hpp"
#include "gsf/hanf.hpp"
#include "gsf/zigzag.hpp"
#include "test_util.hpp"

using namespace gsf;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path dir;
    TempDir() {
        dir = fs::temp_directory_path() / ("gsflab-test-" + std::to_string(::getpid()));
        fs::create_directories(dir);
    }
    ~TempDir() { fs::remove_all(dir); }
    std::string path(const std::string& name) const { return (dir / name).string(); }
};

int run(std::vector<std::string> args, std::string* out = nullptr) {
    args.insert(args.begin(), "gsflab");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());

    std::ostringstream captured;
    std::streambuf* old = std::cout.rdbuf(captured.rdbuf());
    int code = dispatch(static_cast<int>(argv.size()), argv.data());
    std::cout.rdbuf(old);
    if (out) *out = captured.str();
    return code;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void spit(const std::string& path, const std::string& body) {
    std::ofstream f(path);
    f << body;
}

}  // namespace

TEST_CASE("zz-gen then zz-check round-trips through files") {
    TempDir tmp;
    std::string model = tmp.path("model.sigma");
    CHECK(run({"zz-gen", "--D", "2", "--levels", "1", "--base", "toy", "-o", model}) == 0);

    std::string out;
    CHECK(run({"zz-check", model, "--which", "zigzag"}, &out) == 0);
    CHECK(out.find("result: true") != std::string::npos);

    // determinism: identical inputs produce byte-identical artifacts
    std::string model2 = tmp.path("model2.sigma");
    CHECK(run({"zz-gen", "--D", "2", "--levels", "1", "--base", "toy", "-o", model2}) == 0);
    CHECK(slurp(model) == slurp(model2));

    // the generated file re-parses to the in-memory model
    Structure parsed = parse_structure_file(model);
    CHECK(parsed == build_canonical_model(toy_rotation_map(2), 1).structure);
}

TEST_CASE("hist on the empty structure prints an all-zero histogram") {
    TempDir tmp;
    std::string empty = tmp.path("empty.sigma");
    spit(empty, "sigma-structure v1\nsignature: E/2\ndegree-bound: 4\nelements:\n");
    std::string out;
    CHECK(run({"hist", empty, "--r", "1", "--d", "2"}, &out) == 0);
    CHECK(out.find("total: 0") != std::string::npos);

    // against a catalog every listed type reports zero
    std::string cat = tmp.path("cat.types");
    CHECK(run({"types", "--exhaustive", "--d", "2", "--r", "1", "-o", cat}) == 0);
    CHECK(run({"hist", empty, "--catalog", cat}, &out) == 0);
    int zero_lines = 0;
    std::istringstream ss(out);
    std::string line;
    while (std::getline(ss, line))
        if (line.rfind("count: ", 0) == 0 && line.back() == '0') ++zero_lines;
    CHECK(zero_lines == 4);
}

TEST_CASE("dist finds the deleted tuple of a mutated model") {
    TempDir tmp;
    ZigZagModel m = build_canonical_model(toy_rotation_map(2), 1);
    Structure mut = m.structure;
    ZigZagSignature z = zigzag_signature(2);
    mut.remove_tuple(z.r_index, {0, 0});
    std::string path = tmp.path("mutated.sigma");
    std::ostringstream os;
    write_structure(os, mut);
    spit(path, os.str());

    std::string out;
    CHECK(run({"dist", path, "--property", "zigzag-prime", "--eps", "0.05"}, &out) == 0);
    CHECK(out.find("verdict: close") != std::string::npos);
    CHECK(out.find("witness: insert R r r") != std::string::npos);
}

TEST_CASE("compile-gsf, free, obeys, covers and probe work together") {
    TempDir tmp;
    // forbid the isolated-vertex type at radius 1, degree 2
    auto cat = enumerate_graph_types(2, 1, CatalogMode::exhaustive);
    NeighbourhoodProfile rho;
    rho.radius = 1;
    rho.degree = 2;
    rho.signature_repr = "E/2";
    std::string isolated = ball_key(extract_ball_idx(to_structure(Graph::empty(1, 2)), 0, 1));
    for (const auto& k : cat.keys) rho.set(k, Interval::at_least(0));
    rho.set(isolated, Interval::bounded(0, 0));
    std::string prof = tmp.path("rho.profile");
    std::ostringstream ps;
    write_profile(ps, rho);
    spit(prof, ps.str());

    std::string fam = tmp.path("fam.gsf");
    std::string out;
    CHECK(run({"compile-gsf", prof, "-o", fam}, &out) == 0);
    CHECK(out.find("members: 1") != std::string::npos);

    std::string graph = tmp.path("g.graph");
    spit(graph,
         "graph v1\ndegree-bound: 2\nvertices: u v w\nedge: u v\n");  // w isolated
    CHECK(run({"free", graph, fam}, &out) == 0);
    CHECK(out.find("result: false") != std::string::npos);
    CHECK(run({"obeys", graph, prof}, &out) == 0);
    CHECK(out.find("result: false") != std::string::npos);

    CHECK(run({"covers", graph, fam, "--set", "w"}, &out) == 0);
    CHECK(out.find("result: true") != std::string::npos);
    CHECK(run({"covers", graph, fam, "--set", "u"}, &out) == 0);
    CHECK(out.find("result: false") != std::string::npos);

    CHECK(run({"probe", graph, fam, "--set", "w", "--budget", "2"}, &out) == 0);
    CHECK(out.find("covers: true") != std::string::npos);
    CHECK(out.find("repair: 1") != std::string::npos);

    CHECK(run({"pot", graph, "--family", fam, "--trials", "50", "--seed", "5"}, &out) == 0);
    CHECK(out.find("trials: 50") != std::string::npos);
    CHECK(out.find("seed: 5") != std::string::npos);

    std::string out2;
    run({"pot", graph, "--family", fam, "--trials", "50", "--seed", "5"}, &out2);
    CHECK(out == out2);  // deterministic given the seed
}

TEST_CASE("embed and gap subcommands") {
    TempDir tmp;
    std::string marked = tmp.path("pendant.mg");
    spit(marked,
         "graph v1\ndegree-bound: 2\nvertices: a b\nedge: a b\n"
         "mark: a full\nmark: b partial\n");
    std::string g = tmp.path("path.graph");
    spit(g, "graph v1\ndegree-bound: 2\nvertices: x y z\nedge: x y\nedge: y z\n");
    std::string out;
    CHECK(run({"embed", marked, g}, &out) == 0);
    CHECK(out.find("result: found") != std::string::npos);
    CHECK(out.find("map: a -> x") != std::string::npos);

    std::string k4 = tmp.path("k4.graph");
    spit(k4,
         "graph v1\ndegree-bound: 3\nvertices: a b c d\nedge: a b\nedge: a c\nedge: a d\n"
         "edge: b c\nedge: b d\nedge: c d\n");
    CHECK(run({"gap", k4}, &out) == 0);
    CHECK(out.find("gap: 0.333333333333333") != std::string::npos);
}

TEST_CASE("hanf-compile and lift") {
    TempDir tmp;
    auto cat = enumerate_graph_types(2, 1, CatalogMode::exhaustive);
    std::string deg1 = ball_key(extract_ball_idx(to_structure(testutil::path(2)), 0, 1));

    std::string sentence = tmp.path("phi.hanf");
    spit(sentence, "hanf v1\ndisjunct:\n  atom: >=2 1 " + deg1 + "\n");
    std::string profs = tmp.path("phi.profiles");
    std::string out;
    CHECK(run({"hanf-compile", sentence, "--d", "2", "-o", profs}, &out) == 0);
    CHECK(out.find("profiles: 1") != std::string::npos);
    CHECK(out.find("satisfiable within 2") != std::string::npos);

    std::string lifted = tmp.path("phi2.hanf");
    CHECK(run({"lift", sentence, "--to-r", "2", "--d", "2", "-o", lifted}, &out) == 0);
    CHECK(out.find("disjuncts: 3") != std::string::npos);
    HanfDNF phi = parse_hanf_file(lifted);
    CHECK(phi.disjuncts.size() == 3);
}

TEST_CASE("sim-query against a small structure") {
    TempDir tmp;
    std::string s = tmp.path("s.sigma");
    spit(s,
         "sigma-structure v1\nsignature: A/2, B/2\ndegree-bound: 4\nelements: x y\n"
         "tuple: A x y\n");
    std::string out;
    CHECK(run({"sim-query", s, "--vertex", "element:x", "--port", "1"}, &out) == 0);
    CHECK(out.find("answer: gadget v 2 x 1") != std::string::npos);
    CHECK(out.find("queries: 0") != std::string::npos);

    CHECK(run({"sim-query", s, "--vertex", "w:x:1", "--port", "1"}, &out) == 0);
    CHECK(out.find("queries:") != std::string::npos);

    CHECK(run({"sim-query", s, "--vertex", "bogus", "--port", "1"}, &out) == 1);
}

TEST_CASE("usage and domain error exit codes") {
    std::string out;
    CHECK(run({"definitely-not-a-subcommand"}, &out) == 2);
    CHECK(run({"zz-check", "/nonexistent/file", "--which", "zigzag"}, &out) == 1);

    TempDir tmp;
    std::string bad = tmp.path("bad.sigma");
    spit(bad, "sigma-structure v1\nsignature: E/2\ndegree-bound: 1\nelements: a b c\n"
              "tuple: E a b\ntuple: E a c\n");
    CHECK(run({"hist", bad, "--r", "1"}, &out) == 1);  // malformed: degree bound violated
}

TEST_CASE("catalog files round-trip") {
    auto cat = enumerate_graph_types(3, 1, CatalogMode::exhaustive);
    std::ostringstream os;
    write_catalog(os, cat);
    std::istringstream is(os.str());
    TypeCatalog back = parse_catalog(is);
    CHECK(back.keys == cat.keys);
    CHECK(back.degree == cat.degree);
    CHECK(back.radius == cat.radius);
    CHECK(back.exhaustive == cat.exhaustive);
}
