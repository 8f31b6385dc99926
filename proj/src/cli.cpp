#include "gsf/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "gsf/enumerate.hpp"
#include "gsf/gsf.hpp"
#include "gsf/hanf.hpp"
#include "gsf/harness.hpp"
#include "gsf/reduction.hpp"
#include "gsf/zigzag.hpp"

namespace gsf {

namespace {

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw error("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string first_token(const std::string& text) {
    std::istringstream ss(text);
    std::string tok;
    ss >> tok;
    return tok;
}

}  // namespace

void Workspace::write_artifact(const std::string& path, const std::string& body) const {
    std::ofstream f(path);
    if (!f) throw error("cannot write " + path);
    f << "# gsflab " << subcommand << " seed=" << seed << "\n";
    f << body;
    if (!f) throw error("write failed: " + path);
}

std::variant<Structure, Graph> load_input(const std::string& path) {
    std::string text = slurp(path);
    std::string head;
    {
        std::istringstream ss(text);
        std::string line;
        while (std::getline(ss, line)) {
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            head = first_token(line);
            if (!head.empty()) break;
        }
    }
    std::istringstream ss(text);
    if (head == "sigma-structure") return parse_structure(ss);
    if (head == "graph") return parse_graph(ss);
    throw error(path + ": expected a 'sigma-structure v1' or 'graph v1' header");
}

Structure load_structure_input(const std::string& path) {
    auto in = load_input(path);
    if (std::holds_alternative<Structure>(in)) return std::get<Structure>(std::move(in));
    return to_structure(std::get<Graph>(in));
}

void write_catalog(std::ostream& os, const TypeCatalog& cat) {
    os << "type-catalog v1\n";
    os << "signature: " << signature_repr(cat.sig) << "\n";
    os << "degree: " << cat.degree << "\n";
    os << "radius: " << cat.radius << "\n";
    os << "mode: " << (cat.exhaustive ? "exhaustive" : "observed") << "\n";
    for (const auto& k : cat.keys) os << "type: " << k << "\n";
}

TypeCatalog parse_catalog(std::istream& is) {
    TypeCatalog cat;
    std::string line;
    int line_no = 0;
    bool header = false;
    while (std::getline(is, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        std::vector<std::string> tok;
        std::string t;
        while (ss >> t) tok.push_back(t);
        if (tok.empty()) continue;
        if (!header) {
            if (tok.size() != 2 || tok[0] != "type-catalog" || tok[1] != "v1")
                throw parse_error("expected 'type-catalog v1' header", line_no);
            header = true;
            continue;
        }
        if (tok[0] == "signature:") {
            cat.sig.symbols.clear();
            std::string rest;
            for (size_t i = 1; i < tok.size(); ++i) rest += tok[i];
            std::istringstream es(rest);
            std::string entry;
            while (std::getline(es, entry, ',')) {
                if (entry.empty()) continue;
                auto slash = entry.find('/');
                if (slash == std::string::npos)
                    throw parse_error("signature entry needs name/arity", line_no);
                cat.sig.symbols.emplace_back(entry.substr(0, slash),
                                             std::stoi(entry.substr(slash + 1)));
            }
        } else if (tok[0] == "degree:") {
            cat.degree = std::stoi(tok[1]);
        } else if (tok[0] == "radius:") {
            cat.radius = std::stoi(tok[1]);
        } else if (tok[0] == "mode:") {
            cat.exhaustive = tok[1] == "exhaustive";
        } else if (tok[0] == "type:") {
            cat.keys.push_back(tok[1]);
        } else {
            throw parse_error("unrecognized directive '" + tok[0] + "'", line_no);
        }
    }
    if (!header) throw parse_error("missing 'type-catalog v1' header", line_no);
    for (size_t i = 1; i < cat.keys.size(); ++i)
        if (cat.keys[i - 1] >= cat.keys[i]) throw error("catalog keys must be sorted and distinct");
    return cat;
}

TypeCatalog parse_catalog_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw error("cannot open " + path);
    return parse_catalog(f);
}

// ---------------------------------------------------------------------------
// subcommand helpers
// ---------------------------------------------------------------------------

namespace {

struct Options {
    uint64_t seed = 0;
    int threads = 0;
};

std::string render_structure(const Structure& s) {
    std::ostringstream os;
    write_structure(os, s);
    return os.str();
}

std::string render_graph(const Graph& g) {
    std::ostringstream os;
    write_graph(os, g);
    return os.str();
}

TypeCatalog exhaustive_graph_catalog(int d, int r) {
    return enumerate_graph_types(d, r, CatalogMode::exhaustive);
}

GSFFamily load_family(const std::string& path) { return parse_family_file(path); }

std::function<bool(const Structure&)> structure_property(const std::string& spec,
                                                         const RotationMap& base) {
    if (spec == "zigzag")
        return [base](const Structure& s) {
            return check_component(s, ZComponent::zigzag, base).ok;
        };
    if (spec == "zigzag-prime" || spec == "zigzag'")
        return [base](const Structure& s) {
            return check_component(s, ZComponent::zigzag_prime, base).ok;
        };
    if (spec.rfind("profile:", 0) == 0) {
        auto rho = parse_profile_file(spec.substr(8));
        return [rho](const Structure& s) { return obeys_profile(s, rho); };
    }
    if (spec.rfind("hanf:", 0) == 0) {
        auto phi = parse_hanf_file(spec.substr(5));
        return [phi](const Structure& s) { return evaluate_hanf(phi, s); };
    }
    throw error("unknown property '" + spec + "'");
}

std::function<bool(const Graph&)> graph_property(const std::string& spec) {
    if (spec.rfind("family:", 0) == 0) {
        auto fam = parse_family_file(spec.substr(7));
        return [fam](const Graph& g) { return is_family_free(g, fam); };
    }
    if (spec.rfind("profile:", 0) == 0) {
        auto rho = parse_profile_file(spec.substr(8));
        return [rho](const Graph& g) { return obeys_profile(g, rho); };
    }
    if (spec.rfind("hanf:", 0) == 0) {
        auto phi = parse_hanf_file(spec.substr(5));
        return [phi](const Graph& g) { return evaluate_hanf(phi, g); };
    }
    throw error("unknown graph property '" + spec + "'");
}

std::vector<int> parse_vertex_set(const Graph& g, const std::string& csv) {
    std::vector<int> out;
    std::istringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        auto it = std::find(g.names.begin(), g.names.end(), item);
        if (it == g.names.end()) throw error("unknown vertex '" + item + "'");
        out.push_back(static_cast<int>(it - g.names.begin()));
    }
    return out;
}

// manifest file: "manifest v1" followed by "structure: <path>" / "graph: <path>"
// lines; every referenced file must exist
std::vector<std::string> manifest_paths(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw error("cannot open " + path);
    std::vector<std::string> out;
    std::string line;
    int line_no = 0;
    bool header = false;
    while (std::getline(f, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        std::vector<std::string> tok;
        std::string t;
        while (ss >> t) tok.push_back(t);
        if (tok.empty()) continue;
        if (!header) {
            if (tok.size() != 2 || tok[0] != "manifest" || tok[1] != "v1")
                throw parse_error("expected 'manifest v1' header", line_no);
            header = true;
            continue;
        }
        if ((tok[0] == "structure:" || tok[0] == "graph:") && tok.size() == 2) {
            std::ifstream probe(tok[1]);
            if (!probe) throw parse_error("manifest references missing file " + tok[1], line_no);
            out.push_back(tok[1]);
        } else {
            throw parse_error("unrecognized manifest directive '" + tok[0] + "'", line_no);
        }
    }
    if (!header) throw parse_error("missing 'manifest v1' header", line_no);
    return out;
}

long provenance_vertex(const Structure& s, const ReductionLayout& lay, const std::string& spec) {
    std::vector<std::string> parts;
    std::istringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() == 2 && parts[0] == "element")
        return lay.element_vertex(s.element_index(parts[1]));
    if (parts.size() == 4 && parts[0] == "v")
        return lay.spine_vertex(s.element_index(parts[2]), std::stoi(parts[3]),
                                std::stoi(parts[1]));
    if (parts.size() == 3 && parts[0] == "w")
        return lay.pendant_vertex(s.element_index(parts[1]), std::stoi(parts[2]));
    throw error("vertex spec must be element:<id>, v:<k>:<id>:<port> or w:<id>:<port>");
}

}  // namespace

// ---------------------------------------------------------------------------
// dispatch
// ---------------------------------------------------------------------------

int dispatch(int argc, const char* const* argv) {
    CLI::App app{"neighbourhood profiles, generalised subgraph freeness and the zig-zag reduction"};
    app.require_subcommand(1);

    Options opt;
    app.add_option("--seed", opt.seed, "seed for randomized experiments");
    app.add_option("--threads", opt.threads, "OpenMP thread count (0 = default)");

    // types
    auto* c_types = app.add_subcommand("types", "enumerate or observe r-type catalogs");
    int t_d = 2, t_r = 1;
    bool t_exhaustive = false;
    std::vector<std::string> t_inputs;
    std::string t_out, t_manifest;
    c_types->add_option("--d", t_d, "degree bound");
    c_types->add_option("--r", t_r, "radius");
    c_types->add_flag("--exhaustive", t_exhaustive, "exhaustive enumeration (envelope applies)");
    c_types->add_option("inputs", t_inputs, "corpus files for observed mode");
    c_types->add_option("--manifest", t_manifest, "corpus manifest file");
    c_types->add_option("-o", t_out, "output catalog file");

    // hist
    auto* c_hist = app.add_subcommand("hist", "r-histogram vector of a structure or graph");
    std::string h_input, h_catalog, h_out;
    int h_d = 2, h_r = 1;
    c_hist->add_option("input", h_input)->required();
    c_hist->add_option("--d", h_d, "degree bound (graph semantics for graphs)");
    c_hist->add_option("--r", h_r, "radius");
    c_hist->add_option("--catalog", h_catalog, "count against this catalog file");
    c_hist->add_option("-o", h_out);

    // obeys
    auto* c_obeys = app.add_subcommand("obeys", "profile membership");
    std::string o_input, o_profile;
    c_obeys->add_option("input", o_input)->required();
    c_obeys->add_option("profile", o_profile)->required();

    // compile-gsf
    auto* c_compile = app.add_subcommand("compile-gsf", "0-profiles to a forbidden family");
    std::vector<std::string> cg_profiles;
    std::string cg_out;
    int cg_cap = 6;
    c_compile->add_option("profiles", cg_profiles)->required();
    c_compile->add_option("-o", cg_out)->required();
    c_compile->add_option("--member-cap", cg_cap, "largest family member generated");

    // embed
    auto* c_embed = app.add_subcommand("embed", "find one marked-graph embedding");
    std::string e_marked, e_graph;
    c_embed->add_option("marked", e_marked)->required();
    c_embed->add_option("graph", e_graph)->required();

    // free
    auto* c_free = app.add_subcommand("free", "family freeness");
    std::string fr_graph, fr_family;
    c_free->add_option("graph", fr_graph)->required();
    c_free->add_option("family", fr_family)->required();

    // hanf-compile
    auto* c_hc = app.add_subcommand("hanf-compile", "single-radius Hanf DNF to profiles");
    std::string hc_sentence, hc_out;
    int hc_d = 2, hc_probe = 5;
    c_hc->add_option("sentence", hc_sentence)->required();
    c_hc->add_option("--d", hc_d, "degree bound");
    c_hc->add_option("--probe-bound", hc_probe, "small-model satisfiability bound");
    c_hc->add_option("-o", hc_out)->required();

    // lift
    auto* c_lift = app.add_subcommand("lift", "lift positive Hanf atoms to a larger radius");
    std::string l_sentence, l_out;
    int l_tor = 2, l_d = 2;
    c_lift->add_option("sentence", l_sentence)->required();
    c_lift->add_option("--to-r", l_tor, "target radius");
    c_lift->add_option("--d", l_d, "degree bound");
    c_lift->add_option("-o", l_out)->required();

    // zz-gen
    auto* c_gen = app.add_subcommand("zz-gen", "generate a canonical zig-zag model");
    int g_D = 2, g_levels = 1;
    long g_budget = 1000000;
    std::string g_base = "toy", g_out;
    c_gen->add_option("--D", g_D, "base degree (the toy map has D = 2)");
    c_gen->add_option("--levels", g_levels, "tree depth");
    c_gen->add_option("--base", g_base, "rotation map: registry name or file");
    c_gen->add_option("--budget", g_budget, "element budget");
    c_gen->add_option("-o", g_out)->required();

    // zz-check
    auto* c_check = app.add_subcommand("zz-check", "evaluate a formula component");
    std::string zc_input, zc_which = "zigzag", zc_base = "toy";
    c_check->add_option("input", zc_input)->required();
    c_check->add_option("--which", zc_which, "tree|tree'|rotationMap|base|recursion|zigzag|zigzag'");
    c_check->add_option("--base", zc_base, "rotation map: registry name or file");

    // reduce
    auto* c_reduce = app.add_subcommand("reduce", "apply the gadget reduction");
    std::string r_input, r_out, r_prov;
    c_reduce->add_option("input", r_input)->required();
    c_reduce->add_option("-o", r_out)->required();
    c_reduce->add_option("--provenance", r_prov, "sidecar file");

    // sim-query
    auto* c_sim = app.add_subcommand("sim-query", "translate one graph query");
    std::string s_input, s_vertex;
    int s_port = 1;
    c_sim->add_option("input", s_input)->required();
    c_sim->add_option("--vertex", s_vertex, "element:<id> | v:<k>:<id>:<port> | w:<id>:<port>")
        ->required();
    c_sim->add_option("--port", s_port)->required();

    // dist
    auto* c_dist = app.add_subcommand("dist", "exact bounded distance search");
    std::string d_input, d_property, d_base = "toy";
    double d_eps = 0.05;
    long d_cap = 10000000;
    c_dist->add_option("input", d_input)->required();
    c_dist->add_option("--property", d_property)->required();
    c_dist->add_option("--eps", d_eps, "proximity parameter");
    c_dist->add_option("--cap", d_cap, "candidate set cap");
    c_dist->add_option("--base", d_base, "rotation map for zig-zag properties");

    // pot
    auto* c_pot = app.add_subcommand("pot", "run the ball-sampling basic test");
    std::string p_input, p_family;
    long p_trials = 100, p_ceiling = 1000000;
    int p_radius = 1;
    c_pot->add_option("input", p_input)->required();
    c_pot->add_option("--family", p_family)->required();
    c_pot->add_option("--trials", p_trials);
    c_pot->add_option("--radius", p_radius, "exploration radius");
    c_pot->add_option("--ceiling", p_ceiling, "per-trial query ceiling");

    // gap
    auto* c_gap = app.add_subcommand("gap", "normalized spectral gap of a regular graph");
    std::string gp_input;
    c_gap->add_option("input", gp_input)->required();

    // covers
    auto* c_covers = app.add_subcommand("covers", "does a vertex set cover a family");
    std::string cv_graph, cv_family, cv_set;
    c_covers->add_option("graph", cv_graph)->required();
    c_covers->add_option("family", cv_family)->required();
    c_covers->add_option("--set", cv_set, "comma-separated vertex names");

    // probe
    auto* c_probe = app.add_subcommand("probe", "cover-set and repair-distance probe");
    std::string pr_graph, pr_family, pr_set;
    long pr_budget = 2, pr_cap = 10000000;
    c_probe->add_option("graph", pr_graph)->required();
    c_probe->add_option("family", pr_family)->required();
    c_probe->add_option("--set", pr_set, "comma-separated vertex names");
    c_probe->add_option("--budget", pr_budget, "repair search budget");
    c_probe->add_option("--cap", pr_cap, "candidate set cap");

    for (CLI::App* sub : app.get_subcommands(nullptr)) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

#ifdef _OPENMP
    if (opt.threads > 0) omp_set_num_threads(opt.threads);
#endif

    try {
        Workspace ws;
        ws.seed = opt.seed;

        if (*c_types) {
            ws.subcommand = "types";
            TypeCatalog cat;
            if (t_exhaustive) {
                cat = exhaustive_graph_catalog(t_d, t_r);
            } else {
                if (!t_manifest.empty())
                    for (const auto& path : manifest_paths(t_manifest)) t_inputs.push_back(path);
                std::vector<Structure> corpus;
                for (const auto& path : t_inputs) corpus.push_back(load_structure_input(path));
                std::vector<const Structure*> ptrs;
                for (const auto& s : corpus) ptrs.push_back(&s);
                Signature sig = corpus.empty() ? Signature::graph() : corpus[0].sig;
                cat = enumerate_types(sig, t_d, t_r, CatalogMode::observed, ptrs);
            }
            std::ostringstream os;
            write_catalog(os, cat);
            if (t_out.empty())
                std::cout << os.str();
            else
                ws.write_artifact(t_out, os.str());
            return 0;
        }

        if (*c_hist) {
            ws.subcommand = "hist";
            Structure s = load_structure_input(h_input);
            std::ostringstream os;
            os << "histogram v1\n";
            if (!h_catalog.empty()) {
                TypeCatalog cat = parse_catalog_file(h_catalog);
                auto keys = element_type_keys(s, cat.radius);
                std::vector<long> counts(cat.size(), 0);
                for (const auto& k : keys) {
                    auto idx = cat.index_of(k);
                    if (!idx) throw error("out-of-catalog type encountered: " + k);
                    ++counts[*idx];
                }
                os << "radius: " << cat.radius << "\n";
                os << "total: " << s.n() << "\n";
                for (int i = 0; i < cat.size(); ++i)
                    os << "count: " << cat.keys[i] << " " << counts[i] << "\n";
            } else {
                auto keys = element_type_keys(s, h_r);
                std::map<std::string, long> counts;
                for (const auto& k : keys) ++counts[k];
                os << "radius: " << h_r << "\n";
                os << "total: " << s.n() << "\n";
                for (const auto& [k, c] : counts) os << "count: " << k << " " << c << "\n";
            }
            if (h_out.empty())
                std::cout << os.str();
            else
                ws.write_artifact(h_out, os.str());
            return 0;
        }

        if (*c_obeys) {
            auto rho = parse_profile_file(o_profile);
            auto in = load_input(o_input);
            bool ok = std::holds_alternative<Structure>(in)
                          ? obeys_profile(std::get<Structure>(in), rho)
                          : obeys_profile(std::get<Graph>(in), rho);
            std::cout << "result: " << (ok ? "true" : "false") << "\n";
            return 0;
        }

        if (*c_compile) {
            ws.subcommand = "compile-gsf";
            std::vector<NeighbourhoodProfile> rhos;
            for (const auto& p : cg_profiles) rhos.push_back(parse_profile_file(p));
            TypeCatalog cat = exhaustive_graph_catalog(rhos[0].degree, rhos[0].radius);
            GSFFamily fam = compile_union_zero_profiles(rhos, cat, cg_cap);
            std::ostringstream os;
            write_family(os, fam);
            ws.write_artifact(cg_out, os.str());
            std::cout << "members: " << fam.size() << "\n";
            return 0;
        }

        if (*c_embed) {
            std::ifstream mf(e_marked);
            if (!mf) throw error("cannot open " + e_marked);
            MarkedGraph f = parse_marked_graph(mf);
            Graph g = parse_graph_file(e_graph);
            auto map = find_embedding(f, g);
            if (!map) {
                std::cout << "result: none\n";
            } else {
                std::cout << "result: found\n";
                for (int v = 0; v < f.n(); ++v)
                    std::cout << "map: " << f.graph.names[v] << " -> " << g.names[(*map)[v]]
                              << "\n";
            }
            return 0;
        }

        if (*c_free) {
            Graph g = parse_graph_file(fr_graph);
            GSFFamily fam = load_family(fr_family);
            std::cout << "result: " << (is_family_free(g, fam) ? "true" : "false") << "\n";
            return 0;
        }

        if (*c_hc) {
            ws.subcommand = "hanf-compile";
            HanfDNF phi = parse_hanf_file(hc_sentence);
            int radius = 1;
            for (const auto& dis : phi.disjuncts)
                for (const auto& at : dis) radius = at.radius;
            TypeCatalog cat = exhaustive_graph_catalog(hc_d, radius);
            auto rhos = compile_hanf_to_profiles(phi, cat);
            std::ostringstream os;
            for (size_t i = 0; i < rhos.size(); ++i) {
                if (i) os << "---\n";
                write_profile(os, rhos[i]);
            }
            ws.write_artifact(hc_out, os.str());
            std::cout << "profiles: " << rhos.size() << "\n";
            for (size_t i = 0; i < rhos.size(); ++i) {
                auto witness = profile_satisfiable_within(rhos[i], hc_probe);
                if (witness)
                    std::cout << "profile " << i << ": satisfiable within " << witness->n()
                              << " vertices\n";
                else
                    std::cout << "profile " << i << ": unknown above " << hc_probe
                              << " vertices\n";
            }
            return 0;
        }

        if (*c_lift) {
            ws.subcommand = "lift";
            HanfDNF phi = parse_hanf_file(l_sentence);
            TypeCatalog cat = exhaustive_graph_catalog(l_d, l_tor);
            HanfDNF lifted;
            for (const auto& dis : phi.disjuncts) {
                // product of the per-atom lifts, distributed back to DNF
                std::vector<std::vector<HanfAtom>> acc{{}};
                for (const auto& at : dis) {
                    if (at.negated)
                        throw error("lift handles positive atoms; negations must be rewritten "
                                    "at the target radius");
                    HanfDNF part = lift_radius(at, l_tor, cat);
                    std::vector<std::vector<HanfAtom>> next;
                    for (const auto& left : acc)
                        for (const auto& right : part.disjuncts) {
                            auto merged = left;
                            merged.insert(merged.end(), right.begin(), right.end());
                            next.push_back(std::move(merged));
                        }
                    acc = std::move(next);
                    if (acc.size() > 200000) throw error("lifted sentence too large");
                }
                for (auto& dis2 : acc) lifted.disjuncts.push_back(std::move(dis2));
            }
            std::ostringstream os;
            write_hanf(os, lifted);
            ws.write_artifact(l_out, os.str());
            std::cout << "disjuncts: " << lifted.disjuncts.size() << "\n";
            return 0;
        }

        if (*c_gen) {
            ws.subcommand = "zz-gen";
            RotationMap base = rotation_map_by_name(g_base);
            if (base.degree != g_D)
                throw error("base map degree " + std::to_string(base.degree) +
                            " does not match --D " + std::to_string(g_D));
            ZigZagModel m = build_canonical_model(base, g_levels, g_budget);
            ws.write_artifact(g_out, render_structure(m.structure));
            std::cout << "elements: " << m.structure.n() << "\n";
            return 0;
        }

        if (*c_check) {
            Structure s = load_structure_input(zc_input);
            RotationMap base = rotation_map_by_name(zc_base);
            CheckResult r = check_component(s, parse_component(zc_which), base);
            std::cout << "result: " << (r.ok ? "true" : "false") << "\n";
            if (!r.ok) {
                std::cout << "clause: " << r.clause << "\n";
                for (const auto& w : r.witnesses) std::cout << "witness: " << w << "\n";
            }
            return 0;
        }

        if (*c_reduce) {
            ws.subcommand = "reduce";
            Structure s = load_structure_input(r_input);
            ReducedGraph rg = apply_reduction(s);
            ws.write_artifact(r_out, render_graph(rg.graph));
            if (!r_prov.empty()) {
                std::ostringstream os;
                write_provenance(os, s, rg);
                ws.write_artifact(r_prov, os.str());
            }
            std::cout << "vertices: " << rg.graph.n() << "\n";
            return 0;
        }

        if (*c_sim) {
            Structure s = load_structure_input(s_input);
            ReductionLayout lay;
            lay.n = s.n();
            lay.d = s.degree_bound;
            lay.ell = s.sig.size();
            long vertex = provenance_vertex(s, lay, s_vertex);
            CountingOracle oracle(s);
            TranslateResult res = translate_query(oracle.as_query_fn(), s.sig, lay, vertex, s_port);
            if (res.neighbor)
                std::cout << "answer: "
                          << provenance_string(s, decode_vertex(lay, *res.neighbor)) << "\n";
            else
                std::cout << "answer: bottom\n";
            std::cout << "queries: " << res.structure_queries << "\n";
            return 0;
        }

        if (*c_dist) {
            auto in = load_input(d_input);
            DistanceResult res;
            if (std::holds_alternative<Structure>(in)) {
                RotationMap base = rotation_map_by_name(d_base);
                res = epsilon_distance(std::get<Structure>(in),
                                       structure_property(d_property, base), d_eps, d_cap);
                const Structure& s = std::get<Structure>(in);
                std::cout << "verdict: "
                          << (res.verdict == DistanceVerdict::close      ? "close"
                              : res.verdict == DistanceVerdict::far      ? "far"
                                                                         : "exhausted")
                          << "\n";
                std::cout << "budget: " << res.budget << "\n";
                std::cout << "examined: " << res.examined << "\n";
                for (const auto& m : res.witness) {
                    std::cout << "witness: " << (m.insert ? "insert" : "delete") << " "
                              << s.sig.name(m.sym);
                    for (int e : m.tuple) std::cout << " " << s.universe[e];
                    std::cout << "\n";
                }
            } else {
                const Graph& g = std::get<Graph>(in);
                res = epsilon_distance(g, graph_property(d_property), d_eps, d_cap);
                std::cout << "verdict: "
                          << (res.verdict == DistanceVerdict::close      ? "close"
                              : res.verdict == DistanceVerdict::far      ? "far"
                                                                         : "exhausted")
                          << "\n";
                std::cout << "budget: " << res.budget << "\n";
                std::cout << "examined: " << res.examined << "\n";
                for (const auto& m : res.witness)
                    std::cout << "witness: " << (m.insert ? "insert" : "delete") << " edge "
                              << g.names[m.tuple[0]] << " " << g.names[m.tuple[1]] << "\n";
            }
            return 0;
        }

        if (*c_pot) {
            Graph g = parse_graph_file(p_input);
            GSFFamily fam = load_family(p_family);
            auto report =
                run_trials(ball_sampling_tester(fam, p_radius), g, p_trials, opt.seed, p_ceiling);
            std::cout << "seed: " << opt.seed << "\n";
            std::cout << "trials: " << report.trials << "\n";
            std::cout << "accept: " << report.acceptances << "\n";
            std::cout << "est: " << report.estimate << " " << report.lo << " " << report.hi
                      << "\n";
            std::cout << "queries:";
            for (long q : report.queries_per_trial) std::cout << " " << q;
            std::cout << "\n";
            return 0;
        }

        if (*c_gap) {
            Graph g = parse_graph_file(gp_input);
            std::cout.precision(17);
            std::cout << "gap: " << spectral_gap(g) << "\n";
            return 0;
        }

        if (*c_covers) {
            Graph g = parse_graph_file(cv_graph);
            GSFFamily fam = load_family(cv_family);
            auto b = parse_vertex_set(g, cv_set);
            std::cout << "result: " << (covers_family(g, b, fam) ? "true" : "false") << "\n";
            return 0;
        }

        if (*c_probe) {
            Graph g = parse_graph_file(pr_graph);
            GSFFamily fam = load_family(pr_family);
            auto b = parse_vertex_set(g, pr_set);
            ProbeReport report = propagation_probe(g, fam, b, pr_budget, pr_cap);
            std::cout << "covers: " << (report.covers ? "true" : "false") << "\n";
            if (report.repair_size)
                std::cout << "repair: " << *report.repair_size << "\n";
            else
                std::cout << "repair: none\n";
            std::cout << "within-margin: " << (report.within_margin ? "true" : "false") << "\n";
            std::cout << "examined: " << report.examined << "\n";
            return 0;
        }

        throw error("no subcommand selected");
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace gsf
