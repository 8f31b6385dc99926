#include "gsf/hanf.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "gsf/enumerate.hpp"

namespace gsf {

namespace {

std::map<std::pair<int, std::string>, long> type_counts(const Structure& a,
                                                        const std::vector<int>& radii) {
    std::map<std::pair<int, std::string>, long> counts;
    for (int r : radii) {
        auto keys = element_type_keys(a, r);
        for (const auto& k : keys) ++counts[{r, k}];
    }
    return counts;
}

}  // namespace

bool evaluate_hanf(const HanfDNF& phi, const Structure& a) {
    std::set<int> radii;
    for (const auto& dis : phi.disjuncts)
        for (const auto& at : dis) radii.insert(at.radius);
    auto counts = type_counts(a, std::vector<int>(radii.begin(), radii.end()));
    auto count_of = [&](const HanfAtom& at) {
        auto it = counts.find({at.radius, at.type_key});
        return it == counts.end() ? 0L : it->second;
    };
    for (const auto& dis : phi.disjuncts) {
        bool all = true;
        for (const auto& at : dis) {
            bool holds = count_of(at) >= at.threshold;
            if (at.negated) holds = !holds;
            if (!holds) {
                all = false;
                break;
            }
        }
        if (all) return true;
    }
    return false;
}

bool evaluate_hanf(const HanfDNF& phi, const Graph& g) {
    return evaluate_hanf(phi, to_structure(g));
}

HanfDNF lift_radius(const HanfAtom& atom, int target_radius, const TypeCatalog& catalog) {
    if (atom.negated) throw error("lift_radius takes a positive atom; lift negations via complement");
    if (atom.threshold < 1) throw error("atom threshold must be >= 1");
    if (target_radius < atom.radius) throw error("target radius below atom radius");
    if (atom.radius == target_radius) {
        HanfDNF id;
        id.disjuncts.push_back({atom});
        return id;
    }
    if (!catalog.exhaustive || catalog.radius != target_radius)
        throw error("lift_radius needs an exhaustive catalog at the target radius");
    if (catalog.representatives.empty())
        throw error("lift_radius needs catalog representatives");

    // target types whose restriction to the atom radius is the atom type
    std::vector<std::string> restricting;
    for (int i = 0; i < catalog.size(); ++i) {
        const Ball& rep = catalog.representatives[i];
        Ball small = extract_ball(rep.structure, rep.center, atom.radius);
        if (ball_key(small) == atom.type_key) restricting.push_back(catalog.keys[i]);
    }
    HanfDNF out;
    if (restricting.empty()) return out;  // no model at the target radius: constant false

    // ordered compositions of m into k nonnegative parts; zero parts dropped
    const int k = static_cast<int>(restricting.size());
    std::vector<long> parts(k, 0);
    auto emit = [&]() {
        std::vector<HanfAtom> dis;
        for (int i = 0; i < k; ++i)
            if (parts[i] > 0)
                dis.push_back({parts[i], target_radius, restricting[i], false});
        out.disjuncts.push_back(std::move(dis));
    };
    auto rec = [&](auto&& self, int idx, long remaining) -> void {
        if (idx == k - 1) {
            parts[idx] = remaining;
            emit();
            return;
        }
        for (long take = 0; take <= remaining; ++take) {
            parts[idx] = take;
            self(self, idx + 1, remaining - take);
        }
    };
    rec(rec, 0, atom.threshold);
    return out;
}

std::vector<NeighbourhoodProfile> compile_hanf_to_profiles(const HanfDNF& phi,
                                                           const TypeCatalog& catalog) {
    for (const auto& dis : phi.disjuncts)
        for (const auto& at : dis)
            if (at.radius != catalog.radius)
                throw error("compile_hanf_to_profiles: mixed radii, lift first");

    std::vector<NeighbourhoodProfile> out;
    for (const auto& dis : phi.disjuncts) {
        NeighbourhoodProfile rho;
        rho.radius = catalog.radius;
        rho.degree = catalog.degree;
        rho.signature_repr = signature_repr(catalog.sig);
        std::map<std::string, long> lo;
        std::map<std::string, long> hi;  // smallest negated threshold
        bool known_type = true;
        for (const auto& at : dis) {
            if (!catalog.index_of(at.type_key)) {
                // a positive demand on a type outside the exhaustive catalog
                // has no bounded-degree model; a negated one is vacuous
                if (!at.negated) known_type = false;
                continue;
            }
            if (at.negated) {
                auto it = hi.find(at.type_key);
                if (it == hi.end() || at.threshold < it->second) hi[at.type_key] = at.threshold;
            } else {
                auto it = lo.find(at.type_key);
                if (it == lo.end() || at.threshold > it->second) lo[at.type_key] = at.threshold;
            }
        }
        if (!known_type) continue;  // dropped: unsatisfiable on this class
        bool empty_interval = false;
        for (const auto& key : catalog.keys) {
            long k = lo.count(key) ? lo[key] : 0;
            if (hi.count(key)) {
                long l = hi[key] - 1;  // not >= m means at most m-1
                if (k > l) {
                    empty_interval = true;
                    break;
                }
                rho.set(key, Interval::bounded(k, l));
            } else {
                rho.set(key, Interval::at_least(k));
            }
        }
        if (empty_interval) continue;  // no model at all: removable
        out.push_back(std::move(rho));
    }
    return out;
}

HanfDNF profile_to_hanf(const NeighbourhoodProfile& rho) {
    std::vector<HanfAtom> dis;
    for (const auto& [key, iv] : rho.bounds) {
        if (iv.lo >= 1) dis.push_back({iv.lo, rho.radius, key, false});
        if (!iv.unbounded) dis.push_back({iv.hi + 1, rho.radius, key, true});
    }
    HanfDNF out;
    out.disjuncts.push_back(std::move(dis));
    return out;
}

std::optional<Graph> profile_satisfiable_within(const NeighbourhoodProfile& rho, int max_n) {
    for (int n = 0; n <= max_n; ++n)
        for (const Graph& g : all_graphs(n, rho.degree))
            if (obeys_profile(g, rho)) return g;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Sentence files
// ---------------------------------------------------------------------------

HanfDNF parse_hanf(std::istream& is) {
    HanfDNF phi;
    std::string line;
    int line_no = 0;
    bool header = false;
    bool in_disjunct = false;
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
            if (tok.size() != 2 || tok[0] != "hanf" || tok[1] != "v1")
                throw parse_error("expected 'hanf v1' header", line_no);
            header = true;
            continue;
        }
        if (tok[0] == "disjunct:") {
            phi.disjuncts.emplace_back();
            in_disjunct = true;
        } else if (tok[0] == "atom:") {
            if (!in_disjunct) throw parse_error("atom outside a disjunct", line_no);
            if (tok.size() != 4) throw parse_error("atom: <op>m r key", line_no);
            HanfAtom at;
            std::string op = tok[1];
            if (op.rfind("not>=", 0) == 0) {
                at.negated = true;
                at.threshold = std::stol(op.substr(5));
            } else if (op.rfind(">=", 0) == 0) {
                at.negated = false;
                at.threshold = std::stol(op.substr(2));
            } else {
                throw parse_error("atom operator must be >=m or not>=m", line_no);
            }
            if (at.threshold < 1) throw parse_error("threshold must be >= 1", line_no);
            at.radius = std::stoi(tok[2]);
            at.type_key = tok[3];
            phi.disjuncts.back().push_back(std::move(at));
        } else {
            throw parse_error("unrecognized directive '" + tok[0] + "'", line_no);
        }
    }
    if (!header) throw parse_error("missing 'hanf v1' header", line_no);
    return phi;
}

HanfDNF parse_hanf_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw error("cannot open " + path);
    return parse_hanf(f);
}

void write_hanf(std::ostream& os, const HanfDNF& phi) {
    os << "hanf v1\n";
    for (const auto& dis : phi.disjuncts) {
        os << "disjunct:\n";
        for (const auto& at : dis)
            os << "  atom: " << (at.negated ? "not>=" : ">=") << at.threshold << " " << at.radius
               << " " << at.type_key << "\n";
    }
}

}  // namespace gsf
