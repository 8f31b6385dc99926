#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gsf/neighborhoods.hpp"
#include "gsf/structures.hpp"

namespace gsf {

// Hanf-normal-form sentences in disjunctive normal form. There is no FO
// parser here: input is already Hanf-form, read from the sentence file
// format below.

struct HanfAtom {
    long threshold = 1;    // m >= 1
    int radius = 0;        // r of the referenced type
    std::string type_key;  // canonical r-type key
    bool negated = false;

    bool operator==(const HanfAtom&) const = default;
};

struct HanfDNF {
    // empty list = constant false; one empty conjunction = constant true
    std::vector<std::vector<HanfAtom>> disjuncts;

    static HanfDNF constant_true() { return HanfDNF{{{}}}; }
    static HanfDNF constant_false() { return HanfDNF{}; }
    bool operator==(const HanfDNF&) const = default;
};

// standard semantics: an atom holds iff the number of elements of the
// referenced type reaches the threshold
bool evaluate_hanf(const HanfDNF& phi, const Structure& a);
bool evaluate_hanf(const HanfDNF& phi, const Graph& g);

// Radius lifting of a positive threshold atom: the disjunction over all
// ways of distributing the threshold across the target-radius types that
// restrict to the atom's type. Needs an exhaustive catalog at the target
// radius; negated atoms are lifted by their callers via complementation.
HanfDNF lift_radius(const HanfAtom& atom, int target_radius, const TypeCatalog& catalog);

// One profile per disjunct: lower bounds from positive thresholds, upper
// bounds one below the smallest negated threshold, [0,inf) elsewhere over
// the catalog. Disjuncts with an empty interval have no model at all and
// are dropped; satisfiability beyond that is probed, never decided (see
// profile_satisfiable_within).
std::vector<NeighbourhoodProfile> compile_hanf_to_profiles(const HanfDNF& phi,
                                                           const TypeCatalog& catalog);

// Encodes each listed bound [k,l] as >=k and not>=l+1 atoms. Types bounded
// only implicitly (unlisted, [0,0]) cannot be named by a sentence; pass
// profiles that list every catalog type when an exact round-trip is needed.
HanfDNF profile_to_hanf(const NeighbourhoodProfile& rho);

// bounded small-model search over graphs: a witness proves satisfiability,
// absence up to max_n proves nothing (reported as unknown by callers)
std::optional<Graph> profile_satisfiable_within(const NeighbourhoodProfile& rho, int max_n);

HanfDNF parse_hanf(std::istream& is);
HanfDNF parse_hanf_file(const std::string& path);
void write_hanf(std::ostream& os, const HanfDNF& phi);

}  // namespace gsf
