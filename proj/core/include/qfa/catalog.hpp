#pragma once

#include "qfa/dfa.hpp"
#include "qfa/qfa.hpp"

#include <string>
#include <vector>

namespace qfa {

/// A QFA together with the language it recognizes and the best possible
/// probability of a correct answer for that language.
struct NamedAutomaton {
    std::string name;
    QfaSpec qfa;
    LanguageOracle oracle;
    double claimed_probability = 1.0;
};

/// 5-state automaton for a+ over {a,b}; correct with probability
/// (52+4*sqrt(7))/81 on every word.
NamedAutomaton build_aplus();

/// 3k-state automaton for the k-cycle language over b1..bk, z1..zk; correct
/// with probability k/(2k-1). Throws for k < 2.
NamedAutomaton build_kcycles(int k);

/// 4-state automaton for {empty} + a+b(a|b)* over {a,b}; correct with
/// probability 1/2 + 3*sqrt(15)/50.
NamedAutomaton build_eps_aplusb();

/// Minimal-by-construction DFAs for the catalog languages. Supported names:
/// "aplus", "astar-bstar", "ends-a", "eps-aplusb", "sigma-star", "l1-<k>".
DfaSpec build_language_dfa(const std::string& name);

/// Membership predicates paired with build_language_dfa, written directly
/// against the language definitions.
LanguageOracle language_oracle(const std::string& name);

std::vector<std::string> dfa_catalog_names();

}  // namespace qfa
