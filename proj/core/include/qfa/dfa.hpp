#pragma once

#include "qfa/qfa.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qfa {

/// A complete deterministic finite automaton over symbol tokens.
struct DfaSpec {
    std::vector<std::string> states;
    std::vector<Symbol> alphabet;
    std::string initial;
    std::vector<std::string> accepting;
    std::map<std::string, std::map<Symbol, std::string>> transitions;

    int size() const { return static_cast<int>(states.size()); }
    int state_index(const std::string& name) const;
    bool is_accepting(const std::string& name) const;
    const std::string& next(const std::string& state, const Symbol& letter) const;
    std::string next_word(const std::string& state, const Word& word) const;
    bool accepts(const Word& word) const;
};

/// Empty iff the DFA is well formed (total transition map, known states).
std::vector<std::string> validate(const DfaSpec& dfa);

/// Unique minimal DFA: unreachable states dropped, equivalent states merged.
/// States are renamed to the first original member of each class, listed in
/// breadth-first discovery order.
DfaSpec minimize(const DfaSpec& dfa);

enum class LanguageRelation { equal, subset, superset, incomparable };

struct RelationWitness {
    LanguageRelation relation = LanguageRelation::equal;
    std::optional<Word> in_a_not_b;  // shortest word accepted from qa, not qb
    std::optional<Word> in_b_not_a;
};

/// Compares the languages of two start states via the product automaton.
RelationWitness state_language_relation(const DfaSpec& dfa, const std::string& qa,
                                        const std::string& qb);

}  // namespace qfa
