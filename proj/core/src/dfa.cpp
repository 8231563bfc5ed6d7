#include "qfa/dfa.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

namespace qfa {

int DfaSpec::state_index(const std::string& name) const {
    for (size_t i = 0; i < states.size(); ++i) {
        if (states[i] == name) return static_cast<int>(i);
    }
    return -1;
}

bool DfaSpec::is_accepting(const std::string& name) const {
    return std::find(accepting.begin(), accepting.end(), name) != accepting.end();
}

const std::string& DfaSpec::next(const std::string& state, const Symbol& letter) const {
    auto row = transitions.find(state);
    if (row == transitions.end()) throw std::invalid_argument("dfa: unknown state " + state);
    auto cell = row->second.find(letter);
    if (cell == row->second.end()) throw std::invalid_argument("dfa: unknown letter " + letter);
    return cell->second;
}

std::string DfaSpec::next_word(const std::string& state, const Word& word) const {
    std::string q = state;
    for (const Symbol& s : word) q = next(q, s);
    return q;
}

bool DfaSpec::accepts(const Word& word) const {
    return is_accepting(next_word(initial, word));
}

std::vector<std::string> validate(const DfaSpec& dfa) {
    std::vector<std::string> bad;
    if (dfa.states.empty()) {
        bad.push_back("no states");
        return bad;
    }
    {
        std::set<std::string> seen;
        for (const auto& s : dfa.states) {
            if (!seen.insert(s).second) bad.push_back("duplicate state name: " + s);
        }
    }
    if (dfa.state_index(dfa.initial) < 0) bad.push_back("initial state unknown: " + dfa.initial);
    for (const auto& s : dfa.accepting) {
        if (dfa.state_index(s) < 0) bad.push_back("accepting state unknown: " + s);
    }
    for (const auto& s : dfa.states) {
        auto row = dfa.transitions.find(s);
        if (row == dfa.transitions.end()) {
            bad.push_back("missing transition row for state: " + s);
            continue;
        }
        for (const auto& a : dfa.alphabet) {
            auto cell = row->second.find(a);
            if (cell == row->second.end()) {
                bad.push_back("missing transition for (" + s + ", " + a + ")");
            } else if (dfa.state_index(cell->second) < 0) {
                bad.push_back("transition target unknown: " + cell->second);
            }
        }
    }
    return bad;
}

DfaSpec minimize(const DfaSpec& dfa) {
    auto bad = validate(dfa);
    if (!bad.empty()) throw std::invalid_argument("minimize: invalid DFA: " + bad.front());

    // Reachable states, breadth first in alphabet order.
    std::vector<std::string> reach;
    std::set<std::string> seen;
    std::deque<std::string> queue{dfa.initial};
    seen.insert(dfa.initial);
    while (!queue.empty()) {
        std::string q = queue.front();
        queue.pop_front();
        reach.push_back(q);
        for (const auto& a : dfa.alphabet) {
            const std::string& t = dfa.next(q, a);
            if (seen.insert(t).second) queue.push_back(t);
        }
    }

    // Moore partition refinement over the reachable part.
    std::map<std::string, int> block;
    for (const auto& q : reach) block[q] = dfa.is_accepting(q) ? 1 : 0;
    for (;;) {
        std::map<std::vector<int>, int> fresh;
        std::map<std::string, int> next_block;
        for (const auto& q : reach) {
            std::vector<int> sig{block[q]};
            for (const auto& a : dfa.alphabet) sig.push_back(block[dfa.next(q, a)]);
            auto [it, added] = fresh.emplace(sig, static_cast<int>(fresh.size()));
            (void)added;
            next_block[q] = it->second;
        }
        if (next_block == block) break;
        block = std::move(next_block);
    }

    // Name each class after its first representative in discovery order.
    std::map<int, std::string> name;
    for (const auto& q : reach) {
        if (!name.count(block[q])) name[block[q]] = q;
    }

    DfaSpec out;
    out.alphabet = dfa.alphabet;
    out.initial = name[block[dfa.initial]];
    std::set<std::string> emitted;
    for (const auto& q : reach) {
        const std::string& rep = name[block[q]];
        if (!emitted.insert(rep).second) continue;
        out.states.push_back(rep);
        if (dfa.is_accepting(q)) out.accepting.push_back(rep);
        for (const auto& a : dfa.alphabet) {
            out.transitions[rep][a] = name[block[dfa.next(q, a)]];
        }
    }
    return out;
}

RelationWitness state_language_relation(const DfaSpec& dfa, const std::string& qa,
                                        const std::string& qb) {
    if (dfa.state_index(qa) < 0 || dfa.state_index(qb) < 0) {
        throw std::invalid_argument("state_language_relation: unknown state");
    }
    RelationWitness out;
    using Pair = std::pair<std::string, std::string>;
    std::set<Pair> seen;
    std::deque<std::pair<Pair, Word>> queue;
    queue.push_back({{qa, qb}, {}});
    seen.insert({qa, qb});
    while (!queue.empty() && (!out.in_a_not_b || !out.in_b_not_a)) {
        auto [pair, word] = queue.front();
        queue.pop_front();
        bool a_acc = dfa.is_accepting(pair.first);
        bool b_acc = dfa.is_accepting(pair.second);
        if (a_acc && !b_acc && !out.in_a_not_b) out.in_a_not_b = word;
        if (b_acc && !a_acc && !out.in_b_not_a) out.in_b_not_a = word;
        for (const auto& s : dfa.alphabet) {
            Pair t{dfa.next(pair.first, s), dfa.next(pair.second, s)};
            if (seen.insert(t).second) {
                Word w = word;
                w.push_back(s);
                queue.push_back({t, std::move(w)});
            }
        }
    }
    if (out.in_a_not_b && out.in_b_not_a) {
        out.relation = LanguageRelation::incomparable;
    } else if (out.in_a_not_b) {
        out.relation = LanguageRelation::superset;
    } else if (out.in_b_not_a) {
        out.relation = LanguageRelation::subset;
    } else {
        out.relation = LanguageRelation::equal;
    }
    return out;
}

}  // namespace qfa
