#pragma once

#include "qfa/dfa.hpp"

#include <map>
#include <string>
#include <vector>

namespace qfa {

/// The DFA fragments that cap the probability achievable by a measure-many
/// QFA, plus the return cycle that rules recognition out entirely.
enum class WitnessKind {
    one_cycle,
    return_cycle,
    two_cycles_row,
    parallel_cycles,
    incomparable_pair,
};

std::string to_string(WitnessKind kind);

struct ConstructionWitness {
    WitnessKind kind;
    int k = 0;                         // parallel_cycles only
    std::vector<std::string> states;   // q1,q2 | q1,q2,q3 | q0..qk
    std::map<std::string, Word> words; // "x","y","z1","z2" or "x1".."xk"
};

struct ConstructionReport {
    double bound = 1.0;           // tightest probability cap among witnesses
    bool rfa_recognizable = true; // no one-cycle fragment
    bool qfa_recognizable = true; // no return-cycle fragment
    std::vector<ConstructionWitness> witnesses;
    int minimized_states = 0;
    std::string note;             // metadata, e.g. reclassified two-cycle candidates
};

/// Probability caps implied by each fragment kind.
namespace bounds {
double one_cycle();          // (52 + 4*sqrt(7)) / 81
double two_cycles_row();     // numeric optimum of the second optimization problem
double parallel_cycles(int k);  // k / (2k - 1)
double incomparable_pair();  // 1/2 + 3*sqrt(15)/50
}  // namespace bounds

/// All detectors expect a minimal DFA (see minimize); analyze() minimizes for
/// you. Witnesses carry shortest words, ties broken by alphabet order.
std::vector<ConstructionWitness> detect_one_cycle(const DfaSpec& minimal);
std::vector<ConstructionWitness> detect_return_cycle(const DfaSpec& minimal);
std::vector<ConstructionWitness> detect_two_cycles_row(const DfaSpec& minimal);
std::vector<ConstructionWitness> detect_parallel_cycles(const DfaSpec& minimal, int k);
std::vector<ConstructionWitness> detect_incomparable_pair(const DfaSpec& minimal);

ConstructionReport analyze(const DfaSpec& dfa, int k_max = 3);

}  // namespace qfa
