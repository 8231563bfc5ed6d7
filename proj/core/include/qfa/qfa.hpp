#pragma once

#include "qfa/linalg.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace qfa {

/// One letter of the working alphabet. Multi-character tokens ("b1", "z2")
/// are single symbols.
using Symbol = std::string;
using Word = std::vector<Symbol>;

inline const Symbol kLeftEndmarker = "kappa";
inline const Symbol kRightEndmarker = "$";

std::string word_to_string(const Word& w);

/// A measure-many QFA: after each letter the state is measured with the three
/// outcomes accept / reject / continue. Transition matrices act on the
/// `states` order and must include the two endmarkers.
struct QfaSpec {
    std::vector<std::string> states;
    std::vector<Symbol> alphabet;              // input alphabet, endmarkers excluded
    std::map<Symbol, CMatrix> transitions;     // alphabet + kappa + $
    CVector initial;
    std::vector<std::string> accepting;
    std::vector<std::string> rejecting;

    int dim() const { return static_cast<int>(states.size()); }
    int state_index(const std::string& name) const;  // -1 if unknown
    bool has_letter(const Symbol& s) const { return transitions.count(s) > 0; }

    std::vector<int> accepting_indices() const;
    std::vector<int> rejecting_indices() const;
    std::vector<int> nonhalting_indices() const;
};

struct StepOutcome {
    double p_acc_step = 0.0;
    double p_rej_step = 0.0;
    CVector residual;  // unnormalized non-halting part
};

struct RunResult {
    double p_acc = 0.0;
    double p_rej = 0.0;
    CVector residual;  // unnormalized non-halting part after $
};

using LanguageOracle = std::function<bool(const Word&)>;

/// Empty iff the spec is well formed: unitary transitions at 1e-9, disjoint
/// accept/reject sets, unit initial state, endmarkers present and not in the
/// input alphabet. Each entry names the failing invariant.
std::vector<std::string> validate(const QfaSpec& spec);

/// Applies V_letter and measures. The residual is left unnormalized.
StepOutcome step(const QfaSpec& spec, const CVector& state, const Symbol& letter);

/// Folds step over kappa, the letters of the word and $, accumulating the
/// halting probabilities.
RunResult run(const QfaSpec& spec, const Word& word);

/// The operator V'_w: per-letter "apply V, project to non-halting states",
/// composed right to left over the letters of the (working-alphabet) word.
CMatrix nonhalting_operator(const QfaSpec& spec, const Word& word);

/// Min over the given words of the probability of the correct answer.
double recognition_margin(const QfaSpec& spec, const LanguageOracle& oracle,
                          const std::vector<Word>& words);

/// Splits a raw string into symbols: per character when every alphabet token
/// is a single character, otherwise on whitespace.
Word tokenize(const QfaSpec& spec, const std::string& raw);
Word tokenize(const std::vector<Symbol>& alphabet, const std::string& raw);

/// All words of length 0..max_len in alphabet order, shortest first.
std::vector<Word> enumerate_words(const std::vector<Symbol>& alphabet, int max_len);

}  // namespace qfa
