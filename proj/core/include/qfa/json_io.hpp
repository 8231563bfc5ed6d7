#pragma once

#include "qfa/detector.hpp"
#include "qfa/dfa.hpp"
#include "qfa/optimize.hpp"
#include "qfa/qfa.hpp"

#include <string>

namespace qfa {

/// QFA file format: {"states": [..], "alphabet": [..], "initial": [[re,im],..],
/// "accepting": [..], "rejecting": [..], "transitions": {letter: row-major
/// [[re,im],..]}}. The endmarker keys are "kappa" and "$".
std::string qfa_to_json(const QfaSpec& spec);
QfaSpec qfa_from_json(const std::string& text);
void save_qfa(const QfaSpec& spec, const std::string& path);
QfaSpec load_qfa(const std::string& path);

/// DFA file format: {"states": [..], "alphabet": [..], "initial": name,
/// "accepting": [..], "transitions": {state: {letter: state}}}.
std::string dfa_to_json(const DfaSpec& dfa);
DfaSpec dfa_from_json(const std::string& text);
void save_dfa(const DfaSpec& dfa, const std::string& path);
DfaSpec load_dfa(const std::string& path);

/// Report schemas used by the CLI: detector reports carry bound, the two
/// recognizability flags and the witness list; optimizer results carry
/// problem, p, witness, residual, seed and restarts.
std::string report_to_json(const ConstructionReport& report);
std::string optimization_to_json(const OptimizationResult& result);

}  // namespace qfa
