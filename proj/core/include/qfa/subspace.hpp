#pragma once

#include "qfa/qfa.hpp"

#include <optional>

namespace qfa {

/// Orthogonal split of the non-halting span under a set of generator words:
/// e1 is the largest subspace mapped isometrically into itself by every V'_x
/// (the part that never leaks into halting states), e2 its orthocomplement.
/// Vectors are expressed in the full state space.
struct SubspacePair {
    Basis e1;
    Basis e2;
    int ambient_dim = 0;  // dimension of the non-halting span
    /// Set when vectors with isometry defect between tol and 1e-6 exist;
    /// those are classified into e2.
    bool borderline = false;
};

SubspacePair decompose(const QfaSpec& spec, const std::vector<Word>& words, double tol = 1e-9);

/// Breadth-first search over concatenations of the generator words, ordered
/// by total length, for a word t with ||V'_t(psi)|| < eps. psi must lie in
/// span(e2); the empty word is a valid answer. Returns nullopt when max_len
/// (total symbols) is exhausted.
std::optional<Word> escape_word(const QfaSpec& spec, const std::vector<Word>& words,
                                const CVector& psi, double eps, int max_len);

/// Smallest i <= max_iter with ||V'_{x^i}(psi) - psi|| <= eps, for psi in
/// span(e1) of the single-word decomposition.
std::optional<int> recurrence_exponent(const QfaSpec& spec, const Word& word,
                                       const CVector& psi, double eps, int max_iter);

}  // namespace qfa
