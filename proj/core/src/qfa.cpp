#include "qfa/qfa.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qfa {

namespace {

constexpr double kUnitaryTol = 1e-9;
constexpr double kNormTol = 1e-12;

std::set<std::string> as_set(const std::vector<std::string>& v) {
    return {v.begin(), v.end()};
}

}  // namespace

std::string word_to_string(const Word& w) {
    bool single = std::all_of(w.begin(), w.end(),
                              [](const Symbol& s) { return s.size() == 1; });
    std::string out;
    for (size_t i = 0; i < w.size(); ++i) {
        if (!single && i > 0) out += ' ';
        out += w[i];
    }
    return out;
}

int QfaSpec::state_index(const std::string& name) const {
    for (size_t i = 0; i < states.size(); ++i) {
        if (states[i] == name) return static_cast<int>(i);
    }
    return -1;
}

std::vector<int> QfaSpec::accepting_indices() const {
    std::vector<int> out;
    for (const auto& s : accepting) {
        int i = state_index(s);
        if (i >= 0) out.push_back(i);
    }
    return out;
}

std::vector<int> QfaSpec::rejecting_indices() const {
    std::vector<int> out;
    for (const auto& s : rejecting) {
        int i = state_index(s);
        if (i >= 0) out.push_back(i);
    }
    return out;
}

std::vector<int> QfaSpec::nonhalting_indices() const {
    auto acc = as_set(accepting);
    auto rej = as_set(rejecting);
    std::vector<int> out;
    for (size_t i = 0; i < states.size(); ++i) {
        if (!acc.count(states[i]) && !rej.count(states[i])) out.push_back(static_cast<int>(i));
    }
    return out;
}

std::vector<std::string> validate(const QfaSpec& spec) {
    std::vector<std::string> bad;
    const int n = spec.dim();
    if (n == 0) {
        bad.push_back("no states");
        return bad;
    }
    {
        std::set<std::string> seen;
        for (const auto& s : spec.states) {
            if (!seen.insert(s).second) bad.push_back("duplicate state name: " + s);
        }
    }
    auto acc = as_set(spec.accepting);
    auto rej = as_set(spec.rejecting);
    for (const auto& s : spec.accepting) {
        if (spec.state_index(s) < 0) bad.push_back("accepting state unknown: " + s);
        if (rej.count(s)) bad.push_back("state in both accepting and rejecting sets: " + s);
    }
    for (const auto& s : spec.rejecting) {
        if (spec.state_index(s) < 0) bad.push_back("rejecting state unknown: " + s);
    }

    std::vector<Symbol> working = spec.alphabet;
    working.push_back(kLeftEndmarker);
    working.push_back(kRightEndmarker);
    for (const auto& a : spec.alphabet) {
        if (a == kLeftEndmarker || a == kRightEndmarker) {
            bad.push_back("endmarker used as input letter: " + a);
        }
    }
    for (const auto& a : working) {
        auto it = spec.transitions.find(a);
        if (it == spec.transitions.end()) {
            bad.push_back("missing transition matrix for letter: " + a);
            continue;
        }
        const CMatrix& m = it->second;
        if (m.rows() != n || m.cols() != n) {
            bad.push_back("transition matrix for letter " + a + " has wrong shape");
            continue;
        }
        if (!m.allFinite()) {
            bad.push_back("transition matrix for letter " + a + " has non-finite entries");
            continue;
        }
        if (!is_unitary(m, kUnitaryTol)) {
            bad.push_back("transition matrix for letter " + a + " is not unitary");
        }
    }

    if (spec.initial.size() != n) {
        bad.push_back("initial state has wrong dimension");
    } else if (std::abs(spec.initial.norm() - 1.0) > kNormTol) {
        bad.push_back("initial state is not a unit vector");
    }
    return bad;
}

StepOutcome step(const QfaSpec& spec, const CVector& state, const Symbol& letter) {
    auto it = spec.transitions.find(letter);
    if (it == spec.transitions.end()) {
        throw std::invalid_argument("step: unknown letter: " + letter);
    }
    if (state.size() != spec.dim()) {
        throw std::invalid_argument("step: state dimension mismatch");
    }
    CVector next = it->second * state;

    StepOutcome out;
    out.residual = CVector::Zero(spec.dim());
    auto acc = as_set(spec.accepting);
    auto rej = as_set(spec.rejecting);
    for (int i = 0; i < spec.dim(); ++i) {
        double w = std::norm(next(i));
        if (acc.count(spec.states[i])) {
            out.p_acc_step += w;
        } else if (rej.count(spec.states[i])) {
            out.p_rej_step += w;
        } else {
            out.residual(i) = next(i);
        }
    }
    return out;
}

RunResult run(const QfaSpec& spec, const Word& word) {
    for (const Symbol& s : word) {
        if (std::find(spec.alphabet.begin(), spec.alphabet.end(), s) == spec.alphabet.end()) {
            throw std::invalid_argument("run: letter outside the input alphabet: " + s);
        }
    }
    Word full;
    full.reserve(word.size() + 2);
    full.push_back(kLeftEndmarker);
    full.insert(full.end(), word.begin(), word.end());
    full.push_back(kRightEndmarker);

    RunResult res;
    CVector psi = spec.initial;
    for (const Symbol& s : full) {
        StepOutcome o = step(spec, psi, s);
        res.p_acc += o.p_acc_step;
        res.p_rej += o.p_rej_step;
        psi = std::move(o.residual);
    }
    res.residual = std::move(psi);
    return res;
}

CMatrix nonhalting_operator(const QfaSpec& spec, const Word& word) {
    if (word.empty()) {
        throw std::invalid_argument("nonhalting_operator: empty word");
    }
    const int n = spec.dim();
    CMatrix proj = CMatrix::Zero(n, n);
    for (int i : spec.nonhalting_indices()) proj(i, i) = 1.0;

    CMatrix op = CMatrix::Identity(n, n);
    for (const Symbol& s : word) {
        auto it = spec.transitions.find(s);
        if (it == spec.transitions.end()) {
            throw std::invalid_argument("nonhalting_operator: unknown letter: " + s);
        }
        op = proj * it->second * op;
    }
    return op;
}

double recognition_margin(const QfaSpec& spec, const LanguageOracle& oracle,
                          const std::vector<Word>& words) {
    if (words.empty()) {
        throw std::invalid_argument("recognition_margin: empty word list");
    }
    double margin = 1.0;
    for (const Word& w : words) {
        RunResult r = run(spec, w);
        margin = std::min(margin, oracle(w) ? r.p_acc : r.p_rej);
    }
    return margin;
}

Word tokenize(const std::vector<Symbol>& alphabet, const std::string& raw) {
    bool single = std::all_of(alphabet.begin(), alphabet.end(),
                              [](const Symbol& s) { return s.size() == 1; });
    Word w;
    if (single) {
        for (char c : raw) {
            if (c == ' ') continue;
            w.push_back(std::string(1, c));
        }
    } else {
        std::istringstream in(raw);
        Symbol tok;
        while (in >> tok) w.push_back(tok);
    }
    return w;
}

Word tokenize(const QfaSpec& spec, const std::string& raw) {
    return tokenize(spec.alphabet, raw);
}

std::vector<Word> enumerate_words(const std::vector<Symbol>& alphabet, int max_len) {
    std::vector<Word> out;
    out.push_back({});
    size_t level_begin = 0;
    for (int len = 1; len <= max_len; ++len) {
        size_t level_end = out.size();
        for (size_t i = level_begin; i < level_end; ++i) {
            for (const Symbol& s : alphabet) {
                Word w = out[i];
                w.push_back(s);
                out.push_back(std::move(w));
            }
        }
        level_begin = level_end;
    }
    return out;
}

}  // namespace qfa
