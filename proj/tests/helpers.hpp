#pragma once

#include "qfa/linalg.hpp"
#include "qfa/qfa.hpp"

#include <cstdint>
#include <numbers>
#include <random>

namespace qfa::testing {

/// Deterministic RNG for test data (Box-Muller gaussian, independent of the
/// standard library's distribution implementations).
class TestRng {
public:
    explicit TestRng(std::uint64_t seed) : eng_(seed) {}

    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int uniform_int(int n) { return static_cast<int>(eng_() % static_cast<std::uint64_t>(n)); }

    double gaussian() {
        if (have_) {
            have_ = false;
            return cached_;
        }
        double u1 = uniform();
        while (u1 <= 1e-300) u1 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * std::numbers::pi * uniform();
        cached_ = r * std::sin(a);
        have_ = true;
        return r * std::cos(a);
    }

    Complex cgaussian() { return {gaussian(), gaussian()}; }

    CVector unit_vector(int n) {
        CVector v(n);
        for (int i = 0; i < n; ++i) v(i) = cgaussian();
        double nv = v.norm();
        return nv > 1e-12 ? CVector(v / nv) : CVector(CVector::Unit(n, 0));
    }

private:
    std::mt19937_64 eng_;
    bool have_ = false;
    double cached_ = 0.0;
};

inline CMatrix random_unitary(int n, TestRng& rng) {
    // Gram-Schmidt on gaussian columns; re-orthogonalized for stability.
    std::vector<CVector> cols;
    for (int j = 0; j < n; ++j) {
        CVector v(n);
        for (int i = 0; i < n; ++i) v(i) = rng.cgaussian();
        for (int pass = 0; pass < 2; ++pass) {
            for (const CVector& u : cols) v -= u.dot(v) * u;
        }
        double nv = v.norm();
        if (nv < 1e-9) {
            v = CVector::Unit(n, j);
            for (const CVector& u : cols) v -= u.dot(v) * u;
            nv = v.norm();
        }
        cols.push_back(v / nv);
    }
    CMatrix m(n, n);
    for (int j = 0; j < n; ++j) m.col(j) = cols[j];
    return m;
}

/// Random valid 4-state QFA over {a,b} with two non-halting, one accepting
/// and one rejecting state, in shuffled order.
inline QfaSpec random_qfa(TestRng& rng) {
    const int n = 4;
    std::vector<std::string> names{"s0", "s1", "s2", "s3"};
    std::vector<int> role{0, 0, 1, 2};  // 0 = non-halting, 1 = acc, 2 = rej
    for (int i = n - 1; i > 0; --i) std::swap(role[i], role[rng.uniform_int(i + 1)]);

    QfaSpec spec;
    spec.states = names;
    spec.alphabet = {"a", "b"};
    for (int i = 0; i < n; ++i) {
        if (role[i] == 1) spec.accepting.push_back(names[i]);
        if (role[i] == 2) spec.rejecting.push_back(names[i]);
    }
    for (const Symbol& s : {Symbol("a"), Symbol("b"), kLeftEndmarker, kRightEndmarker}) {
        spec.transitions[s] = random_unitary(n, rng);
    }
    spec.initial = rng.unit_vector(n);
    return spec;
}

inline Word random_word(const std::vector<Symbol>& alphabet, int max_len, TestRng& rng) {
    int len = rng.uniform_int(max_len + 1);
    Word w;
    for (int i = 0; i < len; ++i) w.push_back(alphabet[rng.uniform_int(
        static_cast<int>(alphabet.size()))]);
    return w;
}

}  // namespace qfa::testing
