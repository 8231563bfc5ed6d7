#include "qfa/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace qfa {

namespace {

constexpr double kBuildTol = 1e-9;

/// Fills the unspecified columns of an n x n matrix by unitary completion.
/// `specified` maps column index -> column vector; completion columns are
/// assigned to the free indices in increasing order.
CMatrix complete_columns(int n, const std::vector<std::pair<int, CVector>>& specified) {
    std::vector<CVector> given;
    given.reserve(specified.size());
    for (const auto& [idx, col] : specified) {
        (void)idx;
        given.push_back(col);
    }
    CMatrix u = complete_to_unitary(given, kBuildTol);

    CMatrix out(n, n);
    std::vector<bool> taken(n, false);
    for (size_t j = 0; j < specified.size(); ++j) {
        out.col(specified[j].first) = u.col(static_cast<int>(j));
        taken[specified[j].first] = true;
    }
    int next = static_cast<int>(specified.size());
    for (int j = 0; j < n; ++j) {
        if (!taken[j]) out.col(j) = u.col(next++);
    }
    return out;
}

bool all_single_char(const Word& w) {
    return std::all_of(w.begin(), w.end(), [](const Symbol& s) { return s.size() == 1; });
}

}  // namespace

NamedAutomaton build_aplus() {
    const double y = (4.0 + std::sqrt(7.0)) / 9.0;  // sin^2(alpha)
    const double sa = std::sqrt(y);
    const double ca = std::sqrt(1.0 - y);

    QfaSpec m;
    m.states = {"q0", "q1", "qacc", "qrej", "qrej1"};
    m.alphabet = {"a", "b"};
    m.accepting = {"qacc"};
    m.rejecting = {"qrej", "qrej1"};
    const int n = 5;
    auto e = [n](int i) { return CVector(CVector::Unit(n, i)); };
    const int q0 = 0, q1 = 1, qacc = 2, qrej = 3, qrej1 = 4;

    m.initial = sa * e(q0) + ca * e(q1);

    m.transitions[kLeftEndmarker] = CMatrix::Identity(n, n);
    m.transitions["a"] = complete_columns(
        n, {{q0, e(q0)},
            {q1, std::sqrt((1.0 + y) / 2.0) * e(qacc) + ca / std::sqrt(2.0) * e(qrej)}});
    m.transitions["b"] = complete_columns(n, {{q0, e(qrej)}, {q1, e(qrej1)}});
    m.transitions[kRightEndmarker] = complete_columns(
        n, {{q0, sa * e(qacc) + ca * e(qrej)}, {q1, -ca * e(qacc) + sa * e(qrej)}});

    NamedAutomaton out;
    out.name = "aplus";
    out.qfa = std::move(m);
    out.oracle = language_oracle("aplus");
    out.claimed_probability = (52.0 + 4.0 * std::sqrt(7.0)) / 81.0;
    return out;
}

NamedAutomaton build_kcycles(int k) {
    if (k < 2) throw std::invalid_argument("build_kcycles: k must be >= 2");
    // Non-halting states carry indices {0, 2..k}; each has an accepting and a
    // rejecting partner.
    std::vector<int> idx{0};
    for (int j = 2; j <= k; ++j) idx.push_back(j);
    const int m = static_cast<int>(idx.size());  // == k
    const int n = 3 * m;

    QfaSpec q;
    for (int j : idx) q.states.push_back("qn" + std::to_string(j));
    for (int j : idx) q.states.push_back("qa" + std::to_string(j));
    for (int j : idx) q.states.push_back("qr" + std::to_string(j));
    for (int j : idx) q.accepting.push_back("qa" + std::to_string(j));
    for (int j : idx) q.rejecting.push_back("qr" + std::to_string(j));
    for (int i = 1; i <= k; ++i) q.alphabet.push_back("b" + std::to_string(i));
    for (int i = 1; i <= k; ++i) q.alphabet.push_back("z" + std::to_string(i));

    auto e = [n](int i) { return CVector(CVector::Unit(n, i)); };
    auto nh = [&](int pos) { return pos; };          // non-halting column of idx[pos]
    auto acc = [&](int pos) { return m + pos; };     // accepting partner
    auto rej = [&](int pos) { return 2 * m + pos; };

    q.initial = CVector::Zero(n);
    q.initial(nh(0)) = std::sqrt(static_cast<double>(k) / (2.0 * k - 1.0));
    for (int pos = 1; pos < m; ++pos) q.initial(nh(pos)) = std::sqrt(1.0 / (2.0 * k - 1.0));

    q.transitions[kLeftEndmarker] = CMatrix::Identity(n, n);
    for (int i = 1; i <= k; ++i) {
        std::vector<std::pair<int, CVector>> cols;
        cols.push_back({nh(0), std::sqrt(static_cast<double>(k + 1 - i) / k) * e(acc(0)) +
                                   std::sqrt(static_cast<double>(i - 1) / k) * e(rej(0))});
        for (int pos = 1; pos < m; ++pos) cols.push_back({nh(pos), e(nh(pos))});
        q.transitions["b" + std::to_string(i)] = complete_columns(n, cols);
    }
    for (int i = 1; i <= k; ++i) {
        std::vector<std::pair<int, CVector>> cols;
        cols.push_back({nh(0), e(acc(0))});
        for (int pos = 1; pos < m; ++pos) {
            int j = idx[pos];
            cols.push_back({nh(pos), i + j <= k + 1 ? e(acc(pos)) : e(rej(pos))});
        }
        q.transitions["z" + std::to_string(i)] = complete_columns(n, cols);
    }
    {
        std::vector<std::pair<int, CVector>> cols;
        for (int pos = 0; pos < m; ++pos) cols.push_back({nh(pos), e(acc(pos))});
        q.transitions[kRightEndmarker] = complete_columns(n, cols);
    }

    NamedAutomaton out;
    out.name = "kcycles-" + std::to_string(k);
    out.qfa = std::move(q);
    out.oracle = language_oracle("l1-" + std::to_string(k));
    out.claimed_probability = static_cast<double>(k) / (2.0 * k - 1.0);
    return out;
}

NamedAutomaton build_eps_aplusb() {
    // alpha solves 1 - 2 cos^2(alpha) = sqrt(3/5) in [0, pi/2]
    const double ca2 = 0.5 - std::sqrt(15.0) / 10.0;  // cos^2(alpha)
    const double sa2 = 1.0 - ca2;
    const double ca = std::sqrt(ca2);
    const double sa = std::sqrt(sa2);
    const double cos3a = ca * (4.0 * ca2 - 3.0);
    const double sin3a = sa * (3.0 - 4.0 * sa2);

    QfaSpec m;
    m.states = {"q0", "q1", "qacc", "qrej"};
    m.alphabet = {"a", "b"};
    m.accepting = {"qacc"};
    m.rejecting = {"qrej"};
    const int n = 4;
    auto e = [n](int i) { return CVector(CVector::Unit(n, i)); };
    const int q0 = 0, q1 = 1, qacc = 2, qrej = 3;

    m.initial = cos3a * e(q0) + sin3a * e(q1);

    m.transitions[kLeftEndmarker] = CMatrix::Identity(n, n);
    const double r2 = std::sqrt(2.0);
    m.transitions["a"] = complete_columns(
        n, {{q0, ca2 * e(q0) + ca * sa * e(q1) + sa / r2 * e(qacc) + sa / r2 * e(qrej)},
            {q1, ca * sa * e(q0) + sa2 * e(q1) - ca / r2 * e(qacc) - ca / r2 * e(qrej)}});
    m.transitions["b"] = complete_columns(n, {{q0, e(qrej)}, {q1, e(qacc)}});
    m.transitions[kRightEndmarker] = complete_columns(n, {{q0, e(qacc)}, {q1, e(qrej)}});

    NamedAutomaton out;
    out.name = "eps-aplusb";
    out.qfa = std::move(m);
    out.oracle = language_oracle("eps-aplusb");
    out.claimed_probability = 0.5 + 3.0 * std::sqrt(15.0) / 50.0;
    return out;
}

namespace {

DfaSpec dfa_aplus() {
    DfaSpec d;
    d.states = {"s", "t", "dead"};
    d.alphabet = {"a", "b"};
    d.initial = "s";
    d.accepting = {"t"};
    d.transitions["s"] = {{"a", "t"}, {"b", "dead"}};
    d.transitions["t"] = {{"a", "t"}, {"b", "dead"}};
    d.transitions["dead"] = {{"a", "dead"}, {"b", "dead"}};
    return d;
}

DfaSpec dfa_astar_bstar() {
    DfaSpec d;
    d.states = {"a_part", "b_part", "dead"};
    d.alphabet = {"a", "b"};
    d.initial = "a_part";
    d.accepting = {"a_part", "b_part"};
    d.transitions["a_part"] = {{"a", "a_part"}, {"b", "b_part"}};
    d.transitions["b_part"] = {{"a", "dead"}, {"b", "b_part"}};
    d.transitions["dead"] = {{"a", "dead"}, {"b", "dead"}};
    return d;
}

DfaSpec dfa_ends_a() {
    DfaSpec d;
    d.states = {"other", "last_a"};
    d.alphabet = {"a", "b"};
    d.initial = "other";
    d.accepting = {"last_a"};
    d.transitions["other"] = {{"a", "last_a"}, {"b", "other"}};
    d.transitions["last_a"] = {{"a", "last_a"}, {"b", "other"}};
    return d;
}

DfaSpec dfa_eps_aplusb() {
    DfaSpec d;
    d.states = {"start", "as", "ok", "dead"};
    d.alphabet = {"a", "b"};
    d.initial = "start";
    d.accepting = {"start", "ok"};
    d.transitions["start"] = {{"a", "as"}, {"b", "dead"}};
    d.transitions["as"] = {{"a", "as"}, {"b", "ok"}};
    d.transitions["ok"] = {{"a", "ok"}, {"b", "ok"}};
    d.transitions["dead"] = {{"a", "dead"}, {"b", "dead"}};
    return d;
}

DfaSpec dfa_sigma_star() {
    DfaSpec d;
    d.states = {"any"};
    d.alphabet = {"a", "b"};
    d.initial = "any";
    d.accepting = {"any"};
    d.transitions["any"] = {{"a", "any"}, {"b", "any"}};
    return d;
}

DfaSpec dfa_l1(int k) {
    if (k < 2) throw std::invalid_argument("l1 DFA: k must be >= 2");
    DfaSpec d;
    d.initial = "q0";
    for (int i = 0; i <= k; ++i) d.states.push_back("q" + std::to_string(i));
    d.states.push_back("qrej");
    d.accepting = std::vector<std::string>(d.states.begin(), d.states.end() - 1);
    for (int i = 1; i <= k; ++i) d.alphabet.push_back("b" + std::to_string(i));
    for (int i = 1; i <= k; ++i) d.alphabet.push_back("z" + std::to_string(i));

    for (int i = 1; i <= k; ++i) {
        d.transitions["q0"]["b" + std::to_string(i)] = "q" + std::to_string(i);
        d.transitions["q0"]["z" + std::to_string(i)] = "q1";
        d.transitions["qrej"]["b" + std::to_string(i)] = "qrej";
        d.transitions["qrej"]["z" + std::to_string(i)] = "qrej";
    }
    for (int i = 1; i <= k; ++i) {
        for (int j = 1; j <= k; ++j) {
            d.transitions["q" + std::to_string(i)]["b" + std::to_string(j)] =
                "q" + std::to_string(i);
            d.transitions["q" + std::to_string(i)]["z" + std::to_string(j)] =
                i + j <= k + 1 ? "q1" : "qrej";
        }
    }
    return d;
}

/// Parses "l1-3" style suffixed names; returns 0 when not of that form.
int l1_order(const std::string& name) {
    if (name.rfind("l1-", 0) != 0) return 0;
    int k = std::atoi(name.c_str() + 3);
    return k >= 2 ? k : 0;
}

}  // namespace

DfaSpec build_language_dfa(const std::string& name) {
    if (name == "aplus") return dfa_aplus();
    if (name == "astar-bstar") return dfa_astar_bstar();
    if (name == "ends-a") return dfa_ends_a();
    if (name == "eps-aplusb") return dfa_eps_aplusb();
    if (name == "sigma-star") return dfa_sigma_star();
    if (int k = l1_order(name)) return dfa_l1(k);
    throw std::invalid_argument("unknown language name: " + name);
}

LanguageOracle language_oracle(const std::string& name) {
    if (name == "aplus") {
        return [](const Word& w) {
            return !w.empty() && std::all_of(w.begin(), w.end(),
                                             [](const Symbol& s) { return s == "a"; });
        };
    }
    if (name == "astar-bstar") {
        return [](const Word& w) {
            size_t i = 0;
            while (i < w.size() && w[i] == "a") ++i;
            while (i < w.size() && w[i] == "b") ++i;
            return i == w.size();
        };
    }
    if (name == "ends-a") {
        return [](const Word& w) { return !w.empty() && w.back() == "a"; };
    }
    if (name == "eps-aplusb") {
        return [](const Word& w) {
            if (w.empty()) return true;
            if (w.front() != "a" || !all_single_char(w)) return false;
            return std::find(w.begin(), w.end(), Symbol("b")) != w.end();
        };
    }
    if (name == "sigma-star") {
        return [](const Word&) { return true; };
    }
    if (int k = l1_order(name)) {
        // Walks the membership rules directly: b_i from the start picks cycle
        // i, z_j resets to cycle 1 unless i + j exceeds k + 1.
        return [k](const Word& w) {
            int state = 0;  // 0 = initial, 1..k = cycle, -1 = rejected
            for (const Symbol& s : w) {
                if (state < 0) return false;
                if (s.size() < 2) return false;
                int i = std::atoi(s.c_str() + 1);
                if (i < 1 || i > k) return false;
                if (s[0] == 'b') {
                    if (state == 0) state = i;
                } else if (s[0] == 'z') {
                    if (state == 0 || state + i <= k + 1) {
                        state = 1;
                    } else {
                        state = -1;
                    }
                } else {
                    return false;
                }
            }
            return state >= 0;
        };
    }
    throw std::invalid_argument("unknown language name: " + name);
}

std::vector<std::string> dfa_catalog_names() {
    return {"aplus", "astar-bstar", "ends-a", "eps-aplusb", "sigma-star",
            "l1-2", "l1-3", "l1-4"};
}

}  // namespace qfa
