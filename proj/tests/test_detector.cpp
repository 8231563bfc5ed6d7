#include "qfa/detector.hpp"

#include "qfa/catalog.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <set>

using namespace qfa;
using qfa::testing::TestRng;

namespace {

Word chars(const std::string& s) {
    Word w;
    for (char c : s) w.push_back(std::string(1, c));
    return w;
}

/// Independent minimality oracle: number of distinct reachable behaviors,
/// distinguishing states by acceptance over all words up to |Q| letters.
int brute_minimal_size(const DfaSpec& dfa) {
    auto words = enumerate_words(dfa.alphabet, dfa.size());
    std::set<std::string> reachable_signatures;
    for (const Word& access : words) {
        std::string q = dfa.next_word(dfa.initial, access);
        std::string sig;
        for (const Word& w : words) sig += dfa.is_accepting(dfa.next_word(q, w)) ? '1' : '0';
        reachable_signatures.insert(sig);
    }
    return static_cast<int>(reachable_signatures.size());
}

/// Brute-force one-cycle pair check: first word in shortlex order with
/// q1 ->x q2 and q2 ->x q2, among words of length <= max_len.
std::optional<Word> brute_cycle_word(const DfaSpec& dfa, const std::string& q1,
                                     const std::string& q2, int max_len) {
    for (const Word& x : enumerate_words(dfa.alphabet, max_len)) {
        if (x.empty()) continue;
        if (dfa.next_word(q1, x) == q2 && dfa.next_word(q2, x) == q2) return x;
    }
    return std::nullopt;
}

bool brute_all_accepting(const DfaSpec& dfa, const std::string& q) {
    for (const Word& w : enumerate_words(dfa.alphabet, dfa.size())) {
        if (!dfa.is_accepting(dfa.next_word(q, w))) return false;
    }
    return true;
}

bool brute_all_rejecting(const DfaSpec& dfa, const std::string& q) {
    for (const Word& w : enumerate_words(dfa.alphabet, dfa.size())) {
        if (dfa.is_accepting(dfa.next_word(q, w))) return false;
    }
    return true;
}

/// All DFAs over {a,b} with the given state count: every transition map and
/// accepting set, initial fixed to the first state.
std::vector<DfaSpec> enumerate_dfas(int n) {
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("q" + std::to_string(i));
    std::vector<DfaSpec> out;
    long maps = 1;
    for (int i = 0; i < 2 * n; ++i) maps *= n;
    for (long code = 0; code < maps; ++code) {
        DfaSpec d;
        d.states = names;
        d.alphabet = {"a", "b"};
        d.initial = names[0];
        long c = code;
        for (int i = 0; i < n; ++i) {
            d.transitions[names[i]]["a"] = names[c % n];
            c /= n;
            d.transitions[names[i]]["b"] = names[c % n];
            c /= n;
        }
        for (int acc = 0; acc < (1 << n); ++acc) {
            DfaSpec withacc = d;
            for (int i = 0; i < n; ++i) {
                if (acc & (1 << i)) withacc.accepting.push_back(names[i]);
            }
            out.push_back(std::move(withacc));
        }
    }
    return out;
}

void replay_witness(const DfaSpec& dfa, const ConstructionWitness& w) {
    switch (w.kind) {
        case WitnessKind::one_cycle: {
            const auto& x = w.words.at("x");
            CHECK(w.states[0] != w.states[1]);
            CHECK(dfa.next_word(w.states[0], x) == w.states[1]);
            CHECK(dfa.next_word(w.states[1], x) == w.states[1]);
            CHECK_FALSE(brute_all_accepting(dfa, w.states[1]));
            CHECK_FALSE(brute_all_rejecting(dfa, w.states[1]));
            break;
        }
        case WitnessKind::return_cycle: {
            const auto& x = w.words.at("x");
            const auto& y = w.words.at("y");
            CHECK(w.states[0] != w.states[1]);
            CHECK(dfa.next_word(w.states[0], x) == w.states[1]);
            CHECK(dfa.next_word(w.states[1], x) == w.states[1]);
            CHECK(dfa.next_word(w.states[1], y) == w.states[0]);
            break;
        }
        case WitnessKind::two_cycles_row: {
            const auto& x = w.words.at("x");
            const auto& y = w.words.at("y");
            const auto &q1 = w.states[0], &q2 = w.states[1], &q3 = w.states[2];
            CHECK(dfa.next_word(q1, x) == q1);
            CHECK(dfa.next_word(q1, y) == q2);
            CHECK(dfa.next_word(q2, y) == q2);
            CHECK(dfa.next_word(q2, x) == q3);
            CHECK(dfa.next_word(q3, x) == q3);
            CHECK(dfa.next_word(q3, y) != q2);
            break;
        }
        case WitnessKind::parallel_cycles: {
            const auto& q0 = w.states[0];
            for (int i = 1; i <= w.k; ++i) {
                const auto& xi = w.words.at("x" + std::to_string(i));
                CHECK(dfa.next_word(q0, xi) == w.states[i]);
                for (int j = 1; j <= w.k; ++j) {
                    CHECK(dfa.next_word(w.states[j], xi) == w.states[j]);
                }
            }
            for (int i = 1; i <= w.k; ++i) CHECK_FALSE(brute_all_rejecting(dfa, w.states[i]));
            break;
        }
        case WitnessKind::incomparable_pair: {
            const auto& x = w.words.at("x");
            const auto &q1 = w.states[0], &q2 = w.states[1];
            CHECK(dfa.next_word(q1, x) == q2);
            CHECK(dfa.next_word(q2, x) == q2);
            CHECK(dfa.is_accepting(dfa.next_word(q1, w.words.at("z1"))));
            CHECK_FALSE(dfa.is_accepting(dfa.next_word(q2, w.words.at("z1"))));
            CHECK(dfa.is_accepting(dfa.next_word(q2, w.words.at("z2"))));
            CHECK_FALSE(dfa.is_accepting(dfa.next_word(q1, w.words.at("z2"))));
            break;
        }
    }
}

}  // namespace

TEST_CASE("minimize") {
    SUBCASE("already minimal stays the same size") {
        DfaSpec aplus = build_language_dfa("aplus");
        CHECK(minimize(aplus).size() == 3);
    }
    SUBCASE("duplicate accepting state merges") {
        DfaSpec d = build_language_dfa("aplus");
        d.states.push_back("t2");
        d.accepting.push_back("t2");
        d.transitions["t2"] = d.transitions["t"];
        d.transitions["s"]["a"] = "t2";  // reachable duplicate of t
        CHECK(minimize(d).size() == 3);
    }
    SUBCASE("a*b* minimizes to three states") {
        DfaSpec d = build_language_dfa("astar-bstar");
        DfaSpec m = minimize(d);
        CHECK(m.size() == 3);
        CHECK(m.size() == brute_minimal_size(d));
    }
    SUBCASE("idempotent and language preserving") {
        TestRng rng(19);
        auto dfas = enumerate_dfas(3);
        for (int trial = 0; trial < 60; ++trial) {
            const DfaSpec& d = dfas[rng.uniform_int(static_cast<int>(dfas.size()))];
            DfaSpec m = minimize(d);
            CHECK(minimize(m).size() == m.size());
            CHECK(m.size() == brute_minimal_size(d));
            for (const Word& w : enumerate_words(d.alphabet, 8)) {
                CHECK(m.accepts(w) == d.accepts(w));
            }
        }
    }
    SUBCASE("invalid input throws") {
        DfaSpec d = build_language_dfa("aplus");
        d.transitions["t"].erase("a");
        CHECK_THROWS_AS(minimize(d), std::invalid_argument);
    }
}

TEST_CASE("state language relations") {
    DfaSpec d = build_language_dfa("eps-aplusb");
    SUBCASE("identical states are equal") {
        CHECK(state_language_relation(d, "as", "as").relation == LanguageRelation::equal);
    }
    SUBCASE("dead state is a subset of anything accepting-reachable") {
        auto rel = state_language_relation(d, "dead", "as");
        CHECK(rel.relation == LanguageRelation::subset);
        REQUIRE(rel.in_b_not_a.has_value());
        CHECK(d.is_accepting(d.next_word("as", *rel.in_b_not_a)));
    }
    SUBCASE("start vs a-block is incomparable with the shortest witnesses") {
        auto rel = state_language_relation(d, "start", "as");
        CHECK(rel.relation == LanguageRelation::incomparable);
        REQUIRE(rel.in_a_not_b.has_value());
        REQUIRE(rel.in_b_not_a.has_value());
        CHECK(rel.in_a_not_b->empty());          // the empty word
        CHECK(*rel.in_b_not_a == chars("b"));
    }
    SUBCASE("unknown states throw") {
        CHECK_THROWS_AS(state_language_relation(d, "nope", "as"), std::invalid_argument);
    }
}

TEST_CASE("one-cycle detection on the catalog") {
    DfaSpec aplus = minimize(build_language_dfa("aplus"));
    auto ws = detect_one_cycle(aplus);
    REQUIRE_FALSE(ws.empty());
    bool found = false;
    for (const auto& w : ws) {
        replay_witness(aplus, w);
        found |= w.words.at("x") == chars("a") && w.states[0] == "s";
    }
    CHECK(found);

    CHECK(detect_one_cycle(minimize(build_language_dfa("sigma-star"))).empty());

    DfaSpec ends = minimize(build_language_dfa("ends-a"));
    auto ws2 = detect_one_cycle(ends);
    REQUIRE_FALSE(ws2.empty());
    CHECK(ws2.front().words.at("x") == chars("a"));
}

TEST_CASE("return-cycle detection") {
    DfaSpec ends = minimize(build_language_dfa("ends-a"));
    auto ws = detect_return_cycle(ends);
    REQUIRE_FALSE(ws.empty());
    CHECK(ws.front().words.at("x") == chars("a"));
    CHECK(ws.front().words.at("y") == chars("b"));
    for (const auto& w : ws) replay_witness(ends, w);

    CHECK(detect_return_cycle(minimize(build_language_dfa("aplus"))).empty());
    CHECK(detect_return_cycle(minimize(build_language_dfa("sigma-star"))).empty());
}

TEST_CASE("two-cycles-in-a-row detection") {
    DfaSpec ab = minimize(build_language_dfa("astar-bstar"));
    auto ws = detect_two_cycles_row(ab);
    REQUIRE_FALSE(ws.empty());
    bool found = false;
    for (const auto& w : ws) {
        replay_witness(ab, w);
        found |= w.words.at("x") == chars("a") && w.words.at("y") == chars("b");
    }
    CHECK(found);

    CHECK(detect_two_cycles_row(minimize(build_language_dfa("aplus"))).empty());
    CHECK(detect_two_cycles_row(minimize(build_language_dfa("sigma-star"))).empty());
    // the ends-a pattern is the stronger return cycle, not a two-cycle row
    CHECK(detect_two_cycles_row(minimize(build_language_dfa("ends-a"))).empty());
}

TEST_CASE("parallel-cycles detection") {
    DfaSpec l12 = minimize(build_language_dfa("l1-2"));
    auto ws = detect_parallel_cycles(l12, 2);
    REQUIRE_FALSE(ws.empty());
    bool b_words = false;
    for (const auto& w : ws) {
        replay_witness(l12, w);
        std::set<std::string> used;
        for (int i = 1; i <= w.k; ++i) {
            REQUIRE(w.words.at("x" + std::to_string(i)).size() == 1);
            used.insert(w.words.at("x" + std::to_string(i)).front());
        }
        b_words |= used == std::set<std::string>{"b1", "b2"};
    }
    CHECK(b_words);

    CHECK(detect_parallel_cycles(minimize(build_language_dfa("aplus")), 2).empty());

    DfaSpec l13 = minimize(build_language_dfa("l1-3"));
    auto ws3 = detect_parallel_cycles(l13, 3);
    REQUIRE_FALSE(ws3.empty());
    for (const auto& w : ws3) replay_witness(l13, w);

    CHECK_THROWS_AS(detect_parallel_cycles(l12, 1), std::invalid_argument);
}

TEST_CASE("incomparable-pair detection") {
    DfaSpec d = minimize(build_language_dfa("eps-aplusb"));
    auto ws = detect_incomparable_pair(d);
    REQUIRE_FALSE(ws.empty());
    bool found = false;
    for (const auto& w : ws) {
        replay_witness(d, w);
        found |= w.words.at("x") == chars("a") && w.words.at("z1").empty() &&
                 w.words.at("z2") == chars("b");
    }
    CHECK(found);

    CHECK(detect_incomparable_pair(minimize(build_language_dfa("aplus"))).empty());
    CHECK(detect_incomparable_pair(minimize(build_language_dfa("sigma-star"))).empty());
}

TEST_CASE("detector matches brute force on small DFAs") {
    // Exhaustive over 1- and 2-state DFAs, sampled over 3-state ones. The
    // brute bound n*n covers the pair-graph diameter.
    auto compare = [](const DfaSpec& dfa) {
        int cap = dfa.size() * dfa.size();
        auto ones = detect_one_cycle(dfa);
        std::set<std::pair<std::string, std::string>> detected;
        for (const auto& w : ones) {
            detected.insert({w.states[0], w.states[1]});
            CHECK(*brute_cycle_word(dfa, w.states[0], w.states[1], cap) == w.words.at("x"));
        }
        for (const auto& q1 : dfa.states) {
            for (const auto& q2 : dfa.states) {
                if (q1 == q2) continue;
                bool brute = brute_cycle_word(dfa, q1, q2, cap).has_value() &&
                             !brute_all_accepting(dfa, q2) && !brute_all_rejecting(dfa, q2);
                CHECK(brute == detected.count({q1, q2}));
            }
        }
        auto returns = detect_return_cycle(dfa);
        std::set<std::pair<std::string, std::string>> ret;
        for (const auto& w : returns) ret.insert({w.states[0], w.states[1]});
        for (const auto& [q1, q2] : detected) {
            bool reachable = false;
            for (const Word& y : enumerate_words(dfa.alphabet, dfa.size())) {
                if (!y.empty() && dfa.next_word(q2, y) == q1) {
                    reachable = true;
                    break;
                }
            }
            CHECK(reachable == ret.count({q1, q2}));
        }
    };

    for (int n : {1, 2}) {
        for (const DfaSpec& d : enumerate_dfas(n)) compare(d);
    }
    auto dfas3 = enumerate_dfas(3);
    TestRng rng(5);
    for (int trial = 0; trial < 120; ++trial) {
        compare(dfas3[rng.uniform_int(static_cast<int>(dfas3.size()))]);
    }
}

TEST_CASE("analyze aggregates bounds") {
    SUBCASE("a+") {
        ConstructionReport r = analyze(build_language_dfa("aplus"));
        CHECK(std::abs(r.bound - bounds::one_cycle()) <= 1e-12);
        CHECK_FALSE(r.rfa_recognizable);
        CHECK(r.qfa_recognizable);
    }
    SUBCASE("a*b*") {
        ConstructionReport r = analyze(build_language_dfa("astar-bstar"));
        CHECK(r.bound == bounds::two_cycles_row());
        CHECK_FALSE(r.rfa_recognizable);
        CHECK(r.qfa_recognizable);
    }
    SUBCASE("sigma-star") {
        ConstructionReport r = analyze(build_language_dfa("sigma-star"));
        CHECK(r.bound == 1.0);
        CHECK(r.rfa_recognizable);
        CHECK(r.qfa_recognizable);
        CHECK(r.witnesses.empty());
    }
    SUBCASE("ends-a has a return cycle") {
        ConstructionReport r = analyze(build_language_dfa("ends-a"));
        CHECK_FALSE(r.qfa_recognizable);
        CHECK(std::abs(r.bound - bounds::one_cycle()) <= 1e-12);
    }
    SUBCASE("parallel cycles pick the largest k") {
        ConstructionReport r2 = analyze(build_language_dfa("l1-2"));
        CHECK(std::abs(r2.bound - 2.0 / 3.0) <= 1e-12);
        ConstructionReport r3 = analyze(build_language_dfa("l1-3"));
        CHECK(std::abs(r3.bound - 3.0 / 5.0) <= 1e-12);
    }
    SUBCASE("incomparable pair") {
        ConstructionReport r = analyze(build_language_dfa("eps-aplusb"));
        CHECK(std::abs(r.bound - bounds::incomparable_pair()) <= 1e-12);
        CHECK(r.qfa_recognizable);
    }
    SUBCASE("reported bound is the min over witnessed kinds") {
        for (const auto& name : dfa_catalog_names()) {
            ConstructionReport r = analyze(build_language_dfa(name));
            double expect = 1.0;
            for (const auto& w : r.witnesses) {
                switch (w.kind) {
                    case WitnessKind::one_cycle:
                        expect = std::min(expect, bounds::one_cycle());
                        break;
                    case WitnessKind::two_cycles_row:
                        expect = std::min(expect, bounds::two_cycles_row());
                        break;
                    case WitnessKind::parallel_cycles:
                        expect = std::min(expect, bounds::parallel_cycles(w.k));
                        break;
                    case WitnessKind::incomparable_pair:
                        expect = std::min(expect, bounds::incomparable_pair());
                        break;
                    case WitnessKind::return_cycle:
                        break;
                }
            }
            CHECK(r.bound == expect);
        }
    }
    SUBCASE("witnesses replay on minimized catalog DFAs") {
        for (const auto& name : dfa_catalog_names()) {
            DfaSpec m = minimize(build_language_dfa(name));
            int kmax = name == "l1-4" ? 4 : 3;
            ConstructionReport r = analyze(m, kmax);
            for (const auto& w : r.witnesses) replay_witness(m, w);
        }
    }
    SUBCASE("invalid DFA throws") {
        DfaSpec bad = build_language_dfa("aplus");
        bad.initial = "nope";
        CHECK_THROWS_AS(analyze(bad), std::invalid_argument);
    }
}

TEST_CASE("bound constants") {
    CHECK(std::abs(bounds::one_cycle() - 0.7726296943) <= 1e-9);
    CHECK(bounds::two_cycles_row() == 0.689419);
    CHECK(std::abs(bounds::parallel_cycles(2) - 2.0 / 3.0) <= 1e-15);
    CHECK(std::abs(bounds::parallel_cycles(4) - 4.0 / 7.0) <= 1e-15);
    CHECK(std::abs(bounds::incomparable_pair() - 0.7323790008) <= 1e-9);
}
