#include "qfa/json_io.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <stdexcept>

namespace qfa {

namespace {

using nlohmann::json;

json complex_pair(const Complex& c) { return json::array({c.real(), c.imag()}); }

Complex pair_complex(const json& j) {
    if (!j.is_array() || j.size() != 2) {
        throw std::invalid_argument("expected a [re, im] pair");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

json matrix_rows(const CMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(complex_pair(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

CMatrix rows_matrix(const json& j, int n) {
    if (!j.is_array() || static_cast<int>(j.size()) != n) {
        throw std::invalid_argument("matrix has wrong number of rows");
    }
    CMatrix m(n, n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(j[i].size()) != n) {
            throw std::invalid_argument("matrix row has wrong length");
        }
        for (int k = 0; k < n; ++k) m(i, k) = pair_complex(j[i][k]);
    }
    return m;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void spit(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

json word_json(const Word& w) {
    json a = json::array();
    for (const auto& s : w) a.push_back(s);
    return a;
}

}  // namespace

std::string qfa_to_json(const QfaSpec& spec) {
    json j;
    j["states"] = spec.states;
    j["alphabet"] = spec.alphabet;
    json init = json::array();
    for (int i = 0; i < spec.initial.size(); ++i) init.push_back(complex_pair(spec.initial(i)));
    j["initial"] = std::move(init);
    j["accepting"] = spec.accepting;
    j["rejecting"] = spec.rejecting;
    json trans;
    for (const auto& [letter, m] : spec.transitions) trans[letter] = matrix_rows(m);
    j["transitions"] = std::move(trans);
    return j.dump(2) + "\n";
}

QfaSpec qfa_from_json(const std::string& text) {
    json j = json::parse(text);
    QfaSpec spec;
    spec.states = j.at("states").get<std::vector<std::string>>();
    spec.alphabet = j.at("alphabet").get<std::vector<std::string>>();
    spec.accepting = j.at("accepting").get<std::vector<std::string>>();
    spec.rejecting = j.at("rejecting").get<std::vector<std::string>>();
    const int n = static_cast<int>(spec.states.size());
    const auto& init = j.at("initial");
    if (static_cast<int>(init.size()) != n) {
        throw std::invalid_argument("initial vector has wrong dimension");
    }
    spec.initial = CVector(n);
    for (int i = 0; i < n; ++i) spec.initial(i) = pair_complex(init[i]);
    for (const auto& [letter, rows] : j.at("transitions").items()) {
        spec.transitions[letter] = rows_matrix(rows, n);
    }
    return spec;
}

void save_qfa(const QfaSpec& spec, const std::string& path) { spit(path, qfa_to_json(spec)); }

QfaSpec load_qfa(const std::string& path) { return qfa_from_json(slurp(path)); }

std::string dfa_to_json(const DfaSpec& dfa) {
    json j;
    j["states"] = dfa.states;
    j["alphabet"] = dfa.alphabet;
    j["initial"] = dfa.initial;
    j["accepting"] = dfa.accepting;
    j["transitions"] = dfa.transitions;
    return j.dump(2) + "\n";
}

DfaSpec dfa_from_json(const std::string& text) {
    json j = json::parse(text);
    DfaSpec dfa;
    dfa.states = j.at("states").get<std::vector<std::string>>();
    dfa.alphabet = j.at("alphabet").get<std::vector<std::string>>();
    dfa.initial = j.at("initial").get<std::string>();
    dfa.accepting = j.at("accepting").get<std::vector<std::string>>();
    dfa.transitions =
        j.at("transitions").get<std::map<std::string, std::map<std::string, std::string>>>();
    return dfa;
}

void save_dfa(const DfaSpec& dfa, const std::string& path) { spit(path, dfa_to_json(dfa)); }

DfaSpec load_dfa(const std::string& path) { return dfa_from_json(slurp(path)); }

std::string report_to_json(const ConstructionReport& report) {
    json j;
    j["bound"] = report.bound;
    j["rfa_recognizable"] = report.rfa_recognizable;
    j["qfa_recognizable"] = report.qfa_recognizable;
    j["minimized_states"] = report.minimized_states;
    if (!report.note.empty()) j["note"] = report.note;
    json ws = json::array();
    for (const auto& w : report.witnesses) {
        json wj;
        wj["kind"] = to_string(w.kind);
        if (w.kind == WitnessKind::parallel_cycles) wj["k"] = w.k;
        wj["states"] = w.states;
        json words;
        for (const auto& [key, word] : w.words) words[key] = word_json(word);
        wj["words"] = std::move(words);
        ws.push_back(std::move(wj));
    }
    j["witnesses"] = std::move(ws);
    return j.dump(2) + "\n";
}

std::string optimization_to_json(const OptimizationResult& result) {
    json j;
    j["problem"] = result.problem;
    j["p"] = result.p;
    j["residual"] = result.feasibility_residual;
    j["iterations"] = result.iterations;
    j["seed"] = result.seed;
    j["restarts"] = result.restarts;
    if (result.witness1) {
        j["witness"] = {{"alpha", result.witness1->alpha},
                        {"beta", result.witness1->beta},
                        {"p2", result.witness1->p2}};
    } else if (result.witness3) {
        j["witness"] = {{"e_sq", result.witness3->e_sq},
                        {"alpha", result.witness3->alpha},
                        {"y", result.witness3->y()}};
    } else if (result.witness2) {
        const auto& w = *result.witness2;
        json wj;
        wj["dim"] = w.dim;
        wj["accept_dim"] = w.accept_dim;
        auto vec = [](const Eigen::VectorXd& v) {
            return std::vector<double>(v.data(), v.data() + v.size());
        };
        wj["v1"] = vec(w.v1);
        wj["v2"] = vec(w.v2);
        wj["v3"] = vec(w.v3);
        wj["pa1"] = w.pa1;
        wj["pr1"] = w.pr1;
        wj["pa2"] = w.pa2;
        wj["pr2"] = w.pr2;
        j["witness"] = std::move(wj);
    }
    return j.dump(2) + "\n";
}

}  // namespace qfa
