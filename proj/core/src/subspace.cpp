#include "qfa/subspace.hpp"

#include <cmath>
#include <queue>
#include <stdexcept>

namespace qfa {

namespace {

struct Generators {
    std::vector<CMatrix> ops;  // V'_x per word, full state space
    CMatrix nonhalting_proj;
    std::vector<int> nonhalting;
};

Generators make_generators(const QfaSpec& spec, const std::vector<Word>& words) {
    if (words.empty()) {
        throw std::invalid_argument("decompose: empty word list");
    }
    Generators g;
    g.nonhalting = spec.nonhalting_indices();
    g.nonhalting_proj = CMatrix::Zero(spec.dim(), spec.dim());
    for (int i : g.nonhalting) g.nonhalting_proj(i, i) = 1.0;
    for (const Word& w : words) {
        if (w.empty()) throw std::invalid_argument("decompose: empty generator word");
        g.ops.push_back(nonhalting_operator(spec, w));
    }
    return g;
}

/// Largest subspace of span(B) mapped isometrically into itself by every op.
/// B holds orthonormal columns; returns the stabilized basis matrix.
CMatrix ergodic_fixed_point(const Generators& g, CMatrix b, double tol) {
    const int n = static_cast<int>(b.rows());
    while (b.cols() > 0) {
        const int d = static_cast<int>(b.cols());
        CMatrix stacked(static_cast<int>(g.ops.size()) * 2 * n, d);
        int row = 0;
        for (const CMatrix& a : g.ops) {
            // isometry defect: (I - A'A) b, PSD so its kernel is the zero set
            stacked.middleRows(row, n) =
                b - a.adjoint() * (a * b);
            row += n;
            // invariance defect: component of A b outside span(b)
            CMatrix ab = a * b;
            stacked.middleRows(row, n) = ab - b * (b.adjoint() * ab);
            row += n;
        }
        Basis kernel = nullspace(stacked, tol);
        if (kernel.dim() == d) break;
        CMatrix next(n, kernel.dim());
        for (int j = 0; j < kernel.dim(); ++j) next.col(j) = b * kernel.vectors[j];
        b = std::move(next);
    }
    return b;
}

/// Orthonormal extension of the columns of b within the span of the given
/// coordinate axes, largest residual first.
std::vector<CVector> complement_in_axes(const CMatrix& b, const std::vector<int>& axes) {
    const int n = static_cast<int>(b.rows());
    std::vector<CVector> have;
    for (int j = 0; j < b.cols(); ++j) have.push_back(b.col(j));
    std::vector<CVector> extra;
    const int target = static_cast<int>(axes.size()) - static_cast<int>(b.cols());
    while (static_cast<int>(extra.size()) < target) {
        double best_norm = 0.0;
        CVector best;
        for (int i : axes) {
            CVector r = CVector::Unit(n, i);
            for (const CVector& u : have) r -= u.dot(r) * u;
            for (const CVector& u : have) r -= u.dot(r) * u;
            double nr = r.norm();
            if (nr > best_norm + 1e-12) {
                best_norm = nr;
                best = r;
            }
        }
        if (best_norm < 1e-8) break;
        best /= best_norm;
        have.push_back(best);
        extra.push_back(best);
    }
    return extra;
}

}  // namespace

SubspacePair decompose(const QfaSpec& spec, const std::vector<Word>& words, double tol) {
    if (tol <= 0) throw std::invalid_argument("decompose: tolerance must be positive");
    Generators g = make_generators(spec, words);
    const int n = spec.dim();

    CMatrix b0(n, static_cast<int>(g.nonhalting.size()));
    for (size_t j = 0; j < g.nonhalting.size(); ++j) {
        b0.col(static_cast<int>(j)) = CVector::Unit(n, g.nonhalting[j]);
    }

    CMatrix e1 = ergodic_fixed_point(g, b0, tol);

    SubspacePair pair;
    pair.ambient_dim = static_cast<int>(g.nonhalting.size());
    for (int j = 0; j < e1.cols(); ++j) pair.e1.vectors.push_back(e1.col(j));
    pair.e2.vectors = complement_in_axes(e1, g.nonhalting);

    // Borderline check: a looser tolerance admitting more vectors means some
    // isometry defects sit between tol and 1e-6.
    if (tol < 1e-6) {
        CMatrix loose = ergodic_fixed_point(g, b0, 1e-6);
        pair.borderline = loose.cols() != e1.cols();
    }
    return pair;
}

std::optional<Word> escape_word(const QfaSpec& spec, const std::vector<Word>& words,
                                const CVector& psi, double eps, int max_len) {
    if (eps <= 0) throw std::invalid_argument("escape_word: eps must be positive");
    SubspacePair pair = decompose(spec, words);
    double scale = std::max(1.0, psi.norm());
    if (distance_to_span(psi, pair.e2) > 1e-6 * scale) {
        throw std::invalid_argument("escape_word: psi is not in the transient subspace");
    }
    Generators g = make_generators(spec, words);

    struct Node {
        CVector v;
        Word t;
        int len;
        long seq;
    };
    auto later = [](const Node& a, const Node& b) {
        return a.len != b.len ? a.len > b.len : a.seq > b.seq;
    };
    std::priority_queue<Node, std::vector<Node>, decltype(later)> queue(later);
    long seq = 0;
    queue.push({psi, {}, 0, seq++});

    constexpr long kNodeCap = 200000;
    long popped = 0;
    while (!queue.empty() && popped < kNodeCap) {
        Node node = queue.top();
        queue.pop();
        ++popped;
        if (node.v.norm() < eps) return node.t;
        for (size_t i = 0; i < words.size(); ++i) {
            int len = node.len + static_cast<int>(words[i].size());
            if (len > max_len) continue;
            Word t = node.t;
            t.insert(t.end(), words[i].begin(), words[i].end());
            queue.push({g.ops[i] * node.v, std::move(t), len, seq++});
        }
    }
    return std::nullopt;
}

std::optional<int> recurrence_exponent(const QfaSpec& spec, const Word& word,
                                       const CVector& psi, double eps, int max_iter) {
    if (eps <= 0) throw std::invalid_argument("recurrence_exponent: eps must be positive");
    SubspacePair pair = decompose(spec, {word});
    double scale = std::max(1.0, psi.norm());
    if (distance_to_span(psi, pair.e1) > 1e-6 * scale) {
        throw std::invalid_argument("recurrence_exponent: psi is not in the ergodic subspace");
    }
    CMatrix op = nonhalting_operator(spec, word);
    CVector v = psi;
    for (int i = 1; i <= max_iter; ++i) {
        v = op * v;
        if ((v - psi).norm() <= eps) return i;
    }
    return std::nullopt;
}

}  // namespace qfa
