#include "qfa/linalg.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <stdexcept>

namespace qfa {

CMatrix Basis::as_matrix() const {
    CMatrix m(ambient_dim(), dim());
    for (int j = 0; j < dim(); ++j) m.col(j) = vectors[j];
    return m;
}

CVector mat_vec(const CMatrix& m, const CVector& v) {
    if (m.cols() != v.size()) {
        throw std::invalid_argument("mat_vec: dimension mismatch");
    }
    return m * v;
}

bool is_unitary(const CMatrix& m, double tol) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("is_unitary: matrix must be square");
    }
    CMatrix gram = m.adjoint() * m;
    gram -= CMatrix::Identity(m.rows(), m.cols());
    return gram.cwiseAbs().maxCoeff() <= tol;
}

Basis nullspace(const CMatrix& m, double tol) {
    if (!m.allFinite()) {
        throw std::invalid_argument("nullspace: matrix has non-finite entries");
    }
    Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    Basis b;
    for (int j = 0; j < m.cols(); ++j) {
        double sigma = j < sv.size() ? sv(j) : 0.0;
        if (sigma <= tol) b.vectors.push_back(svd.matrixV().col(j));
    }
    return b;
}

CVector project(const CVector& v, const Basis& b) {
    CVector out = CVector::Zero(v.size());
    for (const CVector& u : b.vectors) {
        if (u.size() != v.size()) {
            throw std::invalid_argument("project: dimension mismatch");
        }
        out += u.dot(v) * u;
    }
    return out;
}

double distance_to_span(const CVector& v, const Basis& b) {
    if (b.dim() == 0) return v.norm();
    return (v - project(v, b)).norm();
}

bool is_orthonormal(const Basis& b, double tol) {
    for (int i = 0; i < b.dim(); ++i) {
        for (int j = i; j < b.dim(); ++j) {
            Complex g = b.vectors[i].dot(b.vectors[j]);
            double want = i == j ? 1.0 : 0.0;
            if (std::abs(g - want) > tol) return false;
        }
    }
    return true;
}

CMatrix complete_to_unitary(const std::vector<CVector>& partial_columns, double tol) {
    if (partial_columns.empty()) {
        throw std::invalid_argument("complete_to_unitary: no columns given");
    }
    const int n = static_cast<int>(partial_columns.front().size());
    const int k = static_cast<int>(partial_columns.size());
    if (k > n) throw std::invalid_argument("complete_to_unitary: too many columns");
    Basis given{partial_columns};
    if (!is_orthonormal(given, tol)) {
        throw std::invalid_argument("complete_to_unitary: columns not orthonormal within tol");
    }

    std::vector<CVector> cols = partial_columns;
    auto residual = [&cols](const CVector& e) {
        CVector r = e;
        for (const CVector& u : cols) r -= u.dot(r) * u;
        // second pass keeps orthogonality near machine precision
        for (const CVector& u : cols) r -= u.dot(r) * u;
        return r;
    };
    while (static_cast<int>(cols.size()) < n) {
        int best = -1;
        double best_norm = 0.0;
        CVector best_r;
        for (int i = 0; i < n; ++i) {
            CVector r = residual(CVector::Unit(n, i));
            double nr = r.norm();
            if (nr > best_norm + 1e-12) {
                best = i;
                best_norm = nr;
                best_r = r;
            }
        }
        if (best < 0 || best_norm < 1e-8) {
            throw std::runtime_error("complete_to_unitary: extension failed");
        }
        cols.push_back(best_r / best_norm);
    }

    CMatrix u(n, n);
    for (int j = 0; j < n; ++j) u.col(j) = cols[j];
    return u;
}

}  // namespace qfa
