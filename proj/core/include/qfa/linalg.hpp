#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace qfa {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// An orthonormal set of vectors spanning a subspace. May be empty.
struct Basis {
    std::vector<CVector> vectors;

    int dim() const { return static_cast<int>(vectors.size()); }
    int ambient_dim() const {
        return vectors.empty() ? 0 : static_cast<int>(vectors.front().size());
    }
    /// Columns are the basis vectors (ambient_dim x dim).
    CMatrix as_matrix() const;
};

/// m * v with an explicit dimension check (throws std::invalid_argument).
CVector mat_vec(const CMatrix& m, const CVector& v);

/// True iff ||m'm - I||_max <= tol. Throws on non-square input.
bool is_unitary(const CMatrix& m, double tol);

/// Orthonormal basis of the right nullspace, by SVD with an absolute
/// singular-value threshold. The basis may be empty.
Basis nullspace(const CMatrix& m, double tol);

/// Orthogonal projection of v onto span(b).
CVector project(const CVector& v, const Basis& b);

/// ||v - P_b(v)||.
double distance_to_span(const CVector& v, const Basis& b);

/// Checks pairwise inner products and norms against tol.
bool is_orthonormal(const Basis& b, double tol);

/// Extends pairwise-orthonormal columns to a full unitary matrix. The first
/// columns of the result are the inputs; the remaining ones come from a
/// deterministic Gram-Schmidt sweep over the standard basis (largest residual
/// first, ties by index). Throws if the inputs are not orthonormal within tol.
CMatrix complete_to_unitary(const std::vector<CVector>& partial_columns, double tol);

}  // namespace qfa
