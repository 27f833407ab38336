#pragma once

// Symplectic normalization of a sub-Riemannian ellipsoid {g(v, v) <= 1} on
// R^n x R^n*: find C with C^T Omega C = Omega and
// C^T g C = diag(a_1^-2, ..., a_n^-2, a_1^-2, ..., a_n^-2).

#include <Eigen/Dense>

#include "sfh/trajectory.hpp"

namespace sfh {

struct SymplecticNormalForm {
  Eigen::MatrixXd C;  // columns a_k^-1 e_k (k = 1..n), then a_k^-1 f_k
  Eigen::VectorXd a;  // descending
  Eigen::MatrixXd g;
};

/// The canonical symplectic matrix [[0, I], [-I, 0]] of size 2n.
Eigen::MatrixXd canonical_symplectic(Eigen::Index n);

/// Throws NotSymmetric, NotPositiveDefinite, DimensionMismatch (odd size).
SymplecticNormalForm williamson(const Eigen::MatrixXd& g);

struct NormalFormResiduals {
  double symplectic = 0.0;  // max |C^T Omega C - Omega|
  double diagonal = 0.0;    // max |C^T g C - diag(a^-2, a^-2)|
};
NormalFormResiduals residuals(const SymplecticNormalForm& form);

/// (x, y) = C (x~, y~) samplewise; z unchanged.
Trajectory pushforward_trajectory(const SymplecticNormalForm& form, const Trajectory& normalized);

}  // namespace sfh
