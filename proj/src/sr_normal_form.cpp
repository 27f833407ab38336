#include "sfh/sr_normal_form.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "sfh/error.hpp"

namespace sfh {

Eigen::MatrixXd canonical_symplectic(Eigen::Index n) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  J.topRightCorner(n, n).setIdentity();
  J.bottomLeftCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
  return J;
}

SymplecticNormalForm williamson(const Eigen::MatrixXd& g) {
  const Eigen::Index m = g.rows();
  if (m != g.cols() || m == 0 || m % 2 != 0) {
    throw Error(ErrorCode::kDimensionMismatch, "g must be a 2n x 2n matrix");
  }
  const double scale = g.cwiseAbs().maxCoeff();
  if (!std::isfinite(scale) || (g - g.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw Error(ErrorCode::kNotSymmetric, "g is not symmetric");
  }
  const Eigen::Index n = m / 2;
  const Eigen::MatrixXd gs = 0.5 * (g + g.transpose());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eg(gs);
  const Eigen::VectorXd d = eg.eigenvalues();
  if (!(d.minCoeff() > 1e-12 * d.maxCoeff())) {
    throw Error(ErrorCode::kNotPositiveDefinite, "g is not positive definite");
  }
  const Eigen::MatrixXd inv_sqrt = eg.eigenvectors() * d.cwiseInverse().cwiseSqrt().asDiagonal() *
                                   eg.eigenvectors().transpose();

  // M = g^{-1/2} Omega g^{-1/2} is skew; -M^2 = M^T M is symmetric PSD with
  // eigenvalues sigma_k^2 (each twice), sigma_k = a_k^2.
  const Eigen::MatrixXd J = canonical_symplectic(n);
  const Eigen::MatrixXd M = inv_sqrt * J * inv_sqrt;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M.transpose() * M);
  const Eigen::MatrixXd V = es.eigenvectors();

  // Group eigenvalues into clusters (relative gap 1e-8), from the top. Inside
  // a cluster's eigenspace, each plane starts from the projection of the
  // standard basis vector that projects longest (lowest index on ties), so
  // C is deterministic and C = I whenever g is already in normal form. The
  // partner -M w / |M w| stays in the M-invariant cluster space.
  const Eigen::VectorXd ev = es.eigenvalues();
  const double top = std::max(ev(m - 1), 0.0);
  Eigen::MatrixXd W(m, m);
  std::vector<double> sigma;
  Eigen::Index taken = 0;
  Eigen::Index hi = m - 1;
  while (hi >= 0 && taken < m) {
    Eigen::Index lo = hi;
    while (lo > 0 && ev(hi) - ev(lo - 1) <= 1e-8 * top) --lo;
    const Eigen::MatrixXd Q = V.middleCols(lo, hi - lo + 1);
    const Eigen::Index planes = (hi - lo + 1) / 2;
    for (Eigen::Index k = 0; k < planes; ++k) {
      Eigen::VectorXd w;
      double best = 0.0;
      for (Eigen::Index j = 0; j < m; ++j) {
        Eigen::VectorXd c = Q * Q.row(j).transpose();
        for (int pass = 0; pass < 2; ++pass) {
          for (Eigen::Index i = 0; i < taken; ++i) c -= W.col(i).dot(c) * W.col(i);
        }
        if (c.norm() > best * (1.0 + 1e-9)) {
          best = c.norm();
          w = c;
        }
      }
      if (best < 1e-6) break;
      w.normalize();
      Eigen::VectorXd w2 = -(M * w);
      for (int pass = 0; pass < 2; ++pass) {
        for (Eigen::Index i = 0; i < taken; ++i) w2 -= W.col(i).dot(w2) * W.col(i);
        w2 -= w.dot(w2) * w;
      }
      w2.normalize();
      W.col(taken) = w;
      W.col(taken + 1) = w2;
      sigma.push_back(w.dot(M * w2));
      taken += 2;
    }
    hi = lo - 1;
  }
  if (taken != m) throw Error(ErrorCode::kNotPositiveDefinite, "failed to split g into symplectic planes");

  // Planes were visited by descending sigma; a_k = sqrt(sigma_k).
  SymplecticNormalForm form;
  form.g = g;
  form.a.resize(n);
  form.C.resize(m, m);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double a = std::sqrt(sigma[static_cast<std::size_t>(k)]);
    form.a(k) = a;
    form.C.col(k) = inv_sqrt * W.col(2 * k) / a;
    form.C.col(n + k) = inv_sqrt * W.col(2 * k + 1) / a;
  }
  return form;
}

NormalFormResiduals residuals(const SymplecticNormalForm& form) {
  const Eigen::Index n = form.a.size();
  const Eigen::MatrixXd J = canonical_symplectic(n);
  Eigen::VectorXd diag(2 * n);
  for (Eigen::Index k = 0; k < n; ++k) diag(k) = diag(n + k) = 1.0 / (form.a(k) * form.a(k));
  NormalFormResiduals r;
  r.symplectic = (form.C.transpose() * J * form.C - J).cwiseAbs().maxCoeff();
  const Eigen::MatrixXd D = diag.asDiagonal();
  r.diagonal = (form.C.transpose() * form.g * form.C - D).cwiseAbs().maxCoeff();
  return r;
}

Trajectory pushforward_trajectory(const SymplecticNormalForm& form, const Trajectory& normalized) {
  const Eigen::Index n = form.a.size();
  Trajectory out;
  out.times = normalized.times;
  out.states.reserve(normalized.states.size());
  Eigen::VectorXd v(2 * n);
  for (const HPoint& s : normalized.states) {
    if (static_cast<Eigen::Index>(s.xy.size()) != n) {
      throw Error(ErrorCode::kDimensionMismatch, "trajectory dimension differs from the normal form");
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      v(i) = s.xy[static_cast<std::size_t>(i)].x;
      v(n + i) = s.xy[static_cast<std::size_t>(i)].y;
    }
    const Eigen::VectorXd w = form.C * v;
    HPoint p;
    p.xy.resize(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) p.xy[static_cast<std::size_t>(i)] = {w(i), w(n + i)};
    p.z = s.z;
    out.states.push_back(std::move(p));
  }
  return out;
}

}  // namespace sfh
