#include "qcl/matgeom.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qcl {

namespace {

void require_square(const cxmat& M, const char* what) {
  if (M.rows() != M.cols() || M.rows() == 0) {
    throw std::invalid_argument(std::string(what) + ": matrix must be square and nonempty");
  }
}

void require_same_dim(const cxmat& X, const cxmat& Y, const char* what) {
  if (X.rows() != Y.rows() || X.cols() != Y.cols()) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch");
  }
}

}  // namespace

double hs_inner(const cxmat& X, const cxmat& Y) {
  return (X.adjoint() * Y).trace().real();
}

double hs_norm(const cxmat& X) { return X.norm(); }

double unitarity_residual(const cxmat& U) {
  require_square(U, "unitarity_residual");
  return (U.adjoint() * U - cxmat::Identity(U.rows(), U.cols())).norm();
}

bool is_unitary(const cxmat& U, double eps) { return unitarity_residual(U) <= eps; }

void require_unitary(const cxmat& U, const char* what, double eps) {
  const double r = unitarity_residual(U);
  if (r > eps) {
    throw std::invalid_argument(std::string(what) + ": input not unitary (residual " +
                                std::to_string(r) + ")");
  }
}

double tangency_residual(const cxmat& U, const cxmat& dU) {
  require_same_dim(U, dU, "tangency_residual");
  const cxmat S = U.adjoint() * dU;
  return (S + S.adjoint()).norm();
}

void require_tangent(const cxmat& U, const cxmat& dU, const char* what, double eps) {
  const double scale = std::max(1.0, dU.norm());
  const double r = tangency_residual(U, dU);
  if (r > eps * scale) {
    throw std::invalid_argument(std::string(what) + ": direction not tangent (residual " +
                                std::to_string(r) + ")");
  }
}

cxmat project_to_tangent(const cxmat& U, const cxmat& M) {
  require_same_dim(U, M, "project_to_tangent");
  return 0.5 * (M - U * M.adjoint() * U);
}

PrincipalLog principal_log(const cxmat& V, double tau_cut) {
  require_unitary(V, "principal_log");
  Eigen::ComplexSchur<cxmat> schur(V, true);
  if (schur.info() != Eigen::Success) {
    throw std::runtime_error("principal_log: Schur decomposition failed");
  }
  const cxmat& Q = schur.matrixU();
  const int n = static_cast<int>(V.rows());
  cxvec phases(n);
  bool near_cut = false;
  for (int k = 0; k < n; ++k) {
    cxd lam = schur.matrixT()(k, k);
    lam /= std::abs(lam);
    if (std::abs(lam + cxd(1.0, 0.0)) <= tau_cut) near_cut = true;
    double theta = std::atan2(lam.imag(), lam.real());
    // branch (-π, π]: atan2 can return -π for imag = -0
    if (theta <= -std::numbers::pi) theta = std::numbers::pi;
    phases(k) = cxd(0.0, theta);
  }
  cxmat L = Q * phases.asDiagonal() * Q.adjoint();
  L = 0.5 * (L - L.adjoint().eval());
  return {std::move(L), near_cut};
}

cxmat exp_skew(const cxmat& Y) {
  require_square(Y, "exp_skew");
  if ((Y + Y.adjoint()).norm() > tol::unitary * std::max(1.0, Y.norm())) {
    throw std::invalid_argument("exp_skew: input not skew-Hermitian");
  }
  // Y = iH with H Hermitian; exp(Y) = E exp(iθ) E†.
  cxmat H = cxd(0.0, -1.0) * Y;
  H = 0.5 * (H + H.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<cxmat> es(H);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("exp_skew: eigendecomposition failed");
  }
  const int n = static_cast<int>(Y.rows());
  cxvec phases(n);
  for (int k = 0; k < n; ++k) {
    phases(k) = std::exp(cxd(0.0, es.eigenvalues()(k)));
  }
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

cxmat retract(const cxmat& U, const cxmat& dU, double s) {
  require_unitary(U, "retract");
  require_tangent(U, dU, "retract");
  if (s == 0.0) return U;
  cxmat S = U.adjoint() * dU;
  S = 0.5 * (S - S.adjoint().eval());
  return U * exp_skew(s * S);
}

cxmat reunitarize(const cxmat& U) {
  require_square(U, "reunitarize");
  Eigen::JacobiSVD<cxmat> svd(U, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

WeightSpectrum analyze_weight(const cxmat& A, double tau_cluster) {
  require_square(A, "analyze_weight");
  const int n = static_cast<int>(A.rows());
  cxmat G = A * A.adjoint();
  G = 0.5 * (G + G.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<cxmat> es(G);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("analyze_weight: eigendecomposition of AA† failed");
  }

  WeightSpectrum ws;
  ws.A = A;
  ws.omega_sq.resize(n);
  ws.D.resize(n, n);
  for (int k = 0; k < n; ++k) {  // Eigen sorts ascending; we want nonincreasing
    ws.omega_sq(k) = std::max(0.0, es.eigenvalues()(n - 1 - k));
    ws.D.col(k) = es.eigenvectors().col(n - 1 - k);
  }
  ws.norm_a2 = G.trace().real();
  ws.cluster_of.assign(static_cast<std::size_t>(n), -1);

  const double null_thresh = tau_cluster * std::max(1.0, ws.norm_a2);
  int first_null = n;
  while (first_null > 0 && ws.omega_sq(first_null - 1) <= null_thresh) --first_null;
  ws.null_mult = n - first_null;

  int pos = 0;
  while (pos < first_null) {
    const double head = ws.omega_sq(pos);
    int end = pos + 1;
    while (end < first_null && head - ws.omega_sq(end) <= tau_cluster * std::max(1.0, head)) {
      ++end;
    }
    double mean = 0.0;
    for (int k = pos; k < end; ++k) {
      ws.cluster_of[static_cast<std::size_t>(k)] = ws.kappa;
      mean += ws.omega_sq(k);
    }
    ws.distinct.push_back(mean / (end - pos));
    ws.mult.push_back(end - pos);
    ++ws.kappa;
    pos = end;
  }
  return ws;
}

std::vector<cxmat> skew_basis(int n) {
  std::vector<cxmat> basis;
  basis.reserve(static_cast<std::size_t>(n) * n);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int p = 0; p < n; ++p) {
    cxmat Y = cxmat::Zero(n, n);
    Y(p, p) = cxd(0.0, 1.0);
    basis.push_back(std::move(Y));
  }
  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) {
      cxmat Ys = cxmat::Zero(n, n);
      Ys(p, q) = cxd(0.0, inv_sqrt2);
      Ys(q, p) = cxd(0.0, inv_sqrt2);
      basis.push_back(std::move(Ys));
      cxmat Ya = cxmat::Zero(n, n);
      Ya(p, q) = cxd(inv_sqrt2, 0.0);
      Ya(q, p) = cxd(-inv_sqrt2, 0.0);
      basis.push_back(std::move(Ya));
    }
  }
  return basis;
}

}  // namespace qcl
