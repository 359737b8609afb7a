#pragma once

#include <Eigen/Dense>
#include <complex>

namespace qcl {

using cxd = std::complex<double>;
using cxmat = Eigen::MatrixXcd;
using cxvec = Eigen::VectorXcd;
using rmat = Eigen::MatrixXd;
using rvec = Eigen::VectorXd;

namespace tol {

/// Unitarity / tangency residual allowed on inputs claiming to live on U(N).
inline constexpr double unitary = 1e-10;

/// exp(principal_log(V)) must reproduce V to this accuracy.
inline constexpr double log_roundtrip = 1e-10;

/// Eigenvalues of V within this distance of -1 flag the cut locus.
inline constexpr double cut_locus = 1e-8;

/// Relative gap used when clustering eigenvalues of AA†.
inline constexpr double cluster = 1e-8;

/// A point counts as critical when the gradient norm is below this.
inline constexpr double critical = 1e-9;

/// Base tolerance for declaring a Hessian eigenvalue null (scaled by max(1, ‖A‖²)).
inline constexpr double null_eig = 1e-6;

/// Orthogonality tolerance in the global-max nondegeneracy scan.
inline constexpr double orth = 1e-10;

/// Relative singular-value threshold for the numerical rank of dV_T.
inline constexpr double rank = 1e-8;

/// Central-difference steps: first and second derivatives.
inline constexpr double fd_step1 = 1e-5;
inline constexpr double fd_step2 = 1e-4;

}  // namespace tol

}  // namespace qcl
