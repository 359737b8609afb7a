#pragma once

#include <vector>

#include "qcl/types.hpp"

namespace qcl {

/// Real Hilbert-Schmidt inner product Re Tr(X†Y) and the induced norm.
double hs_inner(const cxmat& X, const cxmat& Y);
double hs_norm(const cxmat& X);

/// ‖U†U − I‖_F.
double unitarity_residual(const cxmat& U);
bool is_unitary(const cxmat& U, double eps = tol::unitary);
void require_unitary(const cxmat& U, const char* what, double eps = tol::unitary);

/// ‖U†δU + (U†δU)†‖_F — zero iff δU is tangent at U.
double tangency_residual(const cxmat& U, const cxmat& dU);
void require_tangent(const cxmat& U, const cxmat& dU, const char* what,
                     double eps = tol::unitary);

/// Orthogonal projection of M onto T_U U(N): (M − U M† U)/2.
cxmat project_to_tangent(const cxmat& U, const cxmat& M);

struct PrincipalLog {
  cxmat log;      // skew-Hermitian, eigenvalues in (-iπ, iπ]
  bool near_cut;  // some eigenvalue of V within tol::cut_locus of -1
};

/// Principal matrix logarithm of a unitary (via Schur form).
PrincipalLog principal_log(const cxmat& V, double tau_cut = tol::cut_locus);

/// exp of a skew-Hermitian matrix; result is unitary.
cxmat exp_skew(const cxmat& Y);

/// Geodesic retraction U·exp(s·U†δU). δU must be tangent at U.
cxmat retract(const cxmat& U, const cxmat& dU, double s);

/// Polar re-projection U(U†U)^{-1/2} onto U(N).
cxmat reunitarize(const cxmat& U);

/// Spectral data of AA†: diagonalizer, clustered eigenvalues, multiplicities.
struct WeightSpectrum {
  cxmat A;
  cxmat D;                        // unitary, D†AA†D = Ω² nonincreasing
  rvec omega_sq;                  // ω₁² ≥ … ≥ ω_N²
  std::vector<double> distinct;   // ω̃₁² > … > ω̃_κ² > 0 (cluster representatives)
  std::vector<int> mult;          // n₁, …, n_κ
  int null_mult = 0;              // n₀
  int kappa = 0;                  // κ
  std::vector<int> cluster_of;    // per position: cluster index, or -1 for null
  double norm_a2 = 0.0;           // ‖A‖² = Tr(AA†)

  int dim() const { return static_cast<int>(omega_sq.size()); }
  /// Cluster representative ω̃² for a position (0 on the null cluster).
  double rep(int position) const {
    const int c = cluster_of[static_cast<std::size_t>(position)];
    return c < 0 ? 0.0 : distinct[static_cast<std::size_t>(c)];
  }
};

/// Cluster the spectrum of AA†. A is fully arbitrary.
WeightSpectrum analyze_weight(const cxmat& A, double tau_cluster = tol::cluster);

/// Orthonormal basis of u(N) under Re Tr(X†Y): i|p⟩⟨p|, (i/√2)(|p⟩⟨q|+|q⟩⟨p|),
/// (1/√2)(|p⟩⟨q|−|q⟩⟨p|). Size N².
std::vector<cxmat> skew_basis(int n);

}  // namespace qcl
