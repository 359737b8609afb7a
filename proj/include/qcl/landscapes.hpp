#pragma once

#include <optional>

#include "qcl/matgeom.hpp"
#include "qcl/types.hpp"

namespace qcl {

enum class Kind { F, P, G, GP };

const char* kind_name(Kind k);
Kind kind_from_name(std::string_view name);

/// One of the four gate-distance landscapes on U(N).
///
///   F:  ‖(U−W)A‖²                      (weighted Euclidean)
///   P:  ‖A‖⁴ − |Tr(AA†W†U)|²           (phase-invariant)
///   G:  ½‖log(U†W)‖²                   (geodesic)
///   GP: min_k ½‖log(e^{2πik/N} det(U†W)^{−1/N} U†W)‖²   (geodesic, phase-invariant)
class LandscapeSpec {
 public:
  LandscapeSpec(Kind kind, cxmat target, std::optional<WeightSpectrum> weight = std::nullopt);

  Kind kind() const { return kind_; }
  const cxmat& target() const { return target_; }
  const WeightSpectrum& weight() const;
  bool has_weight() const { return weight_.has_value(); }
  /// AA† (identity for kinds G/GP).
  const cxmat& gram() const { return gram_; }
  double norm_a2() const { return norm_a2_; }
  double norm_a4() const { return norm_a2_ * norm_a2_; }
  int dim() const { return static_cast<int>(target_.rows()); }

 private:
  Kind kind_;
  cxmat target_;
  std::optional<WeightSpectrum> weight_;
  cxmat gram_;
  double norm_a2_;
};

double value(const LandscapeSpec& spec, const cxmat& U);

/// Riemannian gradient; tangent at U.
cxmat gradient(const LandscapeSpec& spec, const cxmat& U);

/// Covariant Hessian action Hess_J,U(δU) for kinds F and P (closed form, any U).
cxmat hessian_apply(const LandscapeSpec& spec, const cxmat& U, const cxmat& dU);

/// Numerical Hessian quadratic form over the skew_basis, via second central
/// differences of s ↦ value(U·exp(sY)) with polarization. Symmetric N²×N².
rmat hessian_matrix(const LandscapeSpec& spec, const cxmat& U, double h = tol::fd_step2);

/// Assemble the hessian_apply operator in the skew_basis (kinds F, P).
rmat hessian_operator_matrix(const LandscapeSpec& spec, const cxmat& U);

/// ‖(Ad(U)−Ad(W))∘B‖²_HS with B(Ω)=AΩA†, summed term by term over the
/// skew_basis. Equals 2·value(P, …); kept free of that shortcut as an oracle.
double adjoint_rep_value(const cxmat& A, const cxmat& W, const cxmat& U);

/// Minimizing branch data for kind GP.
struct GpBranch {
  int k = 0;
  cxmat log;        // principal log of the minimizing representative
  double value = 0;
  bool near_cut = false;
};
GpBranch gp_min_branch(const LandscapeSpec& spec, const cxmat& U);

}  // namespace qcl
