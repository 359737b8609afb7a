#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "qcl/landscapes.hpp"
#include "qcl/matgeom.hpp"

namespace qcl {

/// Per-cluster count of −1 entries in Λ.
struct StratumSignature {
  std::vector<int> nu;
};

enum class CritClass { GlobalMin, GlobalMax, Saddle, LocalMax };
const char* crit_class_name(CritClass c);

struct Inertia {
  int neg = 0;
  int zero = 0;
  int pos = 0;
};

struct CriticalStratum {
  StratumSignature sig;
  Kind kind = Kind::F;
  double critical_value = 0.0;
  int dimension = 0;
  Inertia inertia;
  CritClass cls = CritClass::Saddle;
};

/// The kind-P level set {Tr(AA†W†U) = 0}; not a ν-stratum.
struct GlobalMaxDescriptor {
  double value = 0.0;       // ‖A‖⁴
  bool nondegenerate = false;
  int codimension = 2;      // meaningful when nondegenerate
};

struct StrataReport {
  std::vector<CriticalStratum> strata;
  std::optional<GlobalMaxDescriptor> max_set;  // kind P only
};

/// Closed-form inertia of the Hessian on the stratum labeled by sig.
Inertia stratum_inertia(const WeightSpectrum& ws, const StratumSignature& sig, Kind kind);

CritClass classify(const WeightSpectrum& ws, const CriticalStratum& stratum);

/// All critical strata: kind F enumerates every signature (∏(nᵢ+1) of them);
/// kind P keeps those with Σ(nᵢ−2νᵢ)ω̃ᵢ² > 0 and adds the global-max descriptor.
StrataReport enumerate_strata(const WeightSpectrum& ws, Kind kind);

struct CriticalPointSample {
  CriticalStratum stratum;
  cxmat gamma_hat;   // block unitary in U(n₁)⊕…⊕U(n_κ), embedded N×N
  cxmat null_block;  // U(n₀) factor, embedded
  double theta = 0.0;  // kind P phase
  cxmat point;
};

/// Draw a Haar-random point of the stratum and verify it is critical.
CriticalPointSample sample_point(const WeightSpectrum& ws, const StratumSignature& sig,
                                 Kind kind, const cxmat& W, std::uint64_t seed,
                                 double tau_crit = tol::critical);

/// Hessian eigenvalue multisets (value, multiplicity), ascending; Σmult = N².
std::vector<std::pair<double, int>> jf_hessian_spectrum(const WeightSpectrum& ws,
                                                        const StratumSignature& sig);
std::vector<std::pair<double, int>> jp_hessian_spectrum(const WeightSpectrum& ws,
                                                        const StratumSignature& sig);

struct MorseBottReport {
  int nullity = 0;
  int dim_formula = 0;
  bool pass = false;
  bool conclusive = true;   // false when tau_null collides with the smallest |γ|
  double min_nonzero_gamma = 0.0;
  double tau_used = 0.0;
};

/// Compare the numerical Hessian nullity at the sample against the stratum
/// dimension formula. tau_null ≤ 0 selects the default 1e-6·max(1,‖A‖²).
MorseBottReport morse_bott_check(const LandscapeSpec& spec, const CriticalPointSample& sample,
                                 double tau_null = 0.0);

/// True iff no signature ν satisfies Σ(nᵢ−2νᵢ)ω̃ᵢ² = 0 within tau_orth, i.e.
/// the kind-P maximum set is a nondegenerate codimension-2 submanifold.
bool jp_globalmax_nondegenerate(const WeightSpectrum& ws, double tau_orth = tol::orth);

}  // namespace qcl
