#include "qcl/critical_atlas.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qcl/random.hpp"

namespace qcl {

namespace {

void require_signature(const WeightSpectrum& ws, const StratumSignature& sig) {
  if (static_cast<int>(sig.nu.size()) != ws.kappa) {
    throw std::invalid_argument("signature length does not match cluster count");
  }
  for (int i = 0; i < ws.kappa; ++i) {
    const int v = sig.nu[static_cast<std::size_t>(i)];
    if (v < 0 || v > ws.mult[static_cast<std::size_t>(i)]) {
      throw std::invalid_argument("signature component out of range");
    }
  }
}

int sum_nu(const StratumSignature& sig) {
  int s = 0;
  for (const int v : sig.nu) s += v;
  return s;
}

/// Σᵢ νᵢ(nᵢ−νᵢ)
int sum_mixed(const WeightSpectrum& ws, const StratumSignature& sig) {
  int s = 0;
  for (int i = 0; i < ws.kappa; ++i) {
    const auto z = static_cast<std::size_t>(i);
    s += sig.nu[z] * (ws.mult[z] - sig.nu[z]);
  }
  return s;
}

/// Tr(Ω²Λ̂) = Σᵢ (nᵢ−2νᵢ)ω̃ᵢ²
double weighted_trace_of_lambda(const WeightSpectrum& ws, const StratumSignature& sig) {
  double t = 0.0;
  for (int i = 0; i < ws.kappa; ++i) {
    const auto z = static_cast<std::size_t>(i);
    t += (ws.mult[z] - 2 * sig.nu[z]) * ws.distinct[z];
  }
  return t;
}

double jf_value(const WeightSpectrum& ws, const StratumSignature& sig) {
  double v = 0.0;
  for (int i = 0; i < ws.kappa; ++i) {
    const auto z = static_cast<std::size_t>(i);
    v += 4.0 * sig.nu[z] * ws.distinct[z];
  }
  return v;
}

double jp_value(const WeightSpectrum& ws, const StratumSignature& sig) {
  double lo = 0.0, hi = 0.0;
  for (int i = 0; i < ws.kappa; ++i) {
    const auto z = static_cast<std::size_t>(i);
    lo += sig.nu[z] * ws.distinct[z];
    hi += (ws.mult[z] - sig.nu[z]) * ws.distinct[z];
  }
  return 4.0 * lo * hi;
}

/// Per-position (ω̃², λ̂) arrays; positions ordered by nonincreasing ω², null last.
struct PositionData {
  std::vector<double> omega;  // cluster representative per position
  std::vector<int> lambda;    // ±1 (null positions +1)
};

PositionData positions(const WeightSpectrum& ws, const StratumSignature& sig) {
  PositionData pd;
  for (int i = 0; i < ws.kappa; ++i) {
    const auto z = static_cast<std::size_t>(i);
    for (int k = 0; k < ws.mult[z]; ++k) {
      pd.omega.push_back(ws.distinct[z]);
      pd.lambda.push_back(k < sig.nu[z] ? -1 : +1);
    }
  }
  for (int k = 0; k < ws.null_mult; ++k) {
    pd.omega.push_back(0.0);
    pd.lambda.push_back(+1);
  }
  return pd;
}

std::vector<std::pair<double, int>> coalesce(std::vector<double> values, double merge_tol) {
  std::sort(values.begin(), values.end());
  std::vector<std::pair<double, int>> out;
  for (const double v : values) {
    if (!out.empty() && std::abs(v - out.back().first) <= merge_tol) {
      ++out.back().second;
    } else {
      out.emplace_back(v, 1);
    }
  }
  return out;
}

double spectrum_scale(const WeightSpectrum& ws) { return std::max(1.0, ws.norm_a2); }

/// Iterate all ∏(nᵢ+1) signatures in lexicographic order.
template <typename Fn>
void for_each_signature(const WeightSpectrum& ws, Fn&& fn) {
  StratumSignature sig;
  sig.nu.assign(static_cast<std::size_t>(ws.kappa), 0);
  while (true) {
    fn(sig);
    int i = ws.kappa - 1;
    while (i >= 0 && sig.nu[static_cast<std::size_t>(i)] == ws.mult[static_cast<std::size_t>(i)]) {
      sig.nu[static_cast<std::size_t>(i)] = 0;
      --i;
    }
    if (i < 0) break;
    ++sig.nu[static_cast<std::size_t>(i)];
  }
}

}  // namespace

const char* crit_class_name(CritClass c) {
  switch (c) {
    case CritClass::GlobalMin: return "globalMin";
    case CritClass::GlobalMax: return "globalMax";
    case CritClass::Saddle: return "saddle";
    case CritClass::LocalMax: return "localMax";
  }
  return "?";
}

Inertia stratum_inertia(const WeightSpectrum& ws, const StratumSignature& sig, Kind kind) {
  require_signature(ws, sig);
  if (kind != Kind::F && kind != Kind::P) {
    throw std::invalid_argument("stratum_inertia: kind must be F or P");
  }
  const int n = ws.dim();
  const int n0 = ws.null_mult;
  const int s = sum_nu(sig);
  if (kind == Kind::P && weighted_trace_of_lambda(ws, sig) <= 0.0) {
    throw std::invalid_argument("stratum_inertia: kind P requires Tr(Ω²Λ̂) > 0");
  }
  // Cross terms over cluster pairs; clusters ordered by decreasing ω̃², so the
  // −1 factor ν_k pairs with larger ω when k < l.
  int cross_lt = 0, cross_gt = 0;
  for (int k = 0; k < ws.kappa; ++k) {
    for (int l = 0; l < ws.kappa; ++l) {
      const auto zk = static_cast<std::size_t>(k);
      const auto zl = static_cast<std::size_t>(l);
      if (k < l) cross_lt += sig.nu[zk] * (ws.mult[zl] - sig.nu[zl]);
      if (k > l) cross_gt += sig.nu[zk] * (ws.mult[zl] - sig.nu[zl]);
    }
  }
  Inertia in;
  in.neg = s * s + 2 * cross_lt + 2 * n0 * s;
  in.pos = (n - n0 - s) * (n - n0 - s) + 2 * n0 * (n - n0 - s) + 2 * cross_gt;
  in.zero = n0 * n0 + 2 * sum_mixed(ws, sig);
  if (kind == Kind::P) {
    in.pos -= 1;
    in.zero += 1;
  }
  if (in.neg + in.zero + in.pos != n * n) {
    throw std::logic_error("stratum_inertia: counts do not sum to N²");
  }
  return in;
}

CritClass classify(const WeightSpectrum& ws, const CriticalStratum& stratum) {
  const Inertia& in = stratum.inertia;
  if (in.neg == 0 && in.pos > 0) return CritClass::GlobalMin;
  if (in.pos == 0) {
    if (stratum.kind == Kind::F) {
      bool full = true;
      for (int i = 0; i < ws.kappa; ++i) {
        if (stratum.sig.nu[static_cast<std::size_t>(i)] != ws.mult[static_cast<std::size_t>(i)]) {
          full = false;
        }
      }
      if (full) return CritClass::GlobalMax;
    } else if (stratum.critical_value < ws.norm_a2 * ws.norm_a2) {
      return CritClass::LocalMax;
    }
  }
  return CritClass::Saddle;
}

StrataReport enumerate_strata(const WeightSpectrum& ws, Kind kind) {
  if (kind != Kind::F && kind != Kind::P) {
    throw std::invalid_argument("enumerate_strata: kind must be F or P");
  }
  StrataReport report;
  for_each_signature(ws, [&](const StratumSignature& sig) {
    if (kind == Kind::P && weighted_trace_of_lambda(ws, sig) <= 0.0) return;
    CriticalStratum st;
    st.sig = sig;
    st.kind = kind;
    st.critical_value = kind == Kind::F ? jf_value(ws, sig) : jp_value(ws, sig);
    st.inertia = stratum_inertia(ws, sig, kind);
    st.dimension = st.inertia.zero;
    st.cls = classify(ws, st);
    report.strata.push_back(std::move(st));
  });
  std::sort(report.strata.begin(), report.strata.end(),
            [](const CriticalStratum& a, const CriticalStratum& b) {
              if (a.critical_value != b.critical_value) {
                return a.critical_value < b.critical_value;
              }
              return a.sig.nu < b.sig.nu;
            });
  if (kind == Kind::P) {
    GlobalMaxDescriptor mx;
    mx.value = ws.norm_a2 * ws.norm_a2;
    mx.nondegenerate = jp_globalmax_nondegenerate(ws);
    mx.codimension = 2;
    report.max_set = mx;
  }
  return report;
}

CriticalPointSample sample_point(const WeightSpectrum& ws, const StratumSignature& sig,
                                 Kind kind, const cxmat& W, std::uint64_t seed,
                                 double tau_crit) {
  require_signature(ws, sig);
  require_unitary(W, "sample_point target");
  if (W.rows() != ws.dim()) {
    throw std::invalid_argument("sample_point: target dimension mismatch");
  }
  if (kind != Kind::F && kind != Kind::P) {
    throw std::invalid_argument("sample_point: kind must be F or P");
  }
  if (kind == Kind::P && weighted_trace_of_lambda(ws, sig) <= 0.0) {
    throw std::invalid_argument("sample_point: kind P requires Tr(Ω²Λ̂) > 0");
  }
  const int n = ws.dim();
  std::mt19937_64 rng(derive_seed(seed, "sample_point"));

  cxmat gamma = cxmat::Identity(n, n);
  cxmat lambda = cxmat::Identity(n, n);
  int offset = 0;
  for (int i = 0; i < ws.kappa; ++i) {
    const auto z = static_cast<std::size_t>(i);
    const int ni = ws.mult[z];
    gamma.block(offset, offset, ni, ni) = haar_unitary(ni, rng);
    for (int k = 0; k < sig.nu[z]; ++k) lambda(offset + k, offset + k) = -1.0;
    offset += ni;
  }
  cxmat null_block = cxmat::Identity(n, n);
  if (ws.null_mult > 0) {
    null_block.block(offset, offset, ws.null_mult, ws.null_mult) =
        haar_unitary(ws.null_mult, rng);
  }

  double theta = 0.0;
  if (kind == Kind::P) {
    std::uniform_real_distribution<double> uni(0.0, 2.0 * std::numbers::pi);
    theta = uni(rng);
  }

  // Inner factor Γ̂ΛΓ̂† ⊕ X̃₀ (Γ̂'s blocks act only on the nonzero clusters).
  const cxmat inner = gamma * lambda * gamma.adjoint() * null_block;
  cxmat point = W * ws.D * inner * ws.D.adjoint();
  if (kind == Kind::P) point *= std::exp(cxd(0.0, theta));

  CriticalPointSample sample;
  sample.stratum.sig = sig;
  sample.stratum.kind = kind;
  sample.stratum.critical_value = kind == Kind::F ? jf_value(ws, sig) : jp_value(ws, sig);
  sample.stratum.inertia = stratum_inertia(ws, sig, kind);
  sample.stratum.dimension = sample.stratum.inertia.zero;
  sample.stratum.cls = classify(ws, sample.stratum);
  sample.gamma_hat = std::move(gamma);
  sample.null_block = std::move(null_block);
  sample.theta = theta;
  sample.point = std::move(point);

  const LandscapeSpec spec(kind, W, ws);
  const double grad_norm = hs_norm(gradient(spec, sample.point));
  if (grad_norm > tau_crit) {
    throw std::logic_error("sample_point: gradient norm " + std::to_string(grad_norm) +
                           " exceeds tau_crit — formula/implementation mismatch");
  }
  const double val = value(spec, sample.point);
  if (std::abs(val - sample.stratum.critical_value) > 1e-9 * std::max(1.0, std::abs(val))) {
    throw std::logic_error("sample_point: value " + std::to_string(val) +
                           " does not match critical value " +
                           std::to_string(sample.stratum.critical_value));
  }
  return sample;
}

std::vector<std::pair<double, int>> jf_hessian_spectrum(const WeightSpectrum& ws,
                                                        const StratumSignature& sig) {
  require_signature(ws, sig);
  const PositionData pd = positions(ws, sig);
  const int n = ws.dim();
  std::vector<double> gammas;
  gammas.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      gammas.push_back(pd.lambda[static_cast<std::size_t>(i)] * pd.omega[static_cast<std::size_t>(i)] +
                       pd.lambda[static_cast<std::size_t>(j)] * pd.omega[static_cast<std::size_t>(j)]);
    }
  }
  return coalesce(std::move(gammas), 1e-12 * spectrum_scale(ws));
}

std::vector<std::pair<double, int>> jp_hessian_spectrum(const WeightSpectrum& ws,
                                                        const StratumSignature& sig) {
  require_signature(ws, sig);
  const double t = weighted_trace_of_lambda(ws, sig);
  if (t <= 0.0) {
    throw std::invalid_argument("jp_hessian_spectrum: requires Tr(Ω²Λ̂) > 0");
  }
  const int n = ws.dim();
  const PositionData pd = positions(ws, sig);
  std::vector<double> gammas;

  // (a) off-diagonal pairs
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      gammas.push_back(t * (pd.lambda[static_cast<std::size_t>(i)] * pd.omega[static_cast<std::size_t>(i)] +
                            pd.lambda[static_cast<std::size_t>(j)] * pd.omega[static_cast<std::size_t>(j)]));
    }
  }

  // (b) traceless diagonal pairs within each (cluster, sign) group
  for (int i = 0; i < ws.kappa; ++i) {
    const auto z = static_cast<std::size_t>(i);
    const double w = ws.distinct[z];
    for (int k = 0; k < sig.nu[z] - 1; ++k) gammas.push_back(-2.0 * t * w);
    for (int k = 0; k < ws.mult[z] - sig.nu[z] - 1; ++k) gammas.push_back(2.0 * t * w);
  }

  // (c) secular roots of f(γ) = Σ 2ωᵢ⁴/(2Tλ̂ᵢωᵢ² − γ) = 1, excluding γ = 0
  std::vector<double> poles;
  for (int i = 0; i < ws.kappa; ++i) {
    const auto z = static_cast<std::size_t>(i);
    if (sig.nu[z] > 0) poles.push_back(-2.0 * t * ws.distinct[z]);
    if (sig.nu[z] < ws.mult[z]) poles.push_back(2.0 * t * ws.distinct[z]);
  }
  std::sort(poles.begin(), poles.end());
  // merge coinciding poles (cannot occur for t > 0 and distinct ω̃², kept as a guard)
  for (std::size_t k = 1; k < poles.size(); ++k) {
    if (poles[k] - poles[k - 1] <= tol::cluster * std::max(1.0, std::abs(poles[k]))) {
      throw std::runtime_error("jp_hessian_spectrum: coinciding secular poles — "
                               "clustering tolerance problem");
    }
  }

  if (!poles.empty()) {
    const auto f = [&](double g) {
      double acc = 0.0;
      for (int i = 0; i < ws.kappa; ++i) {
        const auto z = static_cast<std::size_t>(i);
        const double w = ws.distinct[z];
        if (sig.nu[z] > 0) acc += sig.nu[z] * 2.0 * w * w / (-2.0 * t * w - g);
        if (sig.nu[z] < ws.mult[z]) {
          acc += (ws.mult[z] - sig.nu[z]) * 2.0 * w * w / (2.0 * t * w - g);
        }
      }
      return acc;
    };
    const auto bisect = [&](double a, double b) {
      double fa = f(a) - 1.0;
      double fb = f(b) - 1.0;
      if (fa * fb > 0.0) {
        throw std::runtime_error("jp_hessian_spectrum: bisection bracket failure — "
                                 "clustering tolerance problem");
      }
      for (int it = 0; it < 200 && (b - a) > 1e-15 * std::max({1.0, std::abs(a), std::abs(b)});
           ++it) {
        const double m = 0.5 * (a + b);
        const double fm = f(m) - 1.0;
        if (fa * fm <= 0.0) {
          b = m;
          fb = fm;
        } else {
          a = m;
          fa = fm;
        }
      }
      return 0.5 * (a + b);
    };

    double sum_w4 = 0.0;
    for (int i = 0; i < n - ws.null_mult; ++i) {
      sum_w4 += 2.0 * pd.omega[static_cast<std::size_t>(i)] * pd.omega[static_cast<std::size_t>(i)];
    }
    std::vector<double> roots;
    const double margin0 = 1e-12 * std::max(1.0, std::abs(poles.front()));
    roots.push_back(bisect(poles.front() - sum_w4 - 1.0, poles.front() - margin0));
    for (std::size_t k = 1; k < poles.size(); ++k) {
      const double ml = 1e-12 * std::max(1.0, std::abs(poles[k - 1]));
      const double mr = 1e-12 * std::max(1.0, std::abs(poles[k]));
      roots.push_back(bisect(poles[k - 1] + ml, poles[k] - mr));
    }
    // remove the γ = 0 root; its multiplicity already sits in the null count
    const double tau_zero = 1e-9 * std::max(1.0, 2.0 * t * ws.distinct.front());
    std::size_t zero_at = roots.size();
    double best = tau_zero;
    for (std::size_t k = 0; k < roots.size(); ++k) {
      if (std::abs(roots[k]) < best) {
        best = std::abs(roots[k]);
        zero_at = k;
      }
    }
    if (zero_at == roots.size()) {
      throw std::logic_error("jp_hessian_spectrum: no secular root found at γ = 0");
    }
    roots.erase(roots.begin() + static_cast<std::ptrdiff_t>(zero_at));
    gammas.insert(gammas.end(), roots.begin(), roots.end());
  }

  // null space
  const int zero_mult = 1 + ws.null_mult * ws.null_mult + 2 * sum_mixed(ws, sig);
  for (int k = 0; k < zero_mult; ++k) gammas.push_back(0.0);

  auto spectrum = coalesce(std::move(gammas), 1e-12 * spectrum_scale(ws) * std::max(1.0, t));
  int total = 0;
  for (const auto& [g, m] : spectrum) total += m;
  if (total != n * n) {
    throw std::logic_error("jp_hessian_spectrum: multiplicities sum to " +
                           std::to_string(total) + " != N²");
  }
  return spectrum;
}

MorseBottReport morse_bott_check(const LandscapeSpec& spec, const CriticalPointSample& sample,
                                 double tau_null) {
  const WeightSpectrum& ws = spec.weight();
  MorseBottReport rep;
  rep.tau_used = tau_null > 0.0 ? tau_null : tol::null_eig * std::max(1.0, ws.norm_a2);
  rep.dim_formula = sample.stratum.dimension;

  const auto closed = sample.stratum.kind == Kind::F
                          ? jf_hessian_spectrum(ws, sample.stratum.sig)
                          : jp_hessian_spectrum(ws, sample.stratum.sig);
  rep.min_nonzero_gamma = 0.0;
  for (const auto& [g, m] : closed) {
    if (std::abs(g) > rep.tau_used &&
        (rep.min_nonzero_gamma == 0.0 || std::abs(g) < rep.min_nonzero_gamma)) {
      rep.min_nonzero_gamma = std::abs(g);
    }
  }
  rep.conclusive = rep.min_nonzero_gamma >= 100.0 * rep.tau_used;

  const rmat H = hessian_matrix(spec, sample.point);
  const Eigen::SelfAdjointEigenSolver<rmat> es(H, Eigen::EigenvaluesOnly);
  rep.nullity = 0;
  for (int k = 0; k < es.eigenvalues().size(); ++k) {
    if (std::abs(es.eigenvalues()(k)) < rep.tau_used) ++rep.nullity;
  }
  rep.pass = rep.conclusive && rep.nullity == rep.dim_formula;
  return rep;
}

bool jp_globalmax_nondegenerate(const WeightSpectrum& ws, double tau_orth) {
  bool degenerate = false;
  for_each_signature(ws, [&](const StratumSignature& sig) {
    if (std::abs(weighted_trace_of_lambda(ws, sig)) <= tau_orth) degenerate = true;
  });
  return !degenerate;
}

}  // namespace qcl
