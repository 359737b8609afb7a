#include "qcl/landscapes.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qcl {

namespace {

void require_compatible(const LandscapeSpec& spec, const cxmat& U, const char* what) {
  if (U.rows() != spec.dim() || U.cols() != spec.dim()) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch with landscape");
  }
}

cxd weighted_trace(const LandscapeSpec& spec, const cxmat& U) {
  return (spec.gram() * spec.target().adjoint() * U).trace();
}

}  // namespace

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::F: return "F";
    case Kind::P: return "P";
    case Kind::G: return "G";
    case Kind::GP: return "GP";
  }
  return "?";
}

Kind kind_from_name(std::string_view name) {
  if (name == "F" || name == "f") return Kind::F;
  if (name == "P" || name == "p") return Kind::P;
  if (name == "G" || name == "g") return Kind::G;
  if (name == "GP" || name == "gp" || name == "Gp") return Kind::GP;
  throw std::invalid_argument("unknown landscape kind '" + std::string(name) + "'");
}

LandscapeSpec::LandscapeSpec(Kind kind, cxmat target, std::optional<WeightSpectrum> weight)
    : kind_(kind), target_(std::move(target)), weight_(std::move(weight)) {
  require_unitary(target_, "LandscapeSpec target");
  const int n = static_cast<int>(target_.rows());
  if (kind_ == Kind::F || kind_ == Kind::P) {
    if (!weight_.has_value()) {
      throw std::invalid_argument("LandscapeSpec: kinds F/P require a weight spectrum");
    }
    if (weight_->dim() != n) {
      throw std::invalid_argument("LandscapeSpec: weight dimension mismatch");
    }
    gram_ = weight_->A * weight_->A.adjoint();
    gram_ = 0.5 * (gram_ + gram_.adjoint().eval());
    norm_a2_ = weight_->norm_a2;
  } else {
    if (weight_.has_value()) {
      const cxmat G = weight_->A * weight_->A.adjoint();
      if ((G - cxmat::Identity(n, n)).norm() > 1e-12 * n) {
        throw std::invalid_argument(
            "LandscapeSpec: kinds G/GP take no nontrivial weight");
      }
      weight_.reset();
    }
    gram_ = cxmat::Identity(n, n);
    norm_a2_ = static_cast<double>(n);
  }
}

const WeightSpectrum& LandscapeSpec::weight() const {
  if (!weight_.has_value()) {
    throw std::logic_error("LandscapeSpec: no weight attached");
  }
  return *weight_;
}

GpBranch gp_min_branch(const LandscapeSpec& spec, const cxmat& U) {
  const int n = spec.dim();
  const cxmat X = U.adjoint() * spec.target();
  cxd det = X.determinant();
  det /= std::abs(det);
  // principal N-th root of det; alternative roots only relabel k
  const double phi = std::atan2(det.imag(), det.real());
  const cxd root_inv = std::exp(cxd(0.0, -phi / n));

  GpBranch best;
  bool have = false;
  for (int k = 0; k < n; ++k) {
    const cxd phase = std::exp(cxd(0.0, 2.0 * std::numbers::pi * k / n)) * root_inv;
    PrincipalLog pl = principal_log(phase * X);
    const double v = 0.5 * pl.log.squaredNorm();
    if (!have || v < best.value) {  // ties break toward the smallest k
      best.k = k;
      best.log = std::move(pl.log);
      best.value = v;
      best.near_cut = pl.near_cut;
      have = true;
    }
  }
  return best;
}

double value(const LandscapeSpec& spec, const cxmat& U) {
  require_compatible(spec, U, "value");
  switch (spec.kind()) {
    case Kind::F:
      return 2.0 * spec.norm_a2() - 2.0 * weighted_trace(spec, U).real();
    case Kind::P: {
      const cxd t = weighted_trace(spec, U);
      return spec.norm_a4() - std::norm(t);
    }
    case Kind::G: {
      const PrincipalLog pl = principal_log(U.adjoint() * spec.target());
      return 0.5 * pl.log.squaredNorm();
    }
    case Kind::GP:
      return gp_min_branch(spec, U).value;
  }
  throw std::logic_error("value: unreachable");
}

cxmat gradient(const LandscapeSpec& spec, const cxmat& U) {
  require_compatible(spec, U, "gradient");
  const cxmat& W = spec.target();
  const cxmat& G = spec.gram();
  switch (spec.kind()) {
    case Kind::F:
      return U * G * W.adjoint() * U - W * G;
    case Kind::P: {
      const cxd t = weighted_trace(spec, U);
      return std::conj(t) * (U * G * W.adjoint() * U) - t * (W * G);
    }
    case Kind::G: {
      const PrincipalLog pl = principal_log(U.adjoint() * W);
      return -U * pl.log;
    }
    case Kind::GP: {
      const GpBranch br = gp_min_branch(spec, U);
      const cxd tr = br.log.trace() / static_cast<double>(spec.dim());
      const double trace_part = std::abs(tr) * std::sqrt(static_cast<double>(spec.dim()));
      if (trace_part > 1e-10) {
        throw std::logic_error(
            "gradient(GP): trace of minimizing-branch log did not vanish (norm " +
            std::to_string(trace_part) + ")");
      }
      cxmat L = br.log;
      L.diagonal().array() -= tr;
      return -U * L;
    }
  }
  throw std::logic_error("gradient: unreachable");
}

cxmat hessian_apply(const LandscapeSpec& spec, const cxmat& U, const cxmat& dU) {
  require_compatible(spec, U, "hessian_apply");
  require_tangent(U, dU, "hessian_apply");
  const cxmat& W = spec.target();
  const cxmat& G = spec.gram();
  switch (spec.kind()) {
    case Kind::F: {
      const cxmat M = dU * G * W.adjoint() * U + U * G * W.adjoint() * dU;
      return project_to_tangent(U, M);
    }
    case Kind::P: {
      const cxd t = weighted_trace(spec, U);
      const cxd tdot = (G * W.adjoint() * dU).trace();
      const cxmat M = std::conj(tdot) * (U * G * W.adjoint() * U) +
                      std::conj(t) * (dU * G * W.adjoint() * U + U * G * W.adjoint() * dU) -
                      tdot * (W * G);
      return project_to_tangent(U, M);
    }
    default:
      throw std::invalid_argument(
          "hessian_apply: no closed form for kinds G/GP, use hessian_matrix");
  }
}

rmat hessian_matrix(const LandscapeSpec& spec, const cxmat& U, double h) {
  require_compatible(spec, U, "hessian_matrix");
  require_unitary(U, "hessian_matrix");
  if (h < 1e-7 || h > 1e-2) {
    throw std::invalid_argument("hessian_matrix: step size outside [1e-7, 1e-2]");
  }
  const int n = spec.dim();
  const std::vector<cxmat> basis = skew_basis(n);
  const int n2 = static_cast<int>(basis.size());
  const double f0 = value(spec, U);
  const auto second_diff = [&](const cxmat& Y) {
    const double fp = value(spec, U * exp_skew(h * Y));
    const double fm = value(spec, U * exp_skew(-h * Y));
    return (fp + fm - 2.0 * f0) / (h * h);
  };
  rmat H(n2, n2);
  for (int a = 0; a < n2; ++a) {
    H(a, a) = second_diff(basis[static_cast<std::size_t>(a)]);
    for (int b = a + 1; b < n2; ++b) {
      const cxmat sum = basis[static_cast<std::size_t>(a)] + basis[static_cast<std::size_t>(b)];
      const cxmat diff = basis[static_cast<std::size_t>(a)] - basis[static_cast<std::size_t>(b)];
      const double q = 0.25 * (second_diff(sum) - second_diff(diff));
      H(a, b) = q;
      H(b, a) = q;
    }
  }
  return H;
}

rmat hessian_operator_matrix(const LandscapeSpec& spec, const cxmat& U) {
  const int n = spec.dim();
  const std::vector<cxmat> basis = skew_basis(n);
  const int n2 = static_cast<int>(basis.size());
  rmat H(n2, n2);
  for (int b = 0; b < n2; ++b) {
    const cxmat HdU = hessian_apply(spec, U, U * basis[static_cast<std::size_t>(b)]);
    for (int a = 0; a < n2; ++a) {
      H(a, b) = hs_inner(U * basis[static_cast<std::size_t>(a)], HdU);
    }
  }
  return 0.5 * (H + H.transpose().eval());
}

double adjoint_rep_value(const cxmat& A, const cxmat& W, const cxmat& U) {
  if (A.rows() != A.cols() || A.rows() != W.rows() || W.rows() != U.rows()) {
    throw std::invalid_argument("adjoint_rep_value: dimension mismatch");
  }
  require_unitary(W, "adjoint_rep_value W");
  require_unitary(U, "adjoint_rep_value U");
  const cxmat X = W.adjoint() * U;
  double total = 0.0;
  for (const cxmat& omega : skew_basis(static_cast<int>(A.rows()))) {
    const cxmat B = A * omega * A.adjoint();
    total += hs_inner(B, B) - hs_inner(B, X * B * X.adjoint());
  }
  return 2.0 * total;
}

}  // namespace qcl
