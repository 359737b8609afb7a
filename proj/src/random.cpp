#include "qcl/random.hpp"

#include <Eigen/QR>
#include <cmath>

namespace qcl {

std::uint64_t derive_seed(std::uint64_t master, std::string_view tag) {
  std::uint64_t h = master ^ 0x9e3779b97f4a7c15ULL;
  for (const char c : tag) {
    h ^= static_cast<std::uint64_t>(static_cast<unsigned char>(c));
    h *= 0xbf58476d1ce4e5b9ULL;
    h ^= h >> 27;
  }
  h ^= h >> 31;
  h *= 0x94d049bb133111ebULL;
  h ^= h >> 33;
  return h;
}

cxmat ginibre(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  cxmat G(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      G(i, j) = cxd(gauss(rng), gauss(rng));
    }
  }
  return G;
}

cxmat haar_unitary(int n, std::mt19937_64& rng) {
  const cxmat G = ginibre(n, n, rng);
  Eigen::HouseholderQR<cxmat> qr(G);
  cxmat Q = qr.householderQ();
  const cxmat R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < n; ++k) {
    const cxd r = R(k, k);
    const double a = std::abs(r);
    Q.col(k) *= (a > 0.0) ? r / a : cxd(1.0, 0.0);
  }
  return Q;
}

cxmat random_hermitian(int n, std::mt19937_64& rng) {
  const cxmat G = ginibre(n, n, rng);
  return 0.5 * (G + G.adjoint());
}

cxmat random_skew(int n, std::mt19937_64& rng) {
  const cxmat G = ginibre(n, n, rng);
  return 0.5 * (G - G.adjoint());
}

cxmat random_tangent(const cxmat& U, std::mt19937_64& rng) {
  cxmat Y = random_skew(static_cast<int>(U.rows()), rng);
  Y /= Y.norm();
  return U * Y;
}

}  // namespace qcl
