#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "qcl/types.hpp"

namespace qcl {

/// Derive a named subsystem seed from a master seed (splitmix64 over the tag hash).
std::uint64_t derive_seed(std::uint64_t master, std::string_view tag);

/// Standard complex Gaussian (Ginibre) matrix.
cxmat ginibre(int rows, int cols, std::mt19937_64& rng);

/// Haar-distributed unitary via QR of a Ginibre matrix with phase fix.
cxmat haar_unitary(int n, std::mt19937_64& rng);

/// Random Hermitian matrix with standard Gaussian entries.
cxmat random_hermitian(int n, std::mt19937_64& rng);

/// Random skew-Hermitian matrix (uniform over the hs-sphere when normalized).
cxmat random_skew(int n, std::mt19937_64& rng);

/// Random tangent vector at U with unit Hilbert-Schmidt norm.
cxmat random_tangent(const cxmat& U, std::mt19937_64& rng);

}  // namespace qcl
