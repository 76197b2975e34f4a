#pragma once

#include "flagspec/check.hpp"
#include "flagspec/exact_matrix.hpp"
#include "flagspec/sparse_matrix.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace flagspec {

inline constexpr std::size_t kDefaultMaxInclusionNonzeros = 20'000'000;

/// Kantor inclusion matrix A_ij over S(i) x S(j): entry 1 iff U ⊆ V or V ⊆ U.
struct InclusionMatrix {
  int n = 0;
  std::uint32_t q = 0;
  int i = 0;
  int j = 0;
  SparseIntMatrix entries;
};

InclusionMatrix build_inclusion_matrix(int n, std::uint32_t q, int i, int j,
                                       std::size_t max_nonzeros = kDefaultMaxInclusionNonzeros);

/// A_ij A_jk = (i-k choose j-k)_q A_ik for k <= j <= i <= n.
CheckResult verify_kantor_product(int n, std::uint32_t q, int i, int j, int k);

/// A_ij A_jk = sum_{m=0}^{k} c_ijkm A_im A_mk for 0 <= k <= i <= j <= n.
CheckResult verify_triple_product(int n, std::uint32_t q, int i, int j, int k);

/// Exact rank of A_ik by fraction-free elimination.
std::size_t rank_check(int n, std::uint32_t q, int i, int k);

/// Columns span the null space of A_{k-1,k}; for k = 0 the single unit vector.
struct TildeBasis {
  int n = 0;
  std::uint32_t q = 0;
  int k = 0;
  ExactMatrix vectors;
};
TildeBasis tilde_basis(int n, std::uint32_t q, int k);

/// For every basis column v of the k-th tilde space: A_jk v = 0 for j < k and
/// A_ij A_jk v = 0 for i < k <= j <= n.
CheckResult verify_annihilation(int n, std::uint32_t q, int k);

/// The columns A_ik v (v in the k-th tilde basis, k <= i <= n-k) form a basis of E^i.
CheckResult verify_decomposition(int n, std::uint32_t q, int i);

/// Column label of the block basis: B column = A_{i k} v for the v-th tilde vector of level k.
struct BlockColumn {
  int k;
  std::size_t v;
  int i;
};

/// Change of basis for the vertex cochains, columns grouped by (k, v, i ascending).
struct BlockBasis {
  int n = 0;
  std::uint32_t q = 0;
  SparseRationalMatrix matrix;  // rows: vertices in flag-complex order
  std::vector<BlockColumn> columns;
  std::vector<std::size_t> tilde_dims;  // per k
};
BlockBasis build_block_basis(int n, std::uint32_t q);

/// Exact rank of the block basis, computed per dimension (B is block diagonal
/// once columns are grouped by i).
std::size_t block_basis_rank(const BlockBasis& b);

}  // namespace flagspec
