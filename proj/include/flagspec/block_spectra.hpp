#pragma once

#include "flagspec/exact_matrix.hpp"
#include "flagspec/flag_laplacian.hpp"
#include "flagspec/inclusion_algebra.hpp"
#include "flagspec/polynomial.hpp"
#include "flagspec/spectrum.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace flagspec {

/// Reduced block of the vertex Laplacian acting on each copy of the k-th
/// tilde space. Rows and columns are labelled first_index, first_index + 1, ...
struct BlockMatrix {
  int n = 0;
  std::uint32_t q = 0;
  int k = 0;
  int first_index = 1;  // 1 for k = 0, k otherwise
  ExactMatrix entries;
};

/// Requires n >= 3 and 0 <= k <= n/2.
BlockMatrix build_block(int n, std::uint32_t q, int k);

/// (n choose k)_q - (n choose k-1)_q copies of the block occur.
BigInt block_multiplicity(int n, std::uint32_t q, int k);

/// Monic det(tI - M). Blocks above 64 rows are refused.
Polynomial char_poly_exact(const BlockMatrix& m);

/// Multiplicity of x as a root of p.
int root_multiplicity(const Polynomial& p, const Rational& x);

/// Union of block roots, each scaled by its block multiplicity. Entries are
/// per (block, root); equal values from different blocks stay separate.
SpectrumReport spectrum_via_blocks(int n, std::uint32_t q, double precision = 1e-12);

/// Multiplicity of the rational eigenvalue x in the vertex Laplacian, exact.
BigInt exact_eigenvalue_multiplicity(int n, std::uint32_t q, const Rational& x);

/// blockdiag(I ⊗ L_k) in the column order of the block basis.
SparseRationalMatrix block_diagonal_form(const BlockBasis& basis);

/// Delta_0 B == B D exactly and B has full rank; equivalent to B^{-1} Delta_0 B == D.
CheckResult verify_conjugation(int n, std::uint32_t q);

/// Forms B^{-1} (Delta_0 B) by exact per-dimension solves and compares it with D entry by entry.
CheckResult verify_conjugation_literal(int n, std::uint32_t q);

struct ReconcileReport {
  bool pass = false;
  std::size_t block_clusters = 0;
  std::size_t numeric_clusters = 0;
  BigInt block_total;
  BigInt numeric_total;
  BigInt expected_total;
  double max_distance = 0;
  bool used_fallback = false;
  std::vector<std::string> diff;
  std::optional<CheckResult> conjugation;
};

/// Multiset comparison of two precomputed spectra of the same (n, q); block
/// entries are clustered with cluster_tol first.
ReconcileReport reconcile_spectra(const SpectrumReport& blocks, const SpectrumReport& numeric,
                                  double tol, double cluster_tol = 1e-7);

/// Multiset comparison of the block spectrum against the dense numeric spectrum.
/// The exact conjugation check runs when the vertex count is at most conjugation_cap.
ReconcileReport reconcile(int n, std::uint32_t q, double tol, double cluster_tol = 1e-7,
                          std::size_t numeric_cap = kDefaultMaxNumeric,
                          std::size_t conjugation_cap = 500);

/// Merges entries closer than tol, summing multiplicities; block label kept when unanimous.
SpectrumReport merge_clusters(const SpectrumReport& r, double tol);

struct DistinctCount {
  std::size_t count = 0;
  std::size_t bound = 0;  // floor(n^2/4) + 2
};

/// Number of distinct eigenvalues, exact: the degree of the squarefree part
/// of the product of block characteristic polynomials.
DistinctCount distinct_count(int n, std::uint32_t q);

}  // namespace flagspec
