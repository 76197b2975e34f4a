#pragma once

#include "flagspec/check.hpp"
#include "flagspec/enumeration.hpp"
#include "flagspec/exact.hpp"
#include "flagspec/sparse_matrix.hpp"
#include "flagspec/spectrum.hpp"
#include "flagspec/subspace.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <vector>

namespace flagspec {

inline constexpr std::size_t kDefaultMaxSimplices = 200'000;
inline constexpr std::size_t kDefaultMaxNumeric = 4000;

/// Number of complete flags extending a flag with this dimension signature:
/// the product of [g]_q! over the gaps g of (0, d_1, ..., d_m, n).
BigInt weight_of_signature(const std::vector<int>& signature, int n, std::uint32_t q);

/// Throws DomainError if the flag does not live in F_q^n.
BigInt weight(const Flag& flag, int n, std::uint32_t q);

/// All k-simplices of Fl(n, q): signatures in lexicographic order, then
/// chains in lexicographic order of their members.
struct WeightedComplexSlice {
  int n = 0;
  std::uint32_t q = 0;
  int k = 0;
  std::shared_ptr<const SubspaceLattice> lattice;
  std::vector<std::vector<int>> signatures;  // distinct signatures, in order
  std::vector<std::size_t> signature_of;     // per simplex, index into signatures
  std::vector<FlagIds> simplices;
  std::vector<BigInt> weights;

  std::size_t size() const noexcept { return simplices.size(); }
  Flag flag(std::size_t index) const;
  /// Throws DomainError if the chain is not a k-simplex of this slice.
  std::size_t index_of(const std::vector<int>& signature, const FlagIds& ids) const;
  std::size_t index_of(const Flag& flag) const;

 private:
  friend WeightedComplexSlice complex_slice(int, std::uint32_t, int, std::size_t);
  std::map<std::pair<std::size_t, FlagIds>, std::size_t> index_;
};

/// Throws DomainError for k outside [0, n-2], ResourceError above max_simplices.
WeightedComplexSlice complex_slice(int n, std::uint32_t q, int k,
                                   std::size_t max_simplices = kDefaultMaxSimplices);

/// Index helpers for a (k+1)-simplex rho and the removal of its member at `pos`
/// (0-based): r = dim(above) - dim(below), t = dim(removed) - dim(below),
/// with the zero space below the first member and F_q^n above the last.
struct RemovalDims {
  int r;
  int t;
};
RemovalDims removal_dims(const std::vector<int>& rho_signature, std::size_t pos, int n);

/// Members of sigma ∩ tau strictly between the two exchanged positions of rho.
inline int epsilon(std::size_t pos_a, std::size_t pos_b) {
  return static_cast<int>(pos_a > pos_b ? pos_a - pos_b : pos_b - pos_a) - 1;
}

struct LaplacianMatrix {
  int n = 0;
  std::uint32_t q = 0;
  int k = 0;
  WeightedComplexSlice slice;
  SparseRationalMatrix entries;

  std::size_t size() const noexcept { return slice.size(); }
};

/// Weighted upper Laplacian from the closed entry formula: diagonal n-k-2,
/// off-diagonal (-1)^{eps+1} / (r choose t)_q for simplices spanning a (k+1)-simplex.
/// Requires n >= 3 and 0 <= k <= n-3.
LaplacianMatrix assemble_laplacian(int n, std::uint32_t q, int k,
                                   std::size_t max_simplices = kDefaultMaxSimplices);

/// Coboundary d_k : C^k -> C^{k+1}, rows (k+1)-simplices, columns k-simplices,
/// (d phi)(rho) = sum_i (-1)^i phi(rho minus its i-th member).
SparseIntMatrix coboundary(const WeightedComplexSlice& lower, const WeightedComplexSlice& upper);

/// S = W^{1/2} Delta W^{-1/2} in double precision.
Eigen::MatrixXd symmetrize(const LaplacianMatrix& l);

/// max |S - S^T| / max |S|.
double symmetry_defect(const Eigen::MatrixXd& s);

/// Sorted eigenvalues of the symmetrised matrix. ResourceError above cap.
std::vector<double> numeric_eigenvalues(const LaplacianMatrix& l,
                                        std::size_t cap = kDefaultMaxNumeric);

SpectrumReport numeric_spectrum(const LaplacianMatrix& l, double cluster_tol = 1e-7,
                                std::size_t cap = kDefaultMaxNumeric);

/// True when the Cholesky factorisation of S + shift * I succeeds, which
/// certifies lambda_min(S) >= -shift up to rounding in the factorisation.
bool shifted_cholesky_certificate(const Eigen::MatrixXd& s, double shift);

/// Same certificate from a sparse Cholesky factorisation of the symmetrised matrix.
bool sparse_shifted_cholesky_certificate(const LaplacianMatrix& l, double shift);

/// W Delta == Delta^T W exactly.
bool weight_self_adjoint(const LaplacianMatrix& l);

/// Every flag and every removal: w(sigma) / w(sigma minus V_i) = 1 / (r choose t)_q.
CheckResult verify_weight_ratio(int n, std::uint32_t q);

/// Every flag tau (the empty flag included), every gap and every dimension d inside it:
/// the d-dimensional subspaces U fitting the gap, counted in the lattice, satisfy
/// sum_U w(tau ∪ {U}) = w(tau).
CheckResult verify_weight_partition(int n, std::uint32_t q);

/// Diagonal n-k-2, W Delta = Delta^T W, and zero row sums for k = 0.
CheckResult verify_laplacian_structure(const LaplacianMatrix& l);

/// Text export: "FLAGLAP n q k rows cols", one "row col num/den" line per
/// nonzero, then "WEIGHTS count" and "index value" lines.
void write_laplacian(std::ostream& out, const LaplacianMatrix& l);

struct LaplacianText {
  int n = 0;
  std::uint32_t q = 0;
  int k = 0;
  SparseRationalMatrix entries;
  std::vector<BigInt> weights;
};
LaplacianText read_laplacian(std::istream& in);

}  // namespace flagspec
