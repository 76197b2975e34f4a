#pragma once

#include "flagspec/prime_field.hpp"

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace flagspec {

/// A linear subspace of F_q^n held as its reduced row echelon basis.
///
/// The RREF basis is unique, so equality of subspaces is equality of the
/// stored entries. Ordering is dimension-major, then lexicographic on the
/// flattened basis; this is the vertex order used for every matrix index.
class Subspace {
 public:
  using Entry = PrimeField::Element;

  /// The zero subspace of F_q^n.
  Subspace(int n, std::uint32_t q);

  /// Wraps an RREF basis (dim x n, row-major). Throws IntegrityError if the
  /// rows are not in reduced row echelon form.
  static Subspace from_rref(int n, std::uint32_t q, int dim, std::vector<Entry> rows);

  /// The whole space F_q^n.
  static Subspace full(int n, std::uint32_t q);

  int ambient_dim() const noexcept { return n_; }
  std::uint32_t field_size() const noexcept { return q_; }
  int dim() const noexcept { return dim_; }

  const std::vector<Entry>& entries() const noexcept { return rows_; }
  std::span<const Entry> row(int r) const {
    return {rows_.data() + static_cast<std::size_t>(r) * n_, static_cast<std::size_t>(n_)};
  }
  const std::vector<int>& pivots() const noexcept { return pivots_; }

  /// True iff v (length n) lies in this subspace.
  bool contains_vector(std::span<const Entry> v) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.n_ == b.n_ && a.q_ == b.q_ && a.dim_ == b.dim_ && a.rows_ == b.rows_;
  }
  friend std::strong_ordering operator<=>(const Subspace& a, const Subspace& b);

 private:
  Subspace(int n, std::uint32_t q, int dim, std::vector<Entry> rows, std::vector<int> pivots);

  int n_;
  std::uint32_t q_;
  int dim_;
  std::vector<Entry> rows_;
  std::vector<int> pivots_;
};

/// RREF of the span of `rows` (row_count x n, row-major, entries reduced mod q).
Subspace canonicalize(int n, const PrimeField& field, std::span<const Subspace::Entry> rows,
                      int row_count);

/// U ⊆ V. Throws DomainError if the ambient spaces differ.
bool contains(const Subspace& u, const Subspace& v);

struct LatticeDims {
  int dim_sum;
  int dim_intersection;
};

/// Dimensions of U + W and U ∩ W, both read off one Zassenhaus reduction.
LatticeDims lattice_dims(const Subspace& u, const Subspace& w);

Subspace subspace_sum(const Subspace& u, const Subspace& w);
Subspace subspace_intersection(const Subspace& u, const Subspace& w);

/// A strictly nested chain of non-trivial subspaces, ordered by increasing dimension.
class Flag {
 public:
  /// Throws DomainError unless the chain is strictly nested with every
  /// dimension in [1, n-1]. The empty chain is the empty flag of F_q^n.
  Flag(int n, std::uint32_t q, std::vector<Subspace> chain);
  explicit Flag(std::vector<Subspace> chain);

  const std::vector<Subspace>& chain() const noexcept { return chain_; }
  std::vector<int> signature() const;
  std::size_t size() const noexcept { return chain_.size(); }
  int ambient_dim() const noexcept { return n_; }
  std::uint32_t field_size() const noexcept { return q_; }

  friend bool operator==(const Flag&, const Flag&) = default;

 private:
  int n_;
  std::uint32_t q_;
  std::vector<Subspace> chain_;
};

}  // namespace flagspec
