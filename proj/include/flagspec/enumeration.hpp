#pragma once

#include "flagspec/subspace.hpp"

#include <cstdint>
#include <memory>
#include <vector>

namespace flagspec {

inline constexpr std::uint64_t kDefaultMaxSubspacesPerDim = 1'000'000;

/// All d-dimensional subspaces of F_q^n in canonical order.
/// Consults the on-disk cache when FLAGSPEC_CACHE_DIR is set.
/// Throws DomainError for d outside [0, n], ResourceError above `cap` subspaces.
std::vector<Subspace> enumerate_subspaces(int n, std::uint32_t q, int d,
                                          std::uint64_t cap = kDefaultMaxSubspacesPerDim);

/// Same as enumerate_subspaces but never touches the disk cache.
std::vector<Subspace> enumerate_subspaces_uncached(int n, std::uint32_t q, int d,
                                                   std::uint64_t cap = kDefaultMaxSubspacesPerDim);

/// All flags with the given dimension signature, ordered lexicographically by
/// chain members. Throws DomainError unless the signature is strictly
/// increasing within [1, n-1].
std::vector<Flag> enumerate_flags(int n, std::uint32_t q, const std::vector<int>& signature,
                                  std::uint64_t cap = kDefaultMaxSubspacesPerDim);

/// Every subspace of F_q^n together with containment lists between levels.
///
/// Instances are immutable; `get` hands out a shared process-wide copy per
/// (n, q), built once under a lock.
class SubspaceLattice {
 public:
  static std::shared_ptr<const SubspaceLattice> get(int n, std::uint32_t q,
                                                    std::uint64_t cap = kDefaultMaxSubspacesPerDim);

  SubspaceLattice(int n, std::uint32_t q, std::uint64_t cap = kDefaultMaxSubspacesPerDim);

  int ambient_dim() const noexcept { return n_; }
  std::uint32_t field_size() const noexcept { return q_; }

  const std::vector<Subspace>& level(int d) const { return levels_.at(d); }
  std::size_t level_size(int d) const { return levels_.at(d).size(); }

  /// Position of s within level(s.dim()). Throws DomainError if absent.
  std::size_t index_of(const Subspace& s) const;

  /// Indices in level(e) of the e-dimensional subspaces containing level(d)[idx] (d <= e),
  /// or contained in it (d >= e). Sorted ascending.
  const std::vector<std::uint32_t>& related(int d, std::size_t idx, int e) const;

  /// Vertex numbering of the flag complex: non-trivial subspaces, dimension-major.
  std::size_t vertex_count() const noexcept { return vertex_offset_.back(); }
  std::size_t vertex_offset(int d) const { return vertex_offset_.at(d - 1); }

 private:
  int n_;
  std::uint32_t q_;
  std::vector<std::vector<Subspace>> levels_;
  // related_[d][e][idx]
  std::vector<std::vector<std::vector<std::vector<std::uint32_t>>>> related_;
  std::vector<std::size_t> vertex_offset_;
};

/// A flag as level indices of its members, one per signature entry.
using FlagIds = std::vector<std::uint32_t>;

/// Chains with the given signature as level indices, in lexicographic order.
std::vector<FlagIds> enumerate_flag_ids(const SubspaceLattice& lattice,
                                        const std::vector<int>& signature);

}  // namespace flagspec
