#include "flagspec/enumeration.hpp"

#include "flagspec/errors.hpp"
#include "flagspec/qcombinatorics.hpp"
#include "flagspec/subspace_cache.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <mutex>
#include <string>

namespace flagspec {

namespace {

void check_args(int n, std::uint32_t q, int d, std::uint64_t cap) {
  if (n < 0) throw DomainError("negative ambient dimension");
  if (d < 0 || d > n) {
    throw DomainError("subspace dimension " + std::to_string(d) + " outside [0, " +
                      std::to_string(n) + "]");
  }
  PrimeField field(q);  // validates q
  const BigInt count = q_binomial(n, d, q);
  if (count > BigInt(std::to_string(cap))) {
    throw ResourceError("refusing to enumerate " + to_string(count) + " subspaces of dimension " +
                        std::to_string(d) + " in F_" + std::to_string(q) + "^" +
                        std::to_string(n) + " (cap " + std::to_string(cap) + ")");
  }
}

// Fills every free entry of the RREF shape with pivots `piv` in all q^free ways.
void enumerate_shape(int n, std::uint32_t q, const std::vector<int>& piv,
                     std::vector<Subspace>& out) {
  const int d = static_cast<int>(piv.size());
  std::vector<std::size_t> free_slots;
  std::vector<Subspace::Entry> rows(static_cast<std::size_t>(d) * n, 0);
  for (int r = 0; r < d; ++r) {
    rows[static_cast<std::size_t>(r) * n + piv[r]] = 1;
    for (int c = piv[r] + 1; c < n; ++c) {
      if (std::find(piv.begin(), piv.end(), c) == piv.end()) {
        free_slots.push_back(static_cast<std::size_t>(r) * n + c);
      }
    }
  }
  while (true) {
    out.push_back(Subspace::from_rref(n, q, d, rows));
    std::size_t s = 0;
    for (; s < free_slots.size(); ++s) {
      auto& e = rows[free_slots[s]];
      if (++e < q) break;
      e = 0;
    }
    if (s == free_slots.size()) return;
  }
}

std::optional<std::filesystem::path> cache_dir() {
  const char* env = std::getenv("FLAGSPEC_CACHE_DIR");
  if (env == nullptr || *env == '\0') return std::nullopt;
  return std::filesystem::path(env);
}

std::mutex& cache_write_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

std::vector<Subspace> enumerate_subspaces_uncached(int n, std::uint32_t q, int d,
                                                   std::uint64_t cap) {
  check_args(n, q, d, cap);
  std::vector<Subspace> out;
  out.reserve(to_u64(q_binomial(n, d, q)));
  std::vector<int> piv(d);
  for (int i = 0; i < d; ++i) piv[i] = i;
  while (true) {
    enumerate_shape(n, q, piv, out);
    int i = d - 1;
    while (i >= 0 && piv[i] == n - d + i) --i;
    if (i < 0) break;
    ++piv[i];
    for (int j = i + 1; j < d; ++j) piv[j] = piv[j - 1] + 1;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Subspace> enumerate_subspaces(int n, std::uint32_t q, int d, std::uint64_t cap) {
  check_args(n, q, d, cap);
  const auto dir = cache_dir();
  if (!dir) return enumerate_subspaces_uncached(n, q, d, cap);
  const auto file = cache_file_path(*dir, n, q, d);
  if (auto cached = load_subspace_cache(file, n, q, d)) return std::move(*cached);
  auto fresh = enumerate_subspaces_uncached(n, q, d, cap);
  {
    std::lock_guard lock(cache_write_mutex());
    std::error_code ec;
    std::filesystem::create_directories(*dir, ec);
    try {
      store_subspace_cache(file, n, q, d, fresh);
    } catch (const std::exception&) {
      // An unwritable cache only costs a re-enumeration next time.
    }
  }
  return fresh;
}

std::vector<Flag> enumerate_flags(int n, std::uint32_t q, const std::vector<int>& signature,
                                  std::uint64_t cap) {
  for (std::size_t i = 0; i < signature.size(); ++i) {
    if (signature[i] < 1 || signature[i] > n - 1 || (i > 0 && signature[i] <= signature[i - 1])) {
      throw DomainError("flag signature must be strictly increasing within [1, n-1]");
    }
  }
  if (signature.empty()) return {Flag(n, q, {})};
  const auto lattice = SubspaceLattice::get(n, q, cap);
  std::vector<Flag> out;
  for (const auto& ids : enumerate_flag_ids(*lattice, signature)) {
    std::vector<Subspace> chain;
    chain.reserve(ids.size());
    for (std::size_t t = 0; t < ids.size(); ++t) chain.push_back(lattice->level(signature[t])[ids[t]]);
    out.emplace_back(n, q, std::move(chain));
  }
  return out;
}

std::vector<FlagIds> enumerate_flag_ids(const SubspaceLattice& lattice,
                                        const std::vector<int>& signature) {
  std::vector<FlagIds> out;
  if (signature.empty()) {
    out.emplace_back();
    return out;
  }
  // Depth-first, smallest member first, so the output is already sorted.
  FlagIds idx(signature.size());
  const auto emit = [&](auto&& self, std::size_t depth) -> void {
    const auto visit = [&](std::uint32_t i) {
      idx[depth] = i;
      if (depth + 1 == signature.size()) out.push_back(idx);
      else self(self, depth + 1);
    };
    if (depth == 0) {
      for (std::size_t i = 0; i < lattice.level_size(signature[0]); ++i) {
        visit(static_cast<std::uint32_t>(i));
      }
    } else {
      for (auto i : lattice.related(signature[depth - 1], idx[depth - 1], signature[depth])) visit(i);
    }
  };
  emit(emit, 0);
  return out;
}

std::shared_ptr<const SubspaceLattice> SubspaceLattice::get(int n, std::uint32_t q,
                                                            std::uint64_t cap) {
  static std::mutex m;
  static std::map<std::pair<int, std::uint32_t>, std::shared_ptr<const SubspaceLattice>> cache;
  std::lock_guard lock(m);
  auto& slot = cache[{n, q}];
  if (!slot) slot = std::make_shared<const SubspaceLattice>(n, q, cap);
  return slot;
}

SubspaceLattice::SubspaceLattice(int n, std::uint32_t q, std::uint64_t cap) : n_(n), q_(q) {
  if (n < 1) throw DomainError("lattice needs n >= 1");
  levels_.resize(n + 1);
  for (int d = 0; d <= n; ++d) levels_[d] = enumerate_subspaces(n, q, d, cap);
  related_.assign(n + 1, std::vector<std::vector<std::vector<std::uint32_t>>>(n + 1));
  for (int d = 0; d <= n; ++d) {
    for (int e = 0; e <= n; ++e) related_[d][e].resize(levels_[d].size());
  }
  for (int d = 0; d <= n; ++d) {
    for (int e = d; e <= n; ++e) {
      for (std::size_t a = 0; a < levels_[d].size(); ++a) {
        for (std::size_t b = 0; b < levels_[e].size(); ++b) {
          if (contains(levels_[d][a], levels_[e][b])) {
            related_[d][e][a].push_back(static_cast<std::uint32_t>(b));
            if (e != d) related_[e][d][b].push_back(static_cast<std::uint32_t>(a));
          }
        }
      }
    }
  }
  vertex_offset_.assign(1, 0);
  for (int d = 1; d <= n - 1; ++d) vertex_offset_.push_back(vertex_offset_.back() + levels_[d].size());
  if (n == 1) vertex_offset_.push_back(0);
}

std::size_t SubspaceLattice::index_of(const Subspace& s) const {
  if (s.ambient_dim() != n_ || s.field_size() != q_) {
    throw DomainError("subspace lives in a different ambient space");
  }
  const auto& lv = levels_.at(s.dim());
  auto it = std::lower_bound(lv.begin(), lv.end(), s);
  if (it == lv.end() || !(*it == s)) throw DomainError("subspace not found in lattice");
  return static_cast<std::size_t>(it - lv.begin());
}

const std::vector<std::uint32_t>& SubspaceLattice::related(int d, std::size_t idx, int e) const {
  return related_.at(d).at(e).at(idx);
}

}  // namespace flagspec
