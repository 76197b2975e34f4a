#pragma once

#include "flagspec/subspace.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

namespace flagspec {

/// Binary enumeration cache. Layout (little-endian):
///   "FLSP", version u16, n u16, q u32, d u16, count u64,
///   then count * d * n entries, each packed in 1, 2 or 4 bytes depending on q.
inline constexpr std::uint16_t kCacheVersion = 1;

std::filesystem::path cache_file_path(const std::filesystem::path& dir, int n, std::uint32_t q,
                                      int d);

/// Returns nothing when the file is missing, truncated, or fails validation.
std::optional<std::vector<Subspace>> load_subspace_cache(const std::filesystem::path& file, int n,
                                                         std::uint32_t q, int d);

/// Writes through a temporary file and rename.
void store_subspace_cache(const std::filesystem::path& file, int n, std::uint32_t q, int d,
                          const std::vector<Subspace>& subspaces);

}  // namespace flagspec
