#include "flagspec/subspace_cache.hpp"

#include "flagspec/errors.hpp"
#include "flagspec/qcombinatorics.hpp"

#include <array>
#include <cstring>
#include <fstream>
#include <iterator>
#include <random>
#include <string>

namespace flagspec {

namespace {

constexpr std::array<char, 4> kMagic = {'F', 'L', 'S', 'P'};

int entry_width(std::uint32_t q) {
  if (q <= 0x100) return 1;
  if (q <= 0x10000) return 2;
  return 4;
}

template <typename T>
void put_le(std::string& buf, T value) {
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    buf.push_back(static_cast<char>((static_cast<std::uint64_t>(value) >> (8 * i)) & 0xff));
  }
}

std::uint64_t get_le(const unsigned char* p, int width) {
  std::uint64_t v = 0;
  for (int i = 0; i < width; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
  return v;
}

constexpr std::size_t kHeaderSize = 4 + 2 + 2 + 4 + 2 + 8;

}  // namespace

std::filesystem::path cache_file_path(const std::filesystem::path& dir, int n, std::uint32_t q,
                                      int d) {
  return dir / ("subspaces_n" + std::to_string(n) + "_q" + std::to_string(q) + "_d" +
                std::to_string(d) + ".flsp");
}

std::optional<std::vector<Subspace>> load_subspace_cache(const std::filesystem::path& file, int n,
                                                         std::uint32_t q, int d) {
  std::ifstream in(file, std::ios::binary);
  if (!in) return std::nullopt;
  const std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (buf.size() < kHeaderSize || std::memcmp(buf.data(), kMagic.data(), 4) != 0) {
    return std::nullopt;
  }
  const auto* p = reinterpret_cast<const unsigned char*>(buf.data());
  if (get_le(p + 4, 2) != kCacheVersion || get_le(p + 6, 2) != static_cast<std::uint64_t>(n) ||
      get_le(p + 8, 4) != q || get_le(p + 12, 2) != static_cast<std::uint64_t>(d)) {
    return std::nullopt;
  }
  const std::uint64_t count = get_le(p + 14, 8);
  if (BigInt(std::to_string(count)) != q_binomial(n, d, q)) return std::nullopt;
  const int width = entry_width(q);
  const std::size_t per = static_cast<std::size_t>(d) * n;
  if (buf.size() != kHeaderSize + count * per * width) return std::nullopt;
  std::vector<Subspace> out;
  out.reserve(count);
  const unsigned char* cur = p + kHeaderSize;
  try {
    for (std::uint64_t s = 0; s < count; ++s) {
      std::vector<Subspace::Entry> rows(per);
      for (auto& e : rows) {
        e = static_cast<Subspace::Entry>(get_le(cur, width));
        cur += width;
      }
      out.push_back(Subspace::from_rref(n, q, d, std::move(rows)));
      if (out.size() > 1 && !(out[out.size() - 2] < out.back())) return std::nullopt;
    }
  } catch (const IntegrityError&) {
    return std::nullopt;
  }
  return out;
}

void store_subspace_cache(const std::filesystem::path& file, int n, std::uint32_t q, int d,
                          const std::vector<Subspace>& subspaces) {
  std::string buf(kMagic.begin(), kMagic.end());
  put_le<std::uint16_t>(buf, kCacheVersion);
  put_le<std::uint16_t>(buf, static_cast<std::uint16_t>(n));
  put_le<std::uint32_t>(buf, q);
  put_le<std::uint16_t>(buf, static_cast<std::uint16_t>(d));
  put_le<std::uint64_t>(buf, subspaces.size());
  const int width = entry_width(q);
  for (const auto& s : subspaces) {
    for (auto e : s.entries()) {
      if (width == 1) put_le<std::uint8_t>(buf, static_cast<std::uint8_t>(e));
      else if (width == 2) put_le<std::uint16_t>(buf, static_cast<std::uint16_t>(e));
      else put_le<std::uint32_t>(buf, e);
    }
  }
  std::random_device rd;
  auto tmp = file;
  tmp += ".tmp" + std::to_string(rd());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ResourceError("cannot write cache file " + tmp.string());
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!out) throw ResourceError("short write to cache file " + tmp.string());
  }
  std::filesystem::rename(tmp, file);
}

}  // namespace flagspec
