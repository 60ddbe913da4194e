#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <tuple>

#include "lpdiv/curves.hpp"

namespace lpdiv {

struct CacheKey {
  Family family;
  unsigned k;
  std::uint32_t p;
  unsigned m;
  std::string modulus;

  auto tie() const { return std::tie(family, k, p, m, modulus); }
  friend bool operator<(const CacheKey& a, const CacheKey& b) { return a.tie() < b.tie(); }
};

/// Persistent point-count cache: one JSON object per line in
/// `<dir>/counts.jsonl` with fields family, k, p, m, modulus, count
/// (decimal string) and timestamp (UTC, ISO 8601). Append-only; the first
/// record for a key wins on reload.
class CountCache {
 public:
  explicit CountCache(std::filesystem::path dir);

  std::optional<std::uint64_t> lookup(const CacheKey& key) const;
  void store(const CacheKey& key, std::uint64_t count);

  const std::filesystem::path& file() const { return file_; }
  std::size_t size() const { return entries_.size(); }

 private:
  std::filesystem::path file_;
  std::map<CacheKey, std::uint64_t> entries_;
};

std::string format_cache_record(const CacheKey& key, std::uint64_t count, const std::string& timestamp);
/// Throws std::runtime_error on a malformed record.
std::pair<CacheKey, std::uint64_t> parse_cache_record(const std::string& line);

}  // namespace lpdiv
