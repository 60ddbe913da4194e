#include "lpdiv/count_cache.hpp"

#include <chrono>
#include <ctime>
#include <fstream>

#include <json.hpp>

namespace lpdiv {

namespace {

std::string utc_timestamp() {
  const auto now = std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

std::string format_cache_record(const CacheKey& key, std::uint64_t count, const std::string& timestamp) {
  nlohmann::ordered_json j;
  j["family"] = family_name(key.family);
  j["k"] = key.k;
  j["p"] = key.p;
  j["m"] = key.m;
  j["modulus"] = key.modulus;
  j["count"] = std::to_string(count);
  j["timestamp"] = timestamp;
  return j.dump();
}

std::pair<CacheKey, std::uint64_t> parse_cache_record(const std::string& line) {
  try {
    const auto j = nlohmann::json::parse(line);
    CacheKey key{parse_family(j.at("family").get<std::string>()), j.at("k").get<unsigned>(),
                 j.at("p").get<std::uint32_t>(), j.at("m").get<unsigned>(), j.at("modulus").get<std::string>()};
    const std::string count = j.at("count").get<std::string>();
    std::size_t pos = 0;
    const std::uint64_t n = std::stoull(count, &pos);
    if (pos != count.size()) throw std::invalid_argument("trailing characters in count");
    j.at("timestamp").get<std::string>();
    return {std::move(key), n};
  } catch (const std::exception& e) {
    throw std::runtime_error("malformed count-cache record: " + std::string(e.what()));
  }
}

CountCache::CountCache(std::filesystem::path dir) {
  std::filesystem::create_directories(dir);
  file_ = dir / "counts.jsonl";
  std::ifstream in(file_);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      auto [key, n] = parse_cache_record(line);
      entries_.try_emplace(std::move(key), n);
    } catch (const std::runtime_error& e) {
      throw std::runtime_error(file_.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

std::optional<std::uint64_t> CountCache::lookup(const CacheKey& key) const {
  if (auto it = entries_.find(key); it != entries_.end()) return it->second;
  return std::nullopt;
}

void CountCache::store(const CacheKey& key, std::uint64_t count) {
  if (!entries_.try_emplace(key, count).second) return;
  std::ofstream out(file_, std::ios::app);
  out << format_cache_record(key, count, utc_timestamp()) << '\n';
  if (!out) throw std::runtime_error("cannot append to " + file_.string());
}

}  // namespace lpdiv
