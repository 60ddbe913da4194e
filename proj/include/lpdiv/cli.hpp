#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lpdiv/curves.hpp"

namespace lpdiv::cli {

/// Exit codes: stable contract for scripting.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;

/// Environment variable naming the default cache directory.
inline constexpr const char* kCacheDirEnv = "LPDIV_CACHE_DIR";

enum class OutputFormat { Table, Records };

struct RunConfig {
  unsigned workers = 1;
  std::optional<std::filesystem::path> cache_dir;
  OutputFormat format = OutputFormat::Table;
  std::uint64_t max_field_size = kDefaultMaxFieldSize;
};

/// Runs the command line `args` (program name excluded). Primary output goes
/// to `out`; diagnostics and progress go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lpdiv::cli
