#pragma once

// On-disk cache of computed expansions. One JSON file per canonical key,
// written atomically; entries carry the library version and a SHA-256 digest
// of the payload and are ignored when either does not match.

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dtower/qexpansion.hpp"

namespace dtower {

inline constexpr const char* kLibraryVersion = "1.0.0";

std::string sha256_hex(const std::string& data);

struct CacheEntryInfo {
  std::string key;
  std::string version;
  int trunc24 = 0;
  bool valid = false;
  std::filesystem::path file;
};

class ExpansionCache {
 public:
  explicit ExpansionCache(std::filesystem::path root);

  /// DTOWER_CACHE_DIR, else $XDG_CACHE_HOME/dtower, else $HOME/.cache/dtower.
  static std::filesystem::path default_root();

  const std::filesystem::path& root() const { return root_; }

  /// The stored entry truncated to trunc24, when one of sufficient precision exists.
  std::optional<QExpansion> load(const std::string& key, int trunc24) const;
  /// Keeps the existing entry when it is at least as precise.
  void store(const std::string& key, const QExpansion& a) const;
  QExpansion get_or_compute(const std::string& key, int trunc24, const std::function<QExpansion(int)>& compute) const;

  std::vector<CacheEntryInfo> list() const;
  /// Removes every entry; returns how many files were deleted.
  std::size_t clear() const;

 private:
  std::filesystem::path file_for(const std::string& key) const;
  std::filesystem::path root_;
};

}  // namespace dtower
