#include "dtower/cache.hpp"

#include <openssl/evp.h>

#include <cstdlib>
#include <fstream>
#include <mutex>
#include <random>
#include <sstream>

#include "dtower/serialize.hpp"

namespace dtower {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::mutex cache_mutex;

std::optional<json> read_json(const fs::path& p) {
  std::ifstream in(p);
  if (!in) return std::nullopt;
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::parse_error&) {
    return std::nullopt;
  }
}

// Entry whose version and digest check out, or nullopt.
std::optional<json> read_entry(const fs::path& p) {
  auto j = read_json(p);
  if (!j || !j->is_object() || !j->contains("payload")) return std::nullopt;
  if (j->value("version", "") != kLibraryVersion) return std::nullopt;
  if (j->value("digest", "") != sha256_hex((*j)["payload"].dump())) return std::nullopt;
  return j;
}

}  // namespace

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256: digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

ExpansionCache::ExpansionCache(fs::path root) : root_(std::move(root)) {}

fs::path ExpansionCache::default_root() {
  if (const char* d = std::getenv("DTOWER_CACHE_DIR"); d && *d) return d;
  if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return fs::path(x) / "dtower";
  if (const char* h = std::getenv("HOME"); h && *h) return fs::path(h) / ".cache" / "dtower";
  return fs::temp_directory_path() / "dtower-cache";
}

fs::path ExpansionCache::file_for(const std::string& key) const {
  return root_ / (sha256_hex(key).substr(0, 32) + ".json");
}

std::optional<QExpansion> ExpansionCache::load(const std::string& key, int trunc24) const {
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto j = read_entry(file_for(key));
  if (!j || j->value("key", "") != key) return std::nullopt;
  QExpansion a = from_json((*j)["payload"]);
  if (a.trunc24() < trunc24) return std::nullopt;
  return a.truncated(trunc24);
}

void ExpansionCache::store(const std::string& key, const QExpansion& a) const {
  std::lock_guard<std::mutex> lock(cache_mutex);
  const fs::path target = file_for(key);
  if (auto old = read_entry(target); old && old->value("key", "") == key && old->value("trunc24", 0) >= a.trunc24())
    return;
  fs::create_directories(root_);
  json payload = to_json(a);
  json entry = {{"key", key},
                {"version", kLibraryVersion},
                {"trunc24", a.trunc24()},
                {"digest", sha256_hex(payload.dump())},
                {"payload", payload}};
  std::random_device rd;
  const fs::path tmp = root_ / (target.filename().string() + ".tmp" + std::to_string(rd()));
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cache: cannot write " + tmp.string());
    out << entry.dump();
    if (!out) throw std::runtime_error("cache: write failed for " + tmp.string());
  }
  fs::rename(tmp, target);
}

QExpansion ExpansionCache::get_or_compute(const std::string& key, int trunc24,
                                          const std::function<QExpansion(int)>& compute) const {
  if (auto hit = load(key, trunc24)) return *hit;
  QExpansion a = compute(trunc24);
  store(key, a);
  return a.truncated(trunc24);
}

std::vector<CacheEntryInfo> ExpansionCache::list() const {
  std::lock_guard<std::mutex> lock(cache_mutex);
  std::vector<CacheEntryInfo> out;
  if (!fs::exists(root_)) return out;
  for (const auto& de : fs::directory_iterator(root_)) {
    if (de.path().extension() != ".json") continue;
    CacheEntryInfo info;
    info.file = de.path();
    if (auto j = read_json(de.path()); j && j->is_object()) {
      info.key = j->value("key", "");
      info.version = j->value("version", "");
      info.trunc24 = j->value("trunc24", 0);
    }
    info.valid = read_entry(de.path()).has_value();
    out.push_back(info);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.key < b.key; });
  return out;
}

std::size_t ExpansionCache::clear() const {
  std::lock_guard<std::mutex> lock(cache_mutex);
  std::size_t n = 0;
  if (!fs::exists(root_)) return 0;
  for (const auto& de : fs::directory_iterator(root_)) {
    const auto name = de.path().filename().string();
    if (de.path().extension() == ".json" || name.find(".json.tmp") != std::string::npos) n += fs::remove(de.path());
  }
  return n;
}

}  // namespace dtower
