#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>
#include <openssl/evp.h>
#include <spdlog/spdlog.h>

#include "reco/corpus.hpp"
#include "reco/error.hpp"

namespace reco::corpus {

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xF];
  }
  return out;
}

CacheKey make_cache_key(std::string_view prompt, std::string_view model, double temperature,
                        int sample_index) {
  // Length-prefixed fields so that no two distinct tuples share a preimage.
  char temp[64];
  std::snprintf(temp, sizeof temp, "%.17g", temperature);
  std::string buf;
  auto field = [&buf](std::string_view s) {
    buf += std::to_string(s.size());
    buf += ':';
    buf += s;
  };
  field(prompt);
  field(model);
  field(temp);
  field(std::to_string(sample_index));
  return CacheKey{sha256_hex(buf)};
}

ResponseCache::ResponseCache(std::filesystem::path path) : path_(std::move(path)) {
  if (!std::filesystem::exists(*path_)) return;
  std::ifstream in(*path_, std::ios::binary);
  if (!in) throw StorageError("cannot open cache " + path_->string());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      auto obj = nlohmann::json::parse(line);
      entries_[obj.at("key").get<std::string>()] = obj.at("value").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw StorageError(path_->string() + ": line " + std::to_string(line_no) +
                         ": corrupt cache entry (" + e.what() + ")");
    }
  }
}

std::optional<std::string> ResponseCache::lookup(const CacheKey& key) const {
  std::shared_lock lock(mutex_);
  auto it = entries_.find(key.digest);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

bool ResponseCache::store(const CacheKey& key, const std::string& value) {
  std::unique_lock lock(mutex_);
  bool overwrote = false;
  if (auto it = entries_.find(key.digest); it != entries_.end() && it->second != value) {
    spdlog::warn("cache: overwriting entry {} with a different value", key.digest.substr(0, 12));
    overwrote = true;
  }
  if (path_) {
    std::ofstream out(*path_, std::ios::binary | std::ios::app);
    if (!out) throw StorageError("cannot append to cache " + path_->string());
    out << nlohmann::json{{"key", key.digest}, {"value", value}}.dump() << '\n';
    if (!out) throw StorageError("write failed for cache " + path_->string());
  }
  entries_[key.digest] = value;
  return overwrote;
}

std::size_t ResponseCache::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

}  // namespace reco::corpus
