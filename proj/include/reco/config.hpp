#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>

namespace reco {

// Plain-text key=value file. Blank lines and lines starting with '#' are ignored;
// whitespace around keys and values is trimmed. Later keys override earlier ones.
class KeyValueFile {
 public:
  KeyValueFile() = default;

  static KeyValueFile parse(std::string_view text);
  static KeyValueFile load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;
  std::string render() const;

  bool contains(const std::string& key) const { return values_.contains(key); }
  std::optional<std::string> get(const std::string& key) const;
  std::string get_or(const std::string& key, std::string fallback) const;
  double get_double(const std::string& key, double fallback) const;
  long get_int(const std::string& key, long fallback) const;
  void set(const std::string& key, std::string value) { values_[key] = std::move(value); }

  const std::map<std::string, std::string>& entries() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace reco
