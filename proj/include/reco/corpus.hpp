#pragma once

// Dataset ingestion, augmentation persistence and the LLM response cache.

#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <tuple>
#include <vector>

namespace reco {

enum class Language { kPython, kJava };

std::string to_string(Language lang);
Language parse_language(std::string_view name);

}  // namespace reco

namespace reco::corpus {

struct PairRecord {
  std::string id;
  std::string query;
  std::string code;
  Language language = Language::kPython;

  friend bool operator==(const PairRecord&, const PairRecord&) = default;
};

struct Dataset {
  std::string name;
  Language language = Language::kPython;
  std::vector<PairRecord> train;
  std::vector<PairRecord> test;

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

// Reads one JSON-lines split. Every line must be an object with exactly the
// string fields "id", "query" and "code". Errors carry the 1-based line number.
std::vector<PairRecord> load_pairs(const std::filesystem::path& path, Language language);
std::vector<PairRecord> parse_pairs(std::string_view text, Language language);
std::string serialize_pairs(const std::vector<PairRecord>& records);
void save_pairs(const std::filesystem::path& path, const std::vector<PairRecord>& records);

// `path` is either a directory holding train.jsonl and test.jsonl, or a
// manifest file (see Manifest) naming the split files. A missing train split
// is allowed; the test split is required.
Dataset load_dataset(const std::filesystem::path& path, const std::string& name,
                     Language language);

// Rejects id collisions across splits and empty test splits.
void validate(const Dataset& dataset);

struct SplitStats {
  std::size_t count = 0;
  double mean_query_tokens = 0.0;
  double mean_code_tokens = 0.0;
};

struct DatasetStats {
  SplitStats train;
  SplitStats test;
};

DatasetStats dataset_stats(const Dataset& dataset);

// Seeded uniform sample of `count` records without replacement; file order is kept.
std::vector<PairRecord> sample_subset(const std::vector<PairRecord>& records,
                                      std::size_t count, std::uint64_t seed);

// key=value description of a materialized dataset.
struct Manifest {
  std::string name;
  Language language = Language::kPython;
  std::optional<std::uint64_t> seed;
  std::filesystem::path train_path;
  std::filesystem::path test_path;

  static Manifest load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;
};

// ---------------------------------------------------------------------------
// Augmentation records

enum class AugmentationKind { kExemplar, kSummary, kRewrite };

std::string to_string(AugmentationKind kind);
AugmentationKind parse_kind(std::string_view name);

struct AugmentationRecord {
  std::string source_id;
  AugmentationKind kind = AugmentationKind::kExemplar;
  int index = 0;
  std::string model;
  std::string text;
  // Completion stopped at the max-token limit. Serialized only when set.
  bool truncated = false;

  friend bool operator==(const AugmentationRecord&, const AugmentationRecord&) = default;
};

// Append-only JSON-lines store. A write whose (source_id, kind, index, model)
// already exists overwrites the earlier record and logs a warning; on reload
// the last line for a key wins.
class AugmentationStore {
 public:
  // In-memory store, nothing persisted.
  AugmentationStore() = default;
  // Opens (and replays) the file at `path`, creating it on first write.
  explicit AugmentationStore(std::filesystem::path path);

  AugmentationStore(const AugmentationStore&) = delete;
  AugmentationStore& operator=(const AugmentationStore&) = delete;

  // Returns true when an existing record was replaced.
  bool put(const AugmentationRecord& record);

  std::optional<AugmentationRecord> get(const std::string& source_id, AugmentationKind kind,
                                        int index, const std::string& model) const;
  // All records for (source_id, kind, model) sorted by index.
  std::vector<AugmentationRecord> find(const std::string& source_id, AugmentationKind kind,
                                       const std::string& model) const;
  // Texts of indices 0..n-1; nullopt if any is missing.
  std::optional<std::vector<std::string>> texts(const std::string& source_id,
                                                AugmentationKind kind,
                                                const std::string& model, int n) const;

  std::size_t size() const;
  std::vector<AugmentationRecord> all() const;
  const std::optional<std::filesystem::path>& path() const { return path_; }

  static std::string serialize(const AugmentationRecord& record);
  static AugmentationRecord parse(std::string_view line, std::size_t line_no = 0);

 private:
  using Key = std::tuple<std::string, AugmentationKind, std::string, int>;

  std::optional<std::filesystem::path> path_;
  mutable std::shared_mutex mutex_;
  std::map<Key, AugmentationRecord> records_;
};

// ---------------------------------------------------------------------------
// Content-addressed LLM response cache

struct CacheKey {
  std::string digest;  // lowercase hex SHA-256

  friend bool operator==(const CacheKey&, const CacheKey&) = default;
  friend auto operator<=>(const CacheKey&, const CacheKey&) = default;
};

CacheKey make_cache_key(std::string_view prompt, std::string_view model, double temperature,
                        int sample_index);

std::string sha256_hex(std::string_view data);

// Concurrent readers, serialized writers. File-backed caches append one
// {"key", "value"} line per store; the last line for a key wins on reload.
class ResponseCache {
 public:
  ResponseCache() = default;
  explicit ResponseCache(std::filesystem::path path);

  ResponseCache(const ResponseCache&) = delete;
  ResponseCache& operator=(const ResponseCache&) = delete;

  std::optional<std::string> lookup(const CacheKey& key) const;
  // Returns true when a different value was already stored (second write wins).
  bool store(const CacheKey& key, const std::string& value);

  std::size_t size() const;

 private:
  std::optional<std::filesystem::path> path_;
  mutable std::shared_mutex mutex_;
  std::map<std::string, std::string> entries_;
};

}  // namespace reco::corpus
