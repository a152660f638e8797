#include "reco/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "reco/config.hpp"
#include "reco/error.hpp"
#include "reco/sparse.hpp"

namespace reco {

std::string to_string(Language lang) {
  return lang == Language::kJava ? "java" : "python";
}

Language parse_language(std::string_view name) {
  if (name == "python") return Language::kPython;
  if (name == "java") return Language::kJava;
  throw ConfigError("unknown language '" + std::string(name) + "' (expected python or java)");
}

}  // namespace reco

namespace reco::corpus {
namespace {

using nlohmann::json;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StorageError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

std::string line_prefix(std::size_t line_no) {
  return "line " + std::to_string(line_no) + ": ";
}

}  // namespace

std::vector<PairRecord> parse_pairs(std::string_view text, Language language) {
  std::vector<PairRecord> out;
  std::unordered_map<std::string, std::size_t> seen;  // id -> line
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (blank(line)) continue;

    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw DataError(line_prefix(line_no) + "malformed JSON (" + e.what() + ")", line_no);
    }
    if (!obj.is_object()) throw DataError(line_prefix(line_no) + "expected an object", line_no);
    for (const auto& [key, value] : obj.items()) {
      if (key != "id" && key != "query" && key != "code") {
        throw DataError(line_prefix(line_no) + "unexpected field '" + key + "'", line_no);
      }
    }
    PairRecord rec;
    rec.language = language;
    for (auto [field, dest] : {std::pair{"id", &rec.id}, std::pair{"query", &rec.query},
                               std::pair{"code", &rec.code}}) {
      auto it = obj.find(field);
      if (it == obj.end() || !it->is_string()) {
        throw DataError(line_prefix(line_no) + "missing string field '" + field + "'", line_no);
      }
      *dest = it->get<std::string>();
      if (blank(*dest)) {
        throw DataError(line_prefix(line_no) + "empty field '" + field + "'", line_no);
      }
    }
    if (auto [it, fresh] = seen.emplace(rec.id, line_no); !fresh) {
      throw DataError("duplicate id '" + rec.id + "' on lines " + std::to_string(it->second) +
                          " and " + std::to_string(line_no),
                      line_no);
    }
    out.push_back(std::move(rec));
  }
  if (out.empty()) throw DataError("no records");
  return out;
}

std::vector<PairRecord> load_pairs(const std::filesystem::path& path, Language language) {
  try {
    return parse_pairs(read_file(path), language);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what(), e.line());
  }
}

std::string serialize_pairs(const std::vector<PairRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    json obj = {{"id", r.id}, {"query", r.query}, {"code", r.code}};
    out += obj.dump();
    out += '\n';
  }
  return out;
}

void save_pairs(const std::filesystem::path& path, const std::vector<PairRecord>& records) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw StorageError("cannot write " + path.string());
  out << serialize_pairs(records);
  if (!out) throw StorageError("write failed for " + path.string());
}

void validate(const Dataset& dataset) {
  if (dataset.test.empty()) throw DataError(dataset.name + ": test split has no records");
  std::set<std::string_view> train_ids;
  for (const auto& r : dataset.train) train_ids.insert(r.id);
  for (const auto& r : dataset.test) {
    if (train_ids.contains(r.id)) {
      throw DataError(dataset.name + ": id '" + r.id + "' appears in both train and test");
    }
  }
  for (const auto* split : {&dataset.train, &dataset.test}) {
    for (const auto& r : *split) {
      if (r.language != dataset.language) {
        throw DataError(dataset.name + ": record '" + r.id + "' has language " +
                        to_string(r.language));
      }
    }
  }
}

Dataset load_dataset(const std::filesystem::path& path, const std::string& name,
                     Language language) {
  std::filesystem::path train_path;
  std::filesystem::path test_path;
  if (std::filesystem::is_directory(path)) {
    train_path = path / "train.jsonl";
    test_path = path / "test.jsonl";
  } else if (std::filesystem::exists(path)) {
    auto manifest = Manifest::load(path);
    if (manifest.language != language) {
      throw ConfigError(path.string() + ": manifest language is " + to_string(manifest.language));
    }
    train_path = manifest.train_path;
    test_path = manifest.test_path;
  } else {
    throw StorageError("dataset path does not exist: " + path.string());
  }

  Dataset d;
  d.name = name;
  d.language = language;
  if (!train_path.empty() && std::filesystem::exists(train_path)) {
    d.train = load_pairs(train_path, language);
  }
  d.test = load_pairs(test_path, language);
  validate(d);
  return d;
}

DatasetStats dataset_stats(const Dataset& dataset) {
  auto split_stats = [](const std::vector<PairRecord>& split) {
    SplitStats s;
    s.count = split.size();
    if (split.empty()) return s;
    double q = 0.0;
    double c = 0.0;
    for (const auto& r : split) {
      q += static_cast<double>(sparse::tokenize(r.query).size());
      c += static_cast<double>(sparse::tokenize(r.code).size());
    }
    s.mean_query_tokens = q / static_cast<double>(split.size());
    s.mean_code_tokens = c / static_cast<double>(split.size());
    return s;
  };
  return {split_stats(dataset.train), split_stats(dataset.test)};
}

std::vector<PairRecord> sample_subset(const std::vector<PairRecord>& records,
                                      std::size_t count, std::uint64_t seed) {
  if (count > records.size()) {
    throw ConfigError("cannot sample " + std::to_string(count) + " of " +
                      std::to_string(records.size()) + " records");
  }
  std::mt19937_64 rng(seed);
  // Selection sampling (Knuth's algorithm S) keeps input order.
  std::vector<PairRecord> out;
  out.reserve(count);
  std::size_t needed = count;
  for (std::size_t i = 0; i < records.size() && needed > 0; ++i) {
    const std::size_t remaining = records.size() - i;
    std::uniform_int_distribution<std::size_t> dist(0, remaining - 1);
    if (dist(rng) < needed) {
      out.push_back(records[i]);
      --needed;
    }
  }
  return out;
}

Manifest Manifest::load(const std::filesystem::path& path) {
  auto kv = KeyValueFile::load(path);
  Manifest m;
  m.name = kv.get_or("name", path.stem().string());
  m.language = parse_language(kv.get_or("language", "python"));
  if (kv.contains("seed")) m.seed = static_cast<std::uint64_t>(kv.get_int("seed", 0));
  const auto base = path.parent_path();
  auto resolve = [&](const std::string& key) -> std::filesystem::path {
    auto v = kv.get(key);
    if (!v || v->empty()) return {};
    std::filesystem::path p(*v);
    return p.is_absolute() ? p : base / p;
  };
  m.train_path = resolve("train");
  m.test_path = resolve("test");
  if (m.test_path.empty()) throw ConfigError(path.string() + ": manifest lacks 'test'");
  return m;
}

void Manifest::save(const std::filesystem::path& path) const {
  KeyValueFile kv;
  kv.set("name", name);
  kv.set("language", to_string(language));
  if (seed) kv.set("seed", std::to_string(*seed));
  if (!train_path.empty()) kv.set("train", train_path.string());
  kv.set("test", test_path.string());
  kv.save(path);
}

}  // namespace reco::corpus
