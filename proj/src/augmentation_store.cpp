#include <fstream>

#include <json.hpp>
#include <spdlog/spdlog.h>

#include "reco/corpus.hpp"
#include "reco/error.hpp"

namespace reco::corpus {

std::string to_string(AugmentationKind kind) {
  switch (kind) {
    case AugmentationKind::kExemplar: return "exemplar";
    case AugmentationKind::kSummary: return "summary";
    case AugmentationKind::kRewrite: return "rewrite";
  }
  return "exemplar";
}

AugmentationKind parse_kind(std::string_view name) {
  if (name == "exemplar") return AugmentationKind::kExemplar;
  if (name == "summary") return AugmentationKind::kSummary;
  if (name == "rewrite") return AugmentationKind::kRewrite;
  throw DataError("unknown augmentation kind '" + std::string(name) + "'");
}

std::string AugmentationStore::serialize(const AugmentationRecord& r) {
  nlohmann::json obj = {{"source_id", r.source_id},
                        {"kind", to_string(r.kind)},
                        {"index", r.index},
                        {"model", r.model},
                        {"text", r.text}};
  if (r.truncated) obj["truncated"] = true;
  return obj.dump();
}

AugmentationRecord AugmentationStore::parse(std::string_view line, std::size_t line_no) {
  try {
    auto obj = nlohmann::json::parse(line);
    AugmentationRecord r;
    r.source_id = obj.at("source_id").get<std::string>();
    r.kind = parse_kind(obj.at("kind").get<std::string>());
    r.index = obj.at("index").get<int>();
    r.model = obj.at("model").get<std::string>();
    r.text = obj.at("text").get<std::string>();
    r.truncated = obj.value("truncated", false);
    if (r.index < 0) throw DataError("negative index");
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("line " + std::to_string(line_no) + ": bad augmentation record (" +
                        e.what() + ")",
                    line_no);
  }
}

AugmentationStore::AugmentationStore(std::filesystem::path path) : path_(std::move(path)) {
  if (!std::filesystem::exists(*path_)) return;
  std::ifstream in(*path_, std::ios::binary);
  if (!in) throw StorageError("cannot open augmentation store " + path_->string());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto r = parse(line, line_no);
    Key key{r.source_id, r.kind, r.model, r.index};
    records_[std::move(key)] = std::move(r);
  }
}

bool AugmentationStore::put(const AugmentationRecord& record) {
  if (record.index < 0) throw DataError("augmentation index must be >= 0");
  std::unique_lock lock(mutex_);
  Key key{record.source_id, record.kind, record.model, record.index};
  const bool overwrote = records_.contains(key);
  if (overwrote) {
    spdlog::warn("augmentation store: overwriting {} {} #{} ({})", record.source_id,
                 to_string(record.kind), record.index, record.model);
  }
  if (path_) {
    std::ofstream out(*path_, std::ios::binary | std::ios::app);
    if (!out) throw StorageError("cannot append to " + path_->string());
    out << serialize(record) << '\n';
    if (!out) throw StorageError("write failed for " + path_->string());
  }
  records_[std::move(key)] = record;
  return overwrote;
}

std::optional<AugmentationRecord> AugmentationStore::get(const std::string& source_id,
                                                         AugmentationKind kind, int index,
                                                         const std::string& model) const {
  std::shared_lock lock(mutex_);
  auto it = records_.find(Key{source_id, kind, model, index});
  if (it == records_.end()) return std::nullopt;
  return it->second;
}

std::vector<AugmentationRecord> AugmentationStore::find(const std::string& source_id,
                                                        AugmentationKind kind,
                                                        const std::string& model) const {
  std::shared_lock lock(mutex_);
  std::vector<AugmentationRecord> out;
  // Keys order by (source_id, kind, model, index), so one range holds them all.
  for (auto it = records_.lower_bound(Key{source_id, kind, model, 0});
       it != records_.end(); ++it) {
    const auto& [sid, k, m, idx] = it->first;
    if (sid != source_id || k != kind || m != model) break;
    out.push_back(it->second);
  }
  return out;
}

std::optional<std::vector<std::string>> AugmentationStore::texts(const std::string& source_id,
                                                                 AugmentationKind kind,
                                                                 const std::string& model,
                                                                 int n) const {
  std::shared_lock lock(mutex_);
  std::vector<std::string> out;
  out.reserve(static_cast<std::size_t>(std::max(n, 0)));
  for (int i = 0; i < n; ++i) {
    auto it = records_.find(Key{source_id, kind, model, i});
    if (it == records_.end()) return std::nullopt;
    out.push_back(it->second.text);
  }
  return out;
}

std::size_t AugmentationStore::size() const {
  std::shared_lock lock(mutex_);
  return records_.size();
}

std::vector<AugmentationRecord> AugmentationStore::all() const {
  std::shared_lock lock(mutex_);
  std::vector<AugmentationRecord> out;
  out.reserve(records_.size());
  for (const auto& [k, r] : records_) out.push_back(r);
  return out;
}

}  // namespace reco::corpus
