#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>

#include "reco/error.hpp"
#include "reco/sparse.hpp"

namespace reco::sparse {
namespace {

constexpr char kMagic[8] = {'R', 'E', 'C', 'O', 'B', 'M', '2', '5'};
constexpr std::uint32_t kFormatVersion = 1;

class Writer {
 public:
  explicit Writer(std::ofstream& out) : out_(out) {}
  template <typename T>
  void pod(const T& v) {
    out_.write(reinterpret_cast<const char*>(&v), sizeof v);
  }
  void str(const std::string& s) {
    pod(static_cast<std::uint32_t>(s.size()));
    out_.write(s.data(), static_cast<std::streamsize>(s.size()));
  }

 private:
  std::ofstream& out_;
};

class Reader {
 public:
  Reader(std::ifstream& in, const std::filesystem::path& path) : in_(in), path_(path) {}
  template <typename T>
  T pod() {
    T v{};
    in_.read(reinterpret_cast<char*>(&v), sizeof v);
    check();
    return v;
  }
  std::string str() {
    const auto n = pod<std::uint32_t>();
    std::string s(n, '\0');
    in_.read(s.data(), n);
    check();
    return s;
  }

 private:
  void check() {
    if (!in_) throw StorageError(path_.string() + ": truncated index file");
  }
  std::ifstream& in_;
  const std::filesystem::path& path_;
};

}  // namespace

SparseIndex index_corpus(std::span<const AugmentedText> docs, Bm25Params params,
                         TokenizerOptions tokenizer) {
  if (docs.empty()) throw Error("cannot index an empty corpus");
  SparseIndex index;
  index.params_ = params;
  index.tokenizer_ = tokenizer;
  index.doc_ids_.reserve(docs.size());
  index.doc_lengths_.reserve(docs.size());
  std::uint64_t total = 0;
  for (std::uint32_t d = 0; d < docs.size(); ++d) {
    const auto terms = tokenize(docs[d].text, tokenizer);
    std::map<std::string_view, std::uint32_t> tf;
    for (const auto& t : terms) ++tf[t];
    for (const auto& [term, count] : tf) {
      index.postings_[std::string(term)].push_back({d, count});
    }
    index.doc_ids_.push_back(docs[d].source_id);
    index.doc_lengths_.push_back(static_cast<std::uint32_t>(terms.size()));
    total += terms.size();
  }
  index.avg_doc_length_ = static_cast<double>(total) / static_cast<double>(docs.size());
  return index;
}

std::size_t SparseIndex::document_frequency(const std::string& term) const {
  auto it = postings_.find(term);
  return it == postings_.end() ? 0 : it->second.size();
}

const std::vector<SparseIndex::Posting>* SparseIndex::postings(const std::string& term) const {
  auto it = postings_.find(term);
  return it == postings_.end() ? nullptr : &it->second;
}

double SparseIndex::idf(const std::string& term) const {
  const double n = static_cast<double>(doc_count());
  const double df = static_cast<double>(document_frequency(term));
  return std::log(1.0 + (n - df + 0.5) / (df + 0.5));
}

std::vector<double> SparseIndex::score_all_terms(std::span<const std::string> query_terms) const {
  std::vector<double> scores(doc_count(), 0.0);
  std::map<std::string_view, std::uint32_t> qtf;
  for (const auto& t : query_terms) ++qtf[t];
  // Guard against an all-empty corpus, where every length is zero.
  const double avgdl = avg_doc_length_ > 0.0 ? avg_doc_length_ : 1.0;
  for (const auto& [term, count] : qtf) {
    auto it = postings_.find(std::string(term));
    if (it == postings_.end()) continue;
    const double w = idf(it->first) * static_cast<double>(count);
    for (const auto& p : it->second) {
      const double tf = p.tf;
      const double norm =
          params_.k1 * (1.0 - params_.b + params_.b * doc_lengths_[p.doc] / avgdl);
      scores[p.doc] += w * tf * (params_.k1 + 1.0) / (tf + norm);
    }
  }
  return scores;
}

std::vector<double> SparseIndex::score_all(std::string_view query) const {
  const auto terms = tokenize(query, tokenizer_);
  return score_all_terms(terms);
}

std::vector<ScoredDoc> sparse_search(const SparseIndex& index, const AugmentedText& query,
                                     std::size_t topk) {
  if (topk == 0) throw ConfigError("topk must be >= 1");
  const auto scores = index.score_all(query.text);
  std::vector<ScoredDoc> hits;
  for (std::uint32_t d = 0; d < scores.size(); ++d) {
    if (scores[d] > 0.0) hits.push_back({d, scores[d]});
  }
  auto order = [](const ScoredDoc& a, const ScoredDoc& b) {
    return a.score != b.score ? a.score > b.score : a.doc < b.doc;
  };
  if (hits.size() > topk) {
    std::partial_sort(hits.begin(), hits.begin() + static_cast<std::ptrdiff_t>(topk), hits.end(),
                      order);
    hits.resize(topk);
  } else {
    std::sort(hits.begin(), hits.end(), order);
  }
  return hits;
}

void SparseIndex::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw StorageError("cannot write " + path.string());
  Writer w(out);
  out.write(kMagic, sizeof kMagic);
  w.pod(kFormatVersion);
  w.pod(params_.k1);
  w.pod(params_.b);
  w.pod(static_cast<std::uint8_t>(tokenizer_.split_identifiers));
  w.pod(static_cast<std::uint64_t>(doc_ids_.size()));
  for (std::size_t d = 0; d < doc_ids_.size(); ++d) {
    w.str(doc_ids_[d]);
    w.pod(doc_lengths_[d]);
  }
  // Sorted term order keeps the file byte-identical across runs.
  std::vector<const std::string*> terms;
  terms.reserve(postings_.size());
  for (const auto& [t, _] : postings_) terms.push_back(&t);
  std::sort(terms.begin(), terms.end(), [](auto* a, auto* b) { return *a < *b; });
  w.pod(static_cast<std::uint64_t>(terms.size()));
  for (const auto* t : terms) {
    const auto& plist = postings_.at(*t);
    w.str(*t);
    w.pod(static_cast<std::uint32_t>(plist.size()));
    for (const auto& p : plist) {
      w.pod(p.doc);
      w.pod(p.tf);
    }
  }
  if (!out) throw StorageError("write failed for " + path.string());
}

SparseIndex SparseIndex::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StorageError("cannot open " + path.string());
  char magic[sizeof kMagic];
  in.read(magic, sizeof magic);
  if (!in || std::memcmp(magic, kMagic, sizeof kMagic) != 0) {
    throw StorageError(path.string() + ": not a sparse index file");
  }
  Reader r(in, path);
  if (const auto version = r.pod<std::uint32_t>(); version != kFormatVersion) {
    throw StorageError(path.string() + ": unsupported index version " + std::to_string(version));
  }
  SparseIndex index;
  index.params_.k1 = r.pod<double>();
  index.params_.b = r.pod<double>();
  index.tokenizer_.split_identifiers = r.pod<std::uint8_t>() != 0;
  const auto docs = r.pod<std::uint64_t>();
  std::uint64_t total = 0;
  for (std::uint64_t d = 0; d < docs; ++d) {
    index.doc_ids_.push_back(r.str());
    index.doc_lengths_.push_back(r.pod<std::uint32_t>());
    total += index.doc_lengths_.back();
  }
  if (docs == 0) throw StorageError(path.string() + ": index holds no documents");
  index.avg_doc_length_ = static_cast<double>(total) / static_cast<double>(docs);
  const auto nterms = r.pod<std::uint64_t>();
  for (std::uint64_t t = 0; t < nterms; ++t) {
    auto term = r.str();
    const auto n = r.pod<std::uint32_t>();
    auto& plist = index.postings_[std::move(term)];
    plist.reserve(n);
    for (std::uint32_t i = 0; i < n; ++i) {
      const auto doc = r.pod<std::uint32_t>();
      const auto tf = r.pod<std::uint32_t>();
      if (doc >= docs) throw StorageError(path.string() + ": posting out of range");
      plist.push_back({doc, tf});
    }
  }
  return index;
}

}  // namespace reco::sparse
