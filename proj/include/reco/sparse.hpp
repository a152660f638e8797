#pragma once

// Lexical retrieval: tokenizer, augmented-text construction and a BM25 index.

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace reco::sparse {

struct TokenizerOptions {
  // Split snake_case and camelCase identifiers into their parts. When false,
  // only whitespace and punctuation (other than '_') separate terms.
  bool split_identifiers = true;
};

// Lowercased terms. Bytes >= 0x80 are treated as word characters so that
// UTF-8 sequences stay inside one term.
std::vector<std::string> tokenize(std::string_view text, TokenizerOptions options = {});

struct AugmentedText {
  std::string source_id;
  std::string text;
  int n = 0;  // number of appended generations
};

// The original text repeated once per generation, followed by the generations,
// all joined by '\n'. With no generations the result is the original text.
AugmentedText build_augmented_query(std::string_view query, std::span<const std::string> gens,
                                    std::string source_id = {});
AugmentedText build_augmented_code(std::string_view code, std::span<const std::string> rewrites,
                                   std::string source_id = {});

struct Bm25Params {
  double k1 = 0.9;
  double b = 0.4;
};

struct ScoredDoc {
  std::uint32_t doc = 0;
  double score = 0.0;

  friend bool operator==(const ScoredDoc&, const ScoredDoc&) = default;
};

class SparseIndex {
 public:
  struct Posting {
    std::uint32_t doc;
    std::uint32_t tf;
  };

  std::size_t doc_count() const { return doc_lengths_.size(); }
  double average_doc_length() const { return avg_doc_length_; }
  std::uint32_t doc_length(std::uint32_t doc) const { return doc_lengths_.at(doc); }
  const std::string& doc_id(std::uint32_t doc) const { return doc_ids_.at(doc); }
  const std::vector<std::string>& doc_ids() const { return doc_ids_; }
  const Bm25Params& params() const { return params_; }
  const TokenizerOptions& tokenizer() const { return tokenizer_; }
  std::size_t document_frequency(const std::string& term) const;
  const std::vector<Posting>* postings(const std::string& term) const;

  // ln(1 + (N - df + 0.5) / (df + 0.5))
  double idf(const std::string& term) const;

  // BM25 score of every document; each query term occurrence contributes once.
  std::vector<double> score_all(std::string_view query) const;
  std::vector<double> score_all_terms(std::span<const std::string> query_terms) const;

  void save(const std::filesystem::path& path) const;
  static SparseIndex load(const std::filesystem::path& path);

  friend SparseIndex index_corpus(std::span<const AugmentedText> docs, Bm25Params params,
                                  TokenizerOptions tokenizer);

 private:
  Bm25Params params_;
  TokenizerOptions tokenizer_;
  std::vector<std::string> doc_ids_;
  std::vector<std::uint32_t> doc_lengths_;
  double avg_doc_length_ = 0.0;
  std::unordered_map<std::string, std::vector<Posting>> postings_;
};

SparseIndex index_corpus(std::span<const AugmentedText> docs, Bm25Params params = {},
                         TokenizerOptions tokenizer = {});

// At most `topk` documents with a positive score, scores non-increasing, ties by
// ascending document number.
std::vector<ScoredDoc> sparse_search(const SparseIndex& index, const AugmentedText& query,
                                     std::size_t topk);

}  // namespace reco::sparse
