#pragma once

// Dense retrieval over vectors produced by an external embedding service.

#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "reco/sparse.hpp"

namespace reco::dense {

struct EmbeddingVector {
  std::vector<double> values;

  std::size_t dim() const { return values.size(); }
  friend bool operator==(const EmbeddingVector&, const EmbeddingVector&) = default;
};

// Returns `v` scaled to unit L2 norm. Throws on a zero or non-finite vector.
EmbeddingVector normalized(EmbeddingVector v);
double l2_norm(const EmbeddingVector& v);

// Source of raw (possibly unnormalized) embeddings.
class EmbeddingService {
 public:
  virtual ~EmbeddingService() = default;
  virtual std::vector<std::vector<double>> embed_batch(std::span<const std::string> texts) = 0;
};

struct HttpEmbeddingConfig {
  std::string base_url;             // e.g. http://127.0.0.1:8089
  std::size_t batch_size = 64;      // texts per request
  int timeout_seconds = 120;
};

// POST <base>/embed {"texts": [...]} -> {"embeddings": [[...], ...], "dim": d}
class HttpEmbeddingService : public EmbeddingService {
 public:
  explicit HttpEmbeddingService(HttpEmbeddingConfig config);
  std::vector<std::vector<double>> embed_batch(std::span<const std::string> texts) override;

 private:
  HttpEmbeddingConfig config_;
};

// Embeds and re-normalizes each vector to unit length. All vectors in the
// call must share one dimension.
std::vector<EmbeddingVector> embed(std::span<const std::string> texts, EmbeddingService& service);

// (1 / 2N) * (N * query + sum(generations)); no renormalization afterwards.
EmbeddingVector augment_representation(const EmbeddingVector& query,
                                       std::span<const EmbeddingVector> generations);

// Plain mean of the vectors, used when the original text is excluded.
EmbeddingVector mean_representation(std::span<const EmbeddingVector> vectors);

double similarity(const EmbeddingVector& a, const EmbeddingVector& b);

class DenseIndex {
 public:
  DenseIndex() = default;
  DenseIndex(std::vector<std::string> doc_ids, std::span<const EmbeddingVector> vectors);

  std::size_t doc_count() const { return doc_ids_.size(); }
  std::size_t dim() const { return dim_; }
  const std::vector<std::string>& doc_ids() const { return doc_ids_; }
  std::span<const double> row(std::size_t doc) const {
    return {matrix_.data() + doc * dim_, dim_};
  }

  // Dot product against every stored vector. The OpenMP kernel and its
  // serial reference must agree exactly.
  std::vector<double> score_all(const EmbeddingVector& query) const;
  std::vector<double> score_all_serial(const EmbeddingVector& query) const;

  // Vector file: u64 count, u64 dim, then count*dim little-endian float32
  // values row-major. Document ids go to "<path>.ids", one per line.
  void save(const std::filesystem::path& path) const;
  static DenseIndex load(const std::filesystem::path& path);

 private:
  void check_dim(const EmbeddingVector& query) const;

  std::vector<std::string> doc_ids_;
  std::size_t dim_ = 0;
  std::vector<double> matrix_;
};

// Exhaustive scan; non-increasing scores, ties by ascending document number.
std::vector<sparse::ScoredDoc> dense_search(const DenseIndex& index, const EmbeddingVector& query,
                                            std::size_t topk);

// Mean over i of -log softmax_j(q_i . c_j)[i], computed with max-subtraction.
double infonce_loss(std::span<const std::pair<EmbeddingVector, EmbeddingVector>> pairs);

}  // namespace reco::dense
