#include "reco/dense.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>

#include "reco/error.hpp"

namespace reco::dense {

double l2_norm(const EmbeddingVector& v) {
  double sum = 0.0;
  for (double x : v.values) sum += x * x;
  return std::sqrt(sum);
}

EmbeddingVector normalized(EmbeddingVector v) {
  for (double x : v.values) {
    if (!std::isfinite(x)) throw Error("embedding contains a non-finite value");
  }
  const double norm = l2_norm(v);
  if (norm == 0.0) throw Error("cannot normalize a zero embedding");
  for (double& x : v.values) x /= norm;
  return v;
}

std::vector<EmbeddingVector> embed(std::span<const std::string> texts, EmbeddingService& service) {
  if (texts.empty()) return {};
  auto raw = service.embed_batch(texts);
  if (raw.size() != texts.size()) {
    throw EndpointError("embedding service returned " + std::to_string(raw.size()) +
                        " vectors for " + std::to_string(texts.size()) + " texts");
  }
  std::vector<EmbeddingVector> out;
  out.reserve(raw.size());
  const std::size_t dim = raw.front().size();
  for (auto& r : raw) {
    if (r.size() != dim || dim == 0) {
      throw EndpointError("embedding dimension mismatch within a batch (" + std::to_string(dim) +
                          " vs " + std::to_string(r.size()) + ")");
    }
    out.push_back(normalized(EmbeddingVector{std::move(r)}));
  }
  return out;
}

EmbeddingVector augment_representation(const EmbeddingVector& query,
                                       std::span<const EmbeddingVector> generations) {
  if (generations.empty()) throw Error("augment_representation needs at least one generation");
  const std::size_t dim = query.dim();
  const double n = static_cast<double>(generations.size());
  EmbeddingVector out{std::vector<double>(dim, 0.0)};
  for (const auto& g : generations) {
    if (g.dim() != dim) throw Error("augment_representation: dimension mismatch");
    for (std::size_t i = 0; i < dim; ++i) out.values[i] += g.values[i];
  }
  for (std::size_t i = 0; i < dim; ++i) {
    out.values[i] = (n * query.values[i] + out.values[i]) / (2.0 * n);
  }
  return out;
}

EmbeddingVector mean_representation(std::span<const EmbeddingVector> vectors) {
  if (vectors.empty()) throw Error("mean_representation needs at least one vector");
  const std::size_t dim = vectors.front().dim();
  EmbeddingVector out{std::vector<double>(dim, 0.0)};
  for (const auto& v : vectors) {
    if (v.dim() != dim) throw Error("mean_representation: dimension mismatch");
    for (std::size_t i = 0; i < dim; ++i) out.values[i] += v.values[i];
  }
  for (double& x : out.values) x /= static_cast<double>(vectors.size());
  return out;
}

double similarity(const EmbeddingVector& a, const EmbeddingVector& b) {
  if (a.dim() != b.dim()) throw Error("similarity: dimension mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) sum += a.values[i] * b.values[i];
  return sum;
}

DenseIndex::DenseIndex(std::vector<std::string> doc_ids, std::span<const EmbeddingVector> vectors)
    : doc_ids_(std::move(doc_ids)) {
  if (doc_ids_.size() != vectors.size()) {
    throw Error("dense index: " + std::to_string(doc_ids_.size()) + " ids for " +
                std::to_string(vectors.size()) + " vectors");
  }
  if (vectors.empty()) throw Error("cannot index an empty corpus");
  dim_ = vectors.front().dim();
  matrix_.reserve(dim_ * vectors.size());
  for (const auto& v : vectors) {
    if (v.dim() != dim_) throw Error("dense index: dimension mismatch");
    matrix_.insert(matrix_.end(), v.values.begin(), v.values.end());
  }
}

void DenseIndex::check_dim(const EmbeddingVector& query) const {
  if (query.dim() != dim_) {
    throw Error("query dimension " + std::to_string(query.dim()) + " != index dimension " +
                std::to_string(dim_));
  }
}

std::vector<double> DenseIndex::score_all_serial(const EmbeddingVector& query) const {
  check_dim(query);
  std::vector<double> scores(doc_count());
  for (std::size_t d = 0; d < doc_count(); ++d) {
    const double* row = matrix_.data() + d * dim_;
    double sum = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) sum += row[i] * query.values[i];
    scores[d] = sum;
  }
  return scores;
}

std::vector<double> DenseIndex::score_all(const EmbeddingVector& query) const {
  check_dim(query);
  const auto n = static_cast<std::ptrdiff_t>(doc_count());
  std::vector<double> scores(doc_count());
  const double* q = query.values.data();
  const double* m = matrix_.data();
  const std::size_t dim = dim_;
  // Each row keeps the serial summation order, so results match bit-for-bit.
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t d = 0; d < n; ++d) {
    const double* row = m + static_cast<std::size_t>(d) * dim;
    double sum = 0.0;
    for (std::size_t i = 0; i < dim; ++i) sum += row[i] * q[i];
    scores[static_cast<std::size_t>(d)] = sum;
  }
  return scores;
}

std::vector<sparse::ScoredDoc> dense_search(const DenseIndex& index, const EmbeddingVector& query,
                                            std::size_t topk) {
  if (topk == 0) throw ConfigError("topk must be >= 1");
  const auto scores = index.score_all(query);
  std::vector<sparse::ScoredDoc> hits;
  hits.reserve(scores.size());
  for (std::uint32_t d = 0; d < scores.size(); ++d) hits.push_back({d, scores[d]});
  auto order = [](const sparse::ScoredDoc& a, const sparse::ScoredDoc& b) {
    return a.score != b.score ? a.score > b.score : a.doc < b.doc;
  };
  const std::size_t k = std::min(topk, hits.size());
  std::partial_sort(hits.begin(), hits.begin() + static_cast<std::ptrdiff_t>(k), hits.end(), order);
  hits.resize(k);
  return hits;
}

double infonce_loss(std::span<const std::pair<EmbeddingVector, EmbeddingVector>> pairs) {
  if (pairs.empty()) throw Error("infonce_loss needs at least one pair");
  double total = 0.0;
  std::vector<double> logits(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t j = 0; j < pairs.size(); ++j) {
      logits[j] = similarity(pairs[i].first, pairs[j].second);
    }
    const double max = *std::max_element(logits.begin(), logits.end());
    double denom = 0.0;
    for (double l : logits) denom += std::exp(l - max);
    total += -(logits[i] - max - std::log(denom));
  }
  return total / static_cast<double>(pairs.size());
}

namespace {

static_assert(std::endian::native == std::endian::little,
              "vector files are written in native little-endian order");

}  // namespace

void DenseIndex::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw StorageError("cannot write " + path.string());
  const std::uint64_t count = doc_count();
  const std::uint64_t dim = dim_;
  out.write(reinterpret_cast<const char*>(&count), sizeof count);
  out.write(reinterpret_cast<const char*>(&dim), sizeof dim);
  for (double x : matrix_) {
    const auto f = static_cast<float>(x);
    out.write(reinterpret_cast<const char*>(&f), sizeof f);
  }
  if (!out) throw StorageError("write failed for " + path.string());

  std::ofstream ids(path.string() + ".ids", std::ios::binary | std::ios::trunc);
  if (!ids) throw StorageError("cannot write " + path.string() + ".ids");
  for (const auto& id : doc_ids_) ids << id << '\n';
}

DenseIndex DenseIndex::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StorageError("cannot open " + path.string());
  std::uint64_t count = 0;
  std::uint64_t dim = 0;
  in.read(reinterpret_cast<char*>(&count), sizeof count);
  in.read(reinterpret_cast<char*>(&dim), sizeof dim);
  if (!in || count == 0 || dim == 0) throw StorageError(path.string() + ": bad vector header");
  std::vector<EmbeddingVector> vectors(count, EmbeddingVector{std::vector<double>(dim)});
  for (auto& v : vectors) {
    for (auto& x : v.values) {
      float f = 0.0f;
      in.read(reinterpret_cast<char*>(&f), sizeof f);
      x = f;
    }
  }
  if (!in) throw StorageError(path.string() + ": truncated vector payload");

  std::vector<std::string> ids;
  std::ifstream id_in(path.string() + ".ids", std::ios::binary);
  if (id_in) {
    std::string line;
    while (std::getline(id_in, line)) ids.push_back(line);
  }
  if (ids.size() != count) {
    ids.clear();
    for (std::uint64_t i = 0; i < count; ++i) ids.push_back(std::to_string(i));
  }
  return DenseIndex(std::move(ids), vectors);
}

}  // namespace reco::dense
