#pragma once

// Retrieval evaluation (MRR) and the experiment suite built on it.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "reco/corpus.hpp"
#include "reco/dense.hpp"
#include "reco/sparse.hpp"
#include "reco/style/identifiers.hpp"
#include "reco/style/metrics.hpp"

namespace reco::eval {

enum class Framework { kBaseline, kGar, kReco };
enum class Retriever { kSparse, kDense };

std::string to_string(Framework f);
std::string to_string(Retriever r);
Framework parse_framework(std::string_view name);  // throws ConfigError
Retriever parse_retriever(std::string_view name);  // throws ConfigError

struct PipelineConfig {
  Framework framework = Framework::kBaseline;
  Retriever retriever = Retriever::kSparse;
  int n_gen = 0;
  std::string model;  // augmentation model tag; unused by the baseline
  bool llm_only = false;
  sparse::Bm25Params bm25;
  sparse::TokenizerOptions tokenizer;

  // Baseline takes no generations; GAR and ReCo need n_gen >= 1 and a model;
  // llm_only is only meaningful for ReCo. Throws ConfigError.
  void validate() const;
};

struct QueryRank {
  std::string query_id;
  std::size_t rank = 0;             // true code placed after every tied competitor
  std::size_t optimistic_rank = 0;  // true code placed before every tied competitor
  double score = 0.0;               // score of the true code

  friend bool operator==(const QueryRank&, const QueryRank&) = default;
};

struct EvalResult {
  PipelineConfig config;
  std::string dataset;
  std::size_t corpus_size = 0;
  std::vector<QueryRank> ranks;
  double mrr = 0.0;
  double mrr_optimistic = 0.0;
};

// Mean reciprocal rank. Throws ConfigError on an empty list or a rank of 0.
double mrr(std::span<const std::size_t> ranks);

// Pessimistic and optimistic 1-based rank of `truth` within `scores`.
std::pair<std::size_t, std::size_t> rank_of(std::span<const double> scores, std::size_t truth);

struct EvalContext {
  const corpus::AugmentationStore* store = nullptr;  // required for gar / reco
  dense::EmbeddingService* embedder = nullptr;       // required for dense retrieval
};

// Builds the (augmented) candidate codebase from the test split, runs every
// test query against it and records the rank of its paired code. Throws
// MissingAugmentationError naming every record lacking generations.
EvalResult run_eval(const corpus::Dataset& dataset, const PipelineConfig& cfg,
                    const EvalContext& ctx);

// Same computation with the per-query loop run serially.
EvalResult run_eval_serial(const corpus::Dataset& dataset, const PipelineConfig& cfg,
                           const EvalContext& ctx);

// Exemplars stand in for queries and rewrites for codes; originals unused.
EvalResult llm_only_eval(const corpus::Dataset& dataset, PipelineConfig cfg,
                         const EvalContext& ctx);

// Evaluates n = 1..max_n on prefixes of the stored generations.
std::vector<EvalResult> gen_count_sweep(const corpus::Dataset& dataset, const PipelineConfig& cfg,
                                        int max_n, const EvalContext& ctx);

struct GridReport {
  std::vector<EvalResult> cells;
  std::size_t best = 0;  // index into cells of the highest MRR (first on ties)
};

// Every model x n_gen combination of a GAR or ReCo config.
GridReport run_grid(const corpus::Dataset& dataset, const PipelineConfig& base,
                    std::span<const std::string> models, std::span<const int> n_gens,
                    const EvalContext& ctx);

// Index of the exemplar scoring highest against `truth`; lowest index on ties.
std::size_t select_best_exemplar(std::span<const std::string> exemplars, std::string_view truth,
                                 style::MetricKind metric, Language language,
                                 const style::IdfTable& idf);

struct DeltaPoint {
  std::string dataset;
  std::string model;
  double delta_metric = 0.0;
  double delta_mrr = 0.0;
};

struct DeltaSummary {
  std::size_t quadrant[4] = {0, 0, 0, 0};  // I, II, III, IV
  std::size_t on_axis = 0;                 // either coordinate exactly zero
  std::optional<double> slope;             // ordinary least squares, y on x
  std::optional<double> intercept;
  std::size_t count = 0;
};

// Quadrants use delta_metric as x and delta_mrr as y. The fit needs at least
// two points with distinct x. Throws ConfigError on non-finite input.
DeltaSummary delta_analysis(std::span<const DeltaPoint> points);

// Machine-readable forms (one JSON object per line).
std::string to_json(const EvalResult& result, bool with_ranks = false);
std::string to_json(const DeltaSummary& summary);
DeltaPoint parse_delta_point(std::string_view json_line);

// Fixed-width human table of the cells.
std::string format_table(std::span<const EvalResult> results);

}  // namespace reco::eval
