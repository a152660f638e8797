#pragma once

// Experiments that combine retrieval runs with code-similarity metrics.

#include <cstdint>
#include <vector>

#include "reco/eval.hpp"

namespace reco::eval {

// Mean over test pairs of metric(exemplar, rewrite) and metric(exemplar,
// original code), both using generation index 0.
struct MetricGap {
  double with_rewrite = 0.0;
  double with_original = 0.0;
  double delta = 0.0;
  std::size_t pairs = 0;
};

MetricGap metric_gap(const corpus::Dataset& dataset, const corpus::AugmentationStore& store,
                     const std::string& model, style::MetricKind metric,
                     const style::IdfTable& idf);

// delta_metric from metric_gap; delta_mrr = MRR(reco) - MRR(gar) at cfg.n_gen.
DeltaPoint make_delta_point(const corpus::Dataset& dataset, const PipelineConfig& cfg,
                            style::MetricKind metric, const style::IdfTable& idf,
                            const EvalContext& ctx);

struct SelectionComparison {
  EvalResult best;
  EvalResult random;
  std::vector<std::size_t> best_choice;    // exemplar index picked per test pair
  std::vector<std::size_t> random_choice;
};

// For each test pair, picks one exemplar out of the first cfg.n_gen either by
// the highest metric against the true code or uniformly at random (seeded),
// then runs GAR with that single exemplar.
SelectionComparison compare_selection(const corpus::Dataset& dataset, const PipelineConfig& cfg,
                                      style::MetricKind metric, const style::IdfTable& idf,
                                      std::uint64_t seed, const EvalContext& ctx);

}  // namespace reco::eval
