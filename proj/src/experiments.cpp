#include "reco/experiments.hpp"

#include <random>

#include "parallel.hpp"
#include "reco/error.hpp"

namespace reco::eval {

using corpus::AugmentationKind;

MetricGap metric_gap(const corpus::Dataset& dataset, const corpus::AugmentationStore& store,
                     const std::string& model, style::MetricKind metric,
                     const style::IdfTable& idf) {
  const auto& test = dataset.test;
  std::vector<std::string> missing;
  std::vector<std::pair<std::string, std::string>> texts(test.size());
  for (std::size_t i = 0; i < test.size(); ++i) {
    auto ex = store.get(test[i].id, AugmentationKind::kExemplar, 0, model);
    auto rw = store.get(test[i].id, AugmentationKind::kRewrite, 0, model);
    if (!ex || !rw) {
      missing.push_back(test[i].id);
      continue;
    }
    texts[i] = {ex->text, rw->text};
  }
  if (!missing.empty()) {
    throw MissingAugmentationError("metric gap needs exemplar and rewrite 0 for model '" + model +
                                       "'; " + std::to_string(missing.size()) + " record(s) missing",
                                   missing);
  }
  if (test.empty()) throw ConfigError("metric gap needs a non-empty test split");
  std::vector<double> rewrite_scores(test.size());
  std::vector<double> original_scores(test.size());
  detail::parallel_for(test.size(), [&](std::size_t i) {
    const auto& [exemplar, rewrite] = texts[i];
    rewrite_scores[i] = style::score_metric(metric, exemplar, rewrite, dataset.language, idf).value;
    original_scores[i] =
        style::score_metric(metric, exemplar, test[i].code, dataset.language, idf).value;
  });
  MetricGap gap;
  gap.pairs = test.size();
  for (std::size_t i = 0; i < test.size(); ++i) {
    gap.with_rewrite += rewrite_scores[i];
    gap.with_original += original_scores[i];
  }
  gap.with_rewrite /= static_cast<double>(gap.pairs);
  gap.with_original /= static_cast<double>(gap.pairs);
  gap.delta = gap.with_rewrite - gap.with_original;
  return gap;
}

DeltaPoint make_delta_point(const corpus::Dataset& dataset, const PipelineConfig& cfg,
                            style::MetricKind metric, const style::IdfTable& idf,
                            const EvalContext& ctx) {
  if (ctx.store == nullptr) throw ConfigError("delta point needs an augmentation store");
  auto gar = cfg;
  gar.framework = Framework::kGar;
  gar.llm_only = false;
  auto reco = gar;
  reco.framework = Framework::kReco;
  const double delta_mrr = run_eval(dataset, reco, ctx).mrr - run_eval(dataset, gar, ctx).mrr;
  const auto gap = metric_gap(dataset, *ctx.store, cfg.model, metric, idf);
  return DeltaPoint{dataset.name, cfg.model, gap.delta, delta_mrr};
}

SelectionComparison compare_selection(const corpus::Dataset& dataset, const PipelineConfig& cfg,
                                      style::MetricKind metric, const style::IdfTable& idf,
                                      std::uint64_t seed, const EvalContext& ctx) {
  if (ctx.store == nullptr) throw ConfigError("selection needs an augmentation store");
  if (cfg.n_gen < 1) throw ConfigError("selection needs n_gen >= 1 candidate exemplars");
  const auto& test = dataset.test;
  std::vector<std::vector<std::string>> pools(test.size());
  std::vector<std::string> missing;
  for (std::size_t i = 0; i < test.size(); ++i) {
    auto texts = ctx.store->texts(test[i].id, AugmentationKind::kExemplar, cfg.model, cfg.n_gen);
    if (!texts) {
      missing.push_back(test[i].id);
    } else {
      pools[i] = std::move(*texts);
    }
  }
  if (!missing.empty()) {
    throw MissingAugmentationError("selection needs " + std::to_string(cfg.n_gen) +
                                       " exemplars per record; " + std::to_string(missing.size()) +
                                       " record(s) short",
                                   missing);
  }

  SelectionComparison out;
  out.best_choice.resize(test.size());
  out.random_choice.resize(test.size());
  detail::parallel_for(test.size(), [&](std::size_t i) {
    out.best_choice[i] = select_best_exemplar(pools[i], test[i].code, metric, dataset.language, idf);
  });
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < test.size(); ++i) {
    std::uniform_int_distribution<std::size_t> pick(0, pools[i].size() - 1);
    out.random_choice[i] = pick(rng);
  }

  auto run_with = [&](const std::vector<std::size_t>& choice) {
    corpus::AugmentationStore chosen;
    for (std::size_t i = 0; i < test.size(); ++i) {
      chosen.put({test[i].id, AugmentationKind::kExemplar, 0, cfg.model, pools[i][choice[i]], false});
    }
    auto single = cfg;
    single.framework = Framework::kGar;
    single.llm_only = false;
    single.n_gen = 1;
    EvalContext c = ctx;
    c.store = &chosen;
    return run_eval(dataset, single, c);
  };
  out.best = run_with(out.best_choice);
  out.random = run_with(out.random_choice);
  return out;
}

}  // namespace reco::eval
