#include "reco/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <sstream>

#include "parallel.hpp"
#include "reco/error.hpp"

namespace reco::eval {
namespace {

using corpus::AugmentationKind;

// Text material for one side (queries or documents) of a retrieval run.
struct Side {
  bool use_original = true;
  std::vector<std::string> originals;
  std::vector<std::vector<std::string>> generations;  // empty inner vectors when unused
};

struct Plan {
  std::vector<std::string> ids;
  Side queries;
  Side docs;
};

Plan make_plan(const corpus::Dataset& dataset, const PipelineConfig& cfg, const EvalContext& ctx) {
  cfg.validate();
  const auto& test = dataset.test;
  if (test.empty()) throw ConfigError("dataset '" + dataset.name + "' has an empty test split");
  Plan plan;
  plan.queries.use_original = !cfg.llm_only;
  plan.docs.use_original = !cfg.llm_only;
  plan.queries.generations.resize(test.size());
  plan.docs.generations.resize(test.size());
  for (const auto& r : test) {
    plan.ids.push_back(r.id);
    plan.queries.originals.push_back(r.query);
    plan.docs.originals.push_back(r.code);
  }
  if (cfg.framework == Framework::kBaseline) return plan;
  if (ctx.store == nullptr) throw ConfigError("an augmentation store is required for gar and reco");

  auto gather = [&](AugmentationKind kind, std::vector<std::vector<std::string>>& out,
                    std::vector<std::string>& missing) {
    for (std::size_t i = 0; i < test.size(); ++i) {
      auto texts = ctx.store->texts(test[i].id, kind, cfg.model, cfg.n_gen);
      if (texts) {
        out[i] = std::move(*texts);
      } else {
        missing.push_back(test[i].id);
      }
    }
  };
  std::vector<std::string> missing_exemplars;
  std::vector<std::string> missing_rewrites;
  gather(AugmentationKind::kExemplar, plan.queries.generations, missing_exemplars);
  if (cfg.framework == Framework::kReco) {
    gather(AugmentationKind::kRewrite, plan.docs.generations, missing_rewrites);
  }
  if (!missing_exemplars.empty() || !missing_rewrites.empty()) {
    std::ostringstream msg;
    msg << "missing augmentations for model '" << cfg.model << "' at n=" << cfg.n_gen << ":";
    auto list = [&](const char* what, const std::vector<std::string>& ids) {
      if (ids.empty()) return;
      msg << " " << ids.size() << " " << what << " (";
      for (std::size_t i = 0; i < ids.size() && i < 10; ++i) msg << (i ? ", " : "") << ids[i];
      if (ids.size() > 10) msg << ", ...";
      msg << ")";
    };
    list("exemplar", missing_exemplars);
    list("rewrite", missing_rewrites);
    std::vector<std::string> all = missing_exemplars;
    all.insert(all.end(), missing_rewrites.begin(), missing_rewrites.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    throw MissingAugmentationError(msg.str(), std::move(all));
  }
  return plan;
}

std::string join_lines(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += '\n';
    out += parts[i];
  }
  return out;
}

std::vector<sparse::AugmentedText> sparse_texts(const Side& side, const std::vector<std::string>& ids,
                                                bool query_side) {
  std::vector<sparse::AugmentedText> out;
  out.reserve(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const auto& gens = side.generations[i];
    if (!side.use_original) {
      out.push_back({ids[i], join_lines(gens), static_cast<int>(gens.size())});
    } else if (query_side) {
      out.push_back(sparse::build_augmented_query(side.originals[i], gens, ids[i]));
    } else {
      out.push_back(sparse::build_augmented_code(side.originals[i], gens, ids[i]));
    }
  }
  return out;
}

// Embeds every text of a side in one batch and pools per item.
std::vector<dense::EmbeddingVector> dense_vectors(const Side& side, dense::EmbeddingService& service) {
  std::vector<std::string> texts;
  const auto n = side.generations.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (side.use_original) texts.push_back(side.originals[i]);
    for (const auto& g : side.generations[i]) texts.push_back(g);
  }
  const auto vectors = dense::embed(texts, service);
  std::vector<dense::EmbeddingVector> out;
  out.reserve(n);
  std::size_t at = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::optional<dense::EmbeddingVector> original;
    if (side.use_original) original = vectors[at++];
    const auto count = side.generations[i].size();
    std::span<const dense::EmbeddingVector> gens(vectors.data() + at, count);
    at += count;
    if (original && count == 0) {
      out.push_back(*original);
    } else if (original) {
      out.push_back(dense::augment_representation(*original, gens));
    } else {
      out.push_back(dense::mean_representation(gens));
    }
  }
  return out;
}

EvalResult evaluate(const corpus::Dataset& dataset, const PipelineConfig& cfg,
                    const EvalContext& ctx, bool parallel) {
  const auto plan = make_plan(dataset, cfg, ctx);
  const auto n = plan.ids.size();
  EvalResult result;
  result.config = cfg;
  result.dataset = dataset.name;
  result.corpus_size = n;
  result.ranks.resize(n);

  auto record = [&](std::size_t i, const std::vector<double>& scores) {
    const auto [pess, opt] = rank_of(scores, i);
    result.ranks[i] = QueryRank{plan.ids[i], pess, opt, scores[i]};
  };

  if (cfg.retriever == Retriever::kSparse) {
    const auto docs = sparse_texts(plan.docs, plan.ids, false);
    const auto queries = sparse_texts(plan.queries, plan.ids, true);
    const auto index = sparse::index_corpus(docs, cfg.bm25, cfg.tokenizer);
    auto one = [&](std::size_t i) { record(i, index.score_all(queries[i].text)); };
    if (parallel) {
      detail::parallel_for(n, one);
    } else {
      for (std::size_t i = 0; i < n; ++i) one(i);
    }
  } else {
    if (ctx.embedder == nullptr) throw ConfigError("dense retrieval needs an embedding service");
    const auto doc_vectors = dense_vectors(plan.docs, *ctx.embedder);
    const auto query_vectors = dense_vectors(plan.queries, *ctx.embedder);
    const dense::DenseIndex index(plan.ids, doc_vectors);
    auto one = [&](std::size_t i) { record(i, index.score_all_serial(query_vectors[i])); };
    if (parallel) {
      detail::parallel_for(n, one);
    } else {
      for (std::size_t i = 0; i < n; ++i) one(i);
    }
  }

  std::vector<std::size_t> pess(n);
  std::vector<std::size_t> opt(n);
  for (std::size_t i = 0; i < n; ++i) {
    pess[i] = result.ranks[i].rank;
    opt[i] = result.ranks[i].optimistic_rank;
  }
  result.mrr = mrr(pess);
  result.mrr_optimistic = mrr(opt);
  return result;
}

}  // namespace

std::string to_string(Framework f) {
  switch (f) {
    case Framework::kBaseline:
      return "baseline";
    case Framework::kGar:
      return "gar";
    case Framework::kReco:
      return "reco";
  }
  return "unknown";
}

std::string to_string(Retriever r) { return r == Retriever::kSparse ? "sparse" : "dense"; }

Framework parse_framework(std::string_view name) {
  if (name == "baseline") return Framework::kBaseline;
  if (name == "gar") return Framework::kGar;
  if (name == "reco") return Framework::kReco;
  throw ConfigError("unknown framework '" + std::string(name) + "' (expected baseline, gar or reco)");
}

Retriever parse_retriever(std::string_view name) {
  if (name == "sparse") return Retriever::kSparse;
  if (name == "dense") return Retriever::kDense;
  throw ConfigError("unknown retriever '" + std::string(name) + "' (expected sparse or dense)");
}

void PipelineConfig::validate() const {
  if (n_gen < 0) throw ConfigError("n_gen must be non-negative");
  if (bm25.k1 < 0 || bm25.b < 0 || bm25.b > 1) throw ConfigError("BM25 needs k1 >= 0 and 0 <= b <= 1");
  if (framework == Framework::kBaseline) {
    if (n_gen != 0) throw ConfigError("baseline takes no generations (n_gen must be 0)");
    if (llm_only) throw ConfigError("llm_only requires the reco framework");
    return;
  }
  if (n_gen < 1) throw ConfigError(to_string(framework) + " requires n_gen >= 1");
  if (model.empty()) throw ConfigError(to_string(framework) + " requires a model tag");
  if (llm_only && framework != Framework::kReco) {
    throw ConfigError("llm_only requires the reco framework");
  }
}

double mrr(std::span<const std::size_t> ranks) {
  if (ranks.empty()) throw ConfigError("mrr of an empty rank list");
  double sum = 0.0;
  for (auto r : ranks) {
    if (r == 0) throw ConfigError("ranks are 1-based");
    sum += 1.0 / static_cast<double>(r);
  }
  return sum / static_cast<double>(ranks.size());
}

std::pair<std::size_t, std::size_t> rank_of(std::span<const double> scores, std::size_t truth) {
  const double s = scores[truth];
  std::size_t above = 0;
  std::size_t tied = 0;
  for (std::size_t j = 0; j < scores.size(); ++j) {
    if (j == truth) continue;
    if (scores[j] > s) {
      ++above;
    } else if (scores[j] == s) {
      ++tied;
    }
  }
  return {above + tied + 1, above + 1};
}

EvalResult run_eval(const corpus::Dataset& dataset, const PipelineConfig& cfg,
                    const EvalContext& ctx) {
  return evaluate(dataset, cfg, ctx, true);
}

EvalResult run_eval_serial(const corpus::Dataset& dataset, const PipelineConfig& cfg,
                           const EvalContext& ctx) {
  return evaluate(dataset, cfg, ctx, false);
}

EvalResult llm_only_eval(const corpus::Dataset& dataset, PipelineConfig cfg,
                         const EvalContext& ctx) {
  cfg.llm_only = true;
  return evaluate(dataset, cfg, ctx, true);
}

std::vector<EvalResult> gen_count_sweep(const corpus::Dataset& dataset, const PipelineConfig& cfg,
                                        int max_n, const EvalContext& ctx) {
  if (max_n < 1) throw ConfigError("sweep needs max_n >= 1");
  if (cfg.framework == Framework::kBaseline) throw ConfigError("sweep needs gar or reco");
  if (ctx.store == nullptr) throw ConfigError("an augmentation store is required for a sweep");
  // Check the full depth up front so the error names the shortfall.
  std::vector<std::string> short_ids;
  std::size_t fewest = static_cast<std::size_t>(max_n);
  for (const auto& r : dataset.test) {
    std::size_t have = ctx.store->find(r.id, AugmentationKind::kExemplar, cfg.model).size();
    if (cfg.framework == Framework::kReco) {
      have = std::min(have, ctx.store->find(r.id, AugmentationKind::kRewrite, cfg.model).size());
    }
    const bool complete =
        ctx.store->texts(r.id, AugmentationKind::kExemplar, cfg.model, max_n).has_value() &&
        (cfg.framework != Framework::kReco ||
         ctx.store->texts(r.id, AugmentationKind::kRewrite, cfg.model, max_n).has_value());
    if (!complete) {
      short_ids.push_back(r.id);
      fewest = std::min(fewest, have);
    }
  }
  if (!short_ids.empty()) {
    throw MissingAugmentationError(
        "sweep to n=" + std::to_string(max_n) + " needs " + std::to_string(max_n) +
            " stored generations per record; " + std::to_string(short_ids.size()) +
            " record(s) fall short (fewest available: " + std::to_string(fewest) + "), first '" +
            short_ids.front() + "'",
        short_ids);
  }
  std::vector<EvalResult> out;
  for (int n = 1; n <= max_n; ++n) {
    auto c = cfg;
    c.n_gen = n;
    out.push_back(run_eval(dataset, c, ctx));
  }
  return out;
}

GridReport run_grid(const corpus::Dataset& dataset, const PipelineConfig& base,
                    std::span<const std::string> models, std::span<const int> n_gens,
                    const EvalContext& ctx) {
  if (models.empty() || n_gens.empty()) throw ConfigError("grid needs at least one model and n_gen");
  GridReport report;
  for (const auto& m : models) {
    for (int n : n_gens) {
      auto c = base;
      c.model = m;
      c.n_gen = n;
      report.cells.push_back(run_eval(dataset, c, ctx));
      if (report.cells.back().mrr > report.cells[report.best].mrr) {
        report.best = report.cells.size() - 1;
      }
    }
  }
  return report;
}

std::size_t select_best_exemplar(std::span<const std::string> exemplars, std::string_view truth,
                                 style::MetricKind metric, Language language,
                                 const style::IdfTable& idf) {
  if (exemplars.empty()) throw ConfigError("select_best_exemplar needs at least one exemplar");
  std::vector<double> scores(exemplars.size());
  if (metric == style::MetricKind::kCssim) {
    const auto reference = style::make_profile(truth, language);
    for (std::size_t i = 0; i < exemplars.size(); ++i) {
      scores[i] = style::cssim(style::make_profile(exemplars[i], language), reference, idf).cssim;
    }
  } else {
    for (std::size_t i = 0; i < exemplars.size(); ++i) {
      scores[i] = style::score_metric(metric, exemplars[i], truth, language, idf).value;
    }
  }
  // max_element returns the first maximum.
  return static_cast<std::size_t>(std::max_element(scores.begin(), scores.end()) - scores.begin());
}

DeltaSummary delta_analysis(std::span<const DeltaPoint> points) {
  DeltaSummary s;
  s.count = points.size();
  double sx = 0, sy = 0;
  for (const auto& p : points) {
    if (!std::isfinite(p.delta_metric) || !std::isfinite(p.delta_mrr)) {
      throw ConfigError("delta point for '" + p.dataset + "/" + p.model + "' is not finite");
    }
    const double x = p.delta_metric;
    const double y = p.delta_mrr;
    if (x == 0.0 || y == 0.0) {
      ++s.on_axis;
    } else if (x > 0 && y > 0) {
      ++s.quadrant[0];
    } else if (x < 0 && y > 0) {
      ++s.quadrant[1];
    } else if (x < 0 && y < 0) {
      ++s.quadrant[2];
    } else {
      ++s.quadrant[3];
    }
    sx += x;
    sy += y;
  }
  if (points.size() >= 2) {
    const double n = static_cast<double>(points.size());
    const double mx = sx / n;
    const double my = sy / n;
    double sxx = 0, sxy = 0;
    for (const auto& p : points) {
      sxx += (p.delta_metric - mx) * (p.delta_metric - mx);
      sxy += (p.delta_metric - mx) * (p.delta_mrr - my);
    }
    if (sxx > 0) {
      s.slope = sxy / sxx;
      s.intercept = my - *s.slope * mx;
    }
  }
  return s;
}

std::string to_json(const EvalResult& r, bool with_ranks) {
  nlohmann::json j;
  j["dataset"] = r.dataset;
  j["framework"] = to_string(r.config.framework);
  j["retriever"] = to_string(r.config.retriever);
  j["n_gen"] = r.config.n_gen;
  j["model"] = r.config.model;
  j["llm_only"] = r.config.llm_only;
  j["corpus_size"] = r.corpus_size;
  j["queries"] = r.ranks.size();
  j["mrr"] = r.mrr;
  j["mrr_optimistic"] = r.mrr_optimistic;
  if (with_ranks) {
    auto& arr = j["ranks"] = nlohmann::json::array();
    for (const auto& q : r.ranks) {
      arr.push_back({{"id", q.query_id}, {"rank", q.rank}, {"optimistic_rank", q.optimistic_rank}});
    }
  }
  return j.dump();
}

std::string to_json(const DeltaSummary& s) {
  nlohmann::json j;
  j["count"] = s.count;
  j["quadrant_I"] = s.quadrant[0];
  j["quadrant_II"] = s.quadrant[1];
  j["quadrant_III"] = s.quadrant[2];
  j["quadrant_IV"] = s.quadrant[3];
  j["on_axis"] = s.on_axis;
  j["slope"] = s.slope ? nlohmann::json(*s.slope) : nlohmann::json(nullptr);
  j["intercept"] = s.intercept ? nlohmann::json(*s.intercept) : nlohmann::json(nullptr);
  return j.dump();
}

DeltaPoint parse_delta_point(std::string_view line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("delta point is not JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("delta_metric") || !j.contains("delta_mrr") ||
      !j["delta_metric"].is_number() || !j["delta_mrr"].is_number()) {
    throw DataError("delta point needs numeric 'delta_metric' and 'delta_mrr'");
  }
  DeltaPoint p;
  p.dataset = j.value("dataset", "");
  p.model = j.value("model", "");
  p.delta_metric = j["delta_metric"].get<double>();
  p.delta_mrr = j["delta_mrr"].get<double>();
  return p;
}

std::string format_table(std::span<const EvalResult> results) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%-12s %-9s %-7s %-20s %5s %8s %8s\n", "dataset", "framework",
                "retr", "model", "n", "MRR%", "optMRR%");
  out << line;
  for (const auto& r : results) {
    std::string fw = to_string(r.config.framework);
    if (r.config.llm_only) fw += "*";
    std::snprintf(line, sizeof line, "%-12s %-9s %-7s %-20s %5d %8.2f %8.2f\n", r.dataset.c_str(),
                  fw.c_str(), to_string(r.config.retriever).c_str(),
                  r.config.model.empty() ? "-" : r.config.model.c_str(), r.config.n_gen,
                  100.0 * r.mrr, 100.0 * r.mrr_optimistic);
    out << line;
  }
  return out.str();
}

}  // namespace reco::eval
