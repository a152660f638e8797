// Command-line front end: dataset ingestion, LLM augmentation, indexing,
// search, evaluation and metric reporting.

#include <CLI11.hpp>
#include <spdlog/cfg/env.h>
#include <spdlog/spdlog.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <memory>
#include <optional>
#include <sstream>

#include "reco/augmentor.hpp"
#include "reco/config.hpp"
#include "reco/corpus.hpp"
#include "reco/dense.hpp"
#include "reco/error.hpp"
#include "reco/eval.hpp"
#include "reco/experiments.hpp"
#include "reco/sparse.hpp"
#include "reco/style/metrics.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Common {
  std::string config_path;
  std::string dataset;
  std::string name;
  std::string language;
  std::string store;
  std::string cache;
  std::string embed_url;
  std::optional<double> k1;
  std::optional<double> b;
  bool no_ident_split = false;
  std::size_t topk = 10;
};

// Flags override config-file values, which override defaults.
struct Settings {
  reco::KeyValueFile file;
  Common flags;

  std::string value(const std::string& flag, const std::string& key, std::string fallback = {}) const {
    if (!flag.empty()) return flag;
    return file.get_or(key, std::move(fallback));
  }

  reco::Language language() const {
    return reco::parse_language(value(flags.language, "dataset.language", "python"));
  }

  reco::corpus::Dataset dataset() const {
    const auto path = value(flags.dataset, "dataset.path");
    if (path.empty()) throw reco::ConfigError("no dataset given (--dataset or dataset.path)");
    auto name = value(flags.name, "dataset.name", fs::path(path).filename().string());
    auto ds = reco::corpus::load_dataset(path, name, language());
    reco::corpus::validate(ds);
    return ds;
  }

  std::unique_ptr<reco::corpus::AugmentationStore> store(bool required) const {
    const auto path = value(flags.store, "store.path");
    if (path.empty()) {
      if (required) throw reco::ConfigError("no augmentation store given (--store or store.path)");
      return nullptr;
    }
    return std::make_unique<reco::corpus::AugmentationStore>(path);
  }

  reco::sparse::Bm25Params bm25() const {
    reco::sparse::Bm25Params p;
    p.k1 = flags.k1 ? *flags.k1 : file.get_double("bm25.k1", p.k1);
    p.b = flags.b ? *flags.b : file.get_double("bm25.b", p.b);
    return p;
  }

  reco::sparse::TokenizerOptions tokenizer() const {
    reco::sparse::TokenizerOptions t;
    t.split_identifiers = !flags.no_ident_split && file.get_or("tokenizer.split_identifiers", "true") != "false";
    return t;
  }

  std::unique_ptr<reco::dense::EmbeddingService> embedder() const {
    const auto url = value(flags.embed_url, "embed.base_url");
    if (url.empty()) return nullptr;
    reco::dense::HttpEmbeddingConfig cfg;
    cfg.base_url = url;
    cfg.batch_size = static_cast<std::size_t>(file.get_int("embed.batch_size", 64));
    cfg.timeout_seconds = static_cast<int>(file.get_int("embed.timeout_seconds", 120));
    return std::make_unique<reco::dense::HttpEmbeddingService>(cfg);
  }
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw reco::ConfigError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void append_line(const std::string& path, const std::string& line) {
  if (path.empty()) return;
  std::ofstream out(path, std::ios::app);
  if (!out) throw reco::StorageError("cannot write " + path);
  out << line << '\n';
}

// Codes of a dataset directory's test split, or every regular file in `dir`.
std::vector<std::string> idf_documents(const fs::path& dir, reco::Language lang) {
  if (fs::exists(dir / "test.jsonl")) {
    std::vector<std::string> codes;
    for (auto& r : reco::corpus::load_pairs(dir / "test.jsonl", lang)) codes.push_back(std::move(r.code));
    return codes;
  }
  if (!fs::is_directory(dir)) throw reco::ConfigError("idf corpus " + dir.string() + " is not a directory");
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file()) files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<std::string> docs;
  for (const auto& f : files) docs.push_back(read_file(f));
  return docs;
}

reco::style::IdfTable test_split_idf(const reco::corpus::Dataset& ds) {
  std::vector<std::string> codes;
  for (const auto& r : ds.test) codes.push_back(r.code);
  return reco::style::idf_from_code(codes, ds.language);
}

struct PipelineFlags {
  std::string framework = "baseline";
  std::string retriever = "sparse";
  int n = -1;
  std::string model;
  bool llm_only = false;
  std::string out;
  bool ranks = false;
};

reco::eval::PipelineConfig pipeline(const Settings& s, const PipelineFlags& f) {
  reco::eval::PipelineConfig cfg;
  cfg.framework = reco::eval::parse_framework(f.framework);
  cfg.retriever = reco::eval::parse_retriever(f.retriever);
  cfg.model = s.value(f.model, "llm.model");
  if (f.n >= 0) {
    cfg.n_gen = f.n;
  } else {
    cfg.n_gen = cfg.framework == reco::eval::Framework::kBaseline
                    ? 0
                    : static_cast<int>(s.file.get_int("eval.n_gen", 1));
  }
  if (cfg.framework == reco::eval::Framework::kBaseline) cfg.model.clear();
  cfg.llm_only = f.llm_only;
  cfg.bm25 = s.bm25();
  cfg.tokenizer = s.tokenizer();
  return cfg;
}

void add_pipeline_flags(CLI::App* cmd, PipelineFlags& f) {
  cmd->add_option("--framework", f.framework, "baseline | gar | reco")
      ->check(CLI::IsMember({"baseline", "gar", "reco"}));
  cmd->add_option("--retriever", f.retriever, "sparse | dense")->check(CLI::IsMember({"sparse", "dense"}));
  cmd->add_option("--n", f.n, "generations per item (n_gen)");
  cmd->add_option("--model", f.model, "augmentation model tag");
  cmd->add_option("--out", f.out, "append JSON lines to this file");
}

// -- verbs --------------------------------------------------------------------

int cmd_ingest(const Settings& s, const std::string& out_dir, std::optional<std::size_t> sample,
               std::uint64_t seed) {
  auto ds = s.dataset();
  std::optional<std::uint64_t> used_seed;
  if (sample && *sample < ds.test.size()) {
    ds.test = reco::corpus::sample_subset(ds.test, *sample, seed);
    used_seed = seed;
  }
  const auto stats = reco::corpus::dataset_stats(ds);
  json j{{"dataset", ds.name},
         {"language", reco::to_string(ds.language)},
         {"train", stats.train.count},
         {"test", stats.test.count},
         {"train_query_tokens", stats.train.mean_query_tokens},
         {"train_code_tokens", stats.train.mean_code_tokens},
         {"test_query_tokens", stats.test.mean_query_tokens},
         {"test_code_tokens", stats.test.mean_code_tokens}};
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    reco::corpus::save_pairs(fs::path(out_dir) / "train.jsonl", ds.train);
    reco::corpus::save_pairs(fs::path(out_dir) / "test.jsonl", ds.test);
    reco::corpus::Manifest m{ds.name, ds.language, used_seed, "train.jsonl", "test.jsonl"};
    m.save(fs::path(out_dir) / "manifest.txt");
    j["out"] = out_dir;
  }
  if (used_seed) j["seed"] = *used_seed;
  std::cout << j.dump() << '\n';
  return 0;
}

int cmd_augment(const Settings& s, const std::string& what, int n, const std::string& model_flag,
                const std::string& mock, std::uint64_t seed) {
  const auto ds = s.dataset();
  auto file = s.file;
  if (!model_flag.empty()) file.set("llm.model", model_flag);
  if (!mock.empty() && !file.contains("llm.model")) file.set("llm.model", "mock-" + mock);
  const auto endpoint = reco::augment::LlmEndpoint::from_config(file);
  auto store = s.store(true);
  std::unique_ptr<reco::corpus::ResponseCache> cache;
  const auto cache_path = s.value(s.flags.cache, "cache.path");
  if (!cache_path.empty()) cache = std::make_unique<reco::corpus::ResponseCache>(cache_path);

  std::unique_ptr<reco::augment::LlmClient> client;
  if (mock == "echo") {
    client = std::make_unique<reco::augment::MockLlm>(reco::augment::MockLlm::Personality::kEcho);
  } else if (mock == "oracle") {
    std::vector<reco::corpus::PairRecord> all = ds.train;
    all.insert(all.end(), ds.test.begin(), ds.test.end());
    client = std::make_unique<reco::augment::MockLlm>(reco::augment::MockLlm::Personality::kOracle, all);
  } else if (mock.empty()) {
    if (endpoint.base_url.empty()) throw reco::ConfigError("llm.base_url is not set");
    client = std::make_unique<reco::augment::HttpLlmClient>(endpoint);
  } else {
    throw reco::ConfigError("unknown mock '" + mock + "' (expected echo or oracle)");
  }

  reco::augment::Augmentor augmentor(*client, endpoint, ds.train, ds.language, cache.get(), store.get());
  const auto kind = what == "gen" ? reco::augment::JobKind::kGenerate : reco::augment::JobKind::kRewrite;
  const auto report = reco::augment::run_augmentation(augmentor, ds.test, kind, n, seed,
                                                      endpoint.concurrency, store.get(), endpoint.model);
  std::cout << json{{"job", what},
                    {"model", endpoint.model},
                    {"n", n},
                    {"records", report.records},
                    {"endpoint_calls", report.endpoint_calls},
                    {"cache_hits", report.cache_hits},
                    {"truncated", report.truncated}}
                   .dump()
            << '\n';
  return 0;
}

int cmd_index(const Settings& s, const std::string& mode, const PipelineFlags& f, const std::string& out) {
  if (out.empty()) throw reco::ConfigError("index needs --out");
  const auto ds = s.dataset();
  auto cfg = pipeline(s, f);
  cfg.retriever = reco::eval::parse_retriever(mode);
  cfg.validate();
  // GAR leaves the codebase untouched, so its index is the baseline one.
  if (cfg.framework == reco::eval::Framework::kGar) {
    cfg.framework = reco::eval::Framework::kBaseline;
    cfg.n_gen = 0;
  }
  std::unique_ptr<reco::corpus::AugmentationStore> store;
  std::vector<std::vector<std::string>> rewrites(ds.test.size());
  if (cfg.framework == reco::eval::Framework::kReco) {
    store = s.store(true);
    std::vector<std::string> missing;
    for (std::size_t i = 0; i < ds.test.size(); ++i) {
      auto t = store->texts(ds.test[i].id, reco::corpus::AugmentationKind::kRewrite, cfg.model, cfg.n_gen);
      if (t) {
        rewrites[i] = std::move(*t);
      } else {
        missing.push_back(ds.test[i].id);
      }
    }
    if (!missing.empty()) {
      throw reco::MissingAugmentationError(std::to_string(missing.size()) + " record(s) lack " +
                                               std::to_string(cfg.n_gen) + " rewrites",
                                           missing);
    }
  }
  std::vector<std::string> ids;
  for (const auto& r : ds.test) ids.push_back(r.id);
  if (cfg.retriever == reco::eval::Retriever::kSparse) {
    std::vector<reco::sparse::AugmentedText> docs;
    for (std::size_t i = 0; i < ds.test.size(); ++i) {
      docs.push_back(reco::sparse::build_augmented_code(ds.test[i].code, rewrites[i], ds.test[i].id));
    }
    reco::sparse::index_corpus(docs, cfg.bm25, cfg.tokenizer).save(out);
  } else {
    auto service = s.embedder();
    if (!service) throw reco::ConfigError("dense indexing needs --embed-url or embed.base_url");
    std::vector<reco::dense::EmbeddingVector> vectors;
    for (std::size_t i = 0; i < ds.test.size(); ++i) {
      std::vector<std::string> texts{ds.test[i].code};
      texts.insert(texts.end(), rewrites[i].begin(), rewrites[i].end());
      auto v = reco::dense::embed(texts, *service);
      vectors.push_back(v.size() == 1 ? v[0]
                                      : reco::dense::augment_representation(
                                            v[0], std::span(v).subspan(1)));
    }
    reco::dense::DenseIndex(ids, vectors).save(out);
  }
  std::cout << json{{"index", out}, {"mode", mode}, {"docs", ids.size()}}.dump() << '\n';
  return 0;
}

int cmd_search(const Settings& s, const std::string& mode, const std::string& index_path,
               const std::string& query) {
  if (index_path.empty()) throw reco::ConfigError("search needs --index");
  std::vector<reco::sparse::ScoredDoc> hits;
  std::vector<std::string> ids;
  if (mode == "sparse") {
    const auto index = reco::sparse::SparseIndex::load(index_path);
    hits = reco::sparse::sparse_search(index, reco::sparse::AugmentedText{"", query, 0}, s.flags.topk);
    ids = index.doc_ids();
  } else {
    auto service = s.embedder();
    if (!service) throw reco::ConfigError("dense search needs --embed-url or embed.base_url");
    const auto index = reco::dense::DenseIndex::load(index_path);
    const std::vector<std::string> texts{query};
    hits = reco::dense::dense_search(index, reco::dense::embed(texts, *service).front(), s.flags.topk);
    ids = index.doc_ids();
  }
  for (std::size_t r = 0; r < hits.size(); ++r) {
    std::cout << json{{"rank", r + 1}, {"id", ids[hits[r].doc]}, {"score", hits[r].score}}.dump() << '\n';
  }
  return 0;
}

int cmd_eval(const Settings& s, const PipelineFlags& f) {
  const auto ds = s.dataset();
  const auto cfg = pipeline(s, f);
  const auto store = s.store(cfg.framework != reco::eval::Framework::kBaseline);
  const auto service = s.embedder();
  reco::eval::EvalContext ctx{store.get(), service.get()};
  const auto result = cfg.llm_only ? reco::eval::llm_only_eval(ds, cfg, ctx) : reco::eval::run_eval(ds, cfg, ctx);
  append_line(f.out, reco::eval::to_json(result, f.ranks));
  std::cout << reco::eval::format_table(std::span(&result, 1));
  return 0;
}

int cmd_sweep(const Settings& s, const PipelineFlags& f, int max_n) {
  const auto ds = s.dataset();
  auto cfg = pipeline(s, f);
  cfg.n_gen = std::max(cfg.n_gen, 1);
  const auto store = s.store(true);
  const auto service = s.embedder();
  const auto results = reco::eval::gen_count_sweep(ds, cfg, max_n, {store.get(), service.get()});
  for (const auto& r : results) append_line(f.out, reco::eval::to_json(r));
  std::cout << reco::eval::format_table(results);
  return 0;
}

int cmd_grid(const Settings& s, const PipelineFlags& f, const std::vector<std::string>& models,
             const std::vector<int>& ns) {
  const auto ds = s.dataset();
  auto cfg = pipeline(s, f);
  const auto store = s.store(true);
  const auto service = s.embedder();
  const auto report = reco::eval::run_grid(ds, cfg, models, ns, {store.get(), service.get()});
  for (const auto& r : report.cells) append_line(f.out, reco::eval::to_json(r));
  std::cout << reco::eval::format_table(report.cells);
  const auto& best = report.cells[report.best];
  std::cout << "best cell: model " << best.config.model << ", n=" << best.config.n_gen << ", MRR "
            << 100.0 * best.mrr << "%\n";
  return 0;
}

int cmd_select_best(const Settings& s, PipelineFlags f, const std::string& metric, std::uint64_t seed) {
  const auto ds = s.dataset();
  f.framework = "gar";
  auto cfg = pipeline(s, f);
  const auto store = s.store(true);
  const auto service = s.embedder();
  const auto cmp = reco::eval::compare_selection(ds, cfg, reco::style::parse_metric(metric), test_split_idf(ds),
                                                 seed, {store.get(), service.get()});
  json j{{"dataset", ds.name},      {"model", cfg.model},        {"metric", metric},
         {"candidates", cfg.n_gen}, {"mrr_best", cmp.best.mrr}, {"mrr_random", cmp.random.mrr},
         {"seed", seed}};
  append_line(f.out, j.dump());
  std::cout << j.dump() << '\n';
  return 0;
}

int cmd_delta(const std::vector<std::string>& inputs) {
  if (inputs.empty()) throw reco::ConfigError("delta needs --in <files>");
  std::vector<reco::eval::DeltaPoint> points;
  for (const auto& path : inputs) {
    std::istringstream lines(read_file(path));
    std::string line;
    std::size_t no = 0;
    while (std::getline(lines, line)) {
      ++no;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      try {
        points.push_back(reco::eval::parse_delta_point(line));
      } catch (const reco::DataError& e) {
        throw reco::DataError(path + ":" + std::to_string(no) + ": " + e.what(), no);
      }
    }
  }
  std::cout << reco::eval::to_json(reco::eval::delta_analysis(points)) << '\n';
  return 0;
}

int cmd_delta_point(const Settings& s, PipelineFlags f, const std::string& metric) {
  const auto ds = s.dataset();
  f.framework = "reco";
  auto cfg = pipeline(s, f);
  const auto store = s.store(true);
  const auto service = s.embedder();
  const auto p = reco::eval::make_delta_point(ds, cfg, reco::style::parse_metric(metric), test_split_idf(ds),
                                              {store.get(), service.get()});
  const json j{{"dataset", p.dataset}, {"model", p.model}, {"metric", metric},
               {"delta_metric", p.delta_metric}, {"delta_mrr", p.delta_mrr}};
  append_line(f.out, j.dump());
  std::cout << j.dump() << '\n';
  return 0;
}

int cmd_metric(const std::string& metric, const std::string& a, const std::string& b,
               const std::string& language, const std::string& idf_dir, const std::string& ted_labels) {
  const auto lang = reco::parse_language(language);
  const auto kind = reco::style::parse_metric(metric);
  const auto code_a = read_file(a);
  const auto code_b = read_file(b);
  reco::style::IdfTable idf;
  if (!idf_dir.empty()) {
    const auto docs = idf_documents(idf_dir, lang);
    idf = reco::style::idf_from_code(docs, lang);
  }
  json j{{"metric", metric}, {"language", language}};
  if (kind == reco::style::MetricKind::kCssim) {
    const auto labels = ted_labels == "full" ? reco::style::TedLabels::kFull : reco::style::TedLabels::kKind;
    const auto r = reco::style::cssim(code_a, code_b, lang, idf, labels);
    j["value"] = r.cssim;
    j["dis_var"] = r.dis_var;
    j["dis_api"] = r.dis_api;
    j["ted"] = r.ted;
    j["csdis"] = r.csdis;
    j["fallback_a"] = r.fallback_a;
    j["fallback_b"] = r.fallback_b;
  } else if (kind == reco::style::MetricKind::kCodeBleu) {
    const auto r = reco::style::codebleu_breakdown(code_a, code_b, lang);
    j["value"] = r.score;
    auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
    j["ngram"] = opt(r.ngram);
    j["weighted_ngram"] = opt(r.weighted_ngram);
    j["syntax"] = opt(r.syntax);
    j["dataflow"] = opt(r.dataflow);
  } else {
    j["value"] = reco::style::score_metric(kind, code_a, code_b, lang).value;
  }
  std::cout << j.dump() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  spdlog::set_pattern("%^%l%$: %v");
  spdlog::cfg::load_env_levels();
  CLI::App app{"Code search with generation-augmented queries and style-normalized codebases"};
  app.require_subcommand(1);
  Settings s;
  auto& c = s.flags;
  app.add_option("--config", c.config_path, "key=value configuration file");
  app.add_option("--dataset", c.dataset, "dataset directory or manifest");
  app.add_option("--name", c.name, "dataset name");
  app.add_option("--language", c.language, "python | java");
  app.add_option("--store", c.store, "augmentation store (JSON lines)");
  app.add_option("--cache", c.cache, "LLM response cache (JSON lines)");
  app.add_option("--embed-url", c.embed_url, "embedding service base URL");
  app.add_option("--k1", c.k1, "BM25 k1");
  app.add_option("--b", c.b, "BM25 b");
  app.add_option("--topk", c.topk, "results to print");
  app.add_flag("--no-ident-split", c.no_ident_split, "do not split snake_case / camelCase terms");

  std::string out_dir;
  std::optional<std::size_t> sample;
  std::uint64_t seed = 0;
  auto* ingest = app.add_subcommand("ingest", "validate a dataset, print statistics, optionally re-materialize");
  ingest->add_option("--out", out_dir, "write train.jsonl, test.jsonl and manifest.txt here");
  ingest->add_option("--sample", sample, "seeded subsample of the test split");
  ingest->add_option("--seed", seed, "sampling seed");

  std::string augment_what;
  int augment_n = 1;
  std::string augment_model;
  std::string mock;
  auto* augment = app.add_subcommand("augment", "generate exemplars (gen) or rewrite codes (rewrite)");
  augment->add_option("what", augment_what, "gen | rewrite")->required()->check(CLI::IsMember({"gen", "rewrite"}));
  augment->add_option("--n", augment_n, "generations per item");
  augment->add_option("--model", augment_model, "model tag (overrides llm.model)");
  augment->add_option("--mock", mock, "offline endpoint: echo | oracle");
  augment->add_option("--seed", seed, "shot-sampling seed");

  PipelineFlags pf;
  std::string mode = "sparse";
  std::string index_out;
  auto* index = app.add_subcommand("index", "build and save a retrieval index of the test codebase");
  index->add_option("--mode", mode, "sparse | dense")->check(CLI::IsMember({"sparse", "dense"}));
  index->add_option("--framework", pf.framework, "baseline | reco (reco appends rewrites)");
  index->add_option("--n", pf.n, "rewrites per code");
  index->add_option("--model", pf.model, "augmentation model tag");
  index->add_option("--out", index_out, "index file");

  std::string index_path;
  std::string query;
  auto* search = app.add_subcommand("search", "query a saved index");
  search->add_option("--mode", mode, "sparse | dense")->check(CLI::IsMember({"sparse", "dense"}));
  search->add_option("--index", index_path, "index file")->required();
  search->add_option("--query", query, "query text")->required();

  auto* eval = app.add_subcommand("eval", "MRR of one pipeline configuration");
  add_pipeline_flags(eval, pf);
  eval->add_flag("--llm-only", pf.llm_only, "exemplars against rewrites, originals excluded");
  eval->add_flag("--ranks", pf.ranks, "include per-query ranks in --out");

  int max_n = 1;
  auto* sweep = app.add_subcommand("sweep", "MRR for n = 1..max-n stored generations");
  add_pipeline_flags(sweep, pf);
  sweep->add_option("--max-n", max_n, "largest generation count")->required();

  std::vector<std::string> models;
  std::vector<int> ns;
  auto* grid = app.add_subcommand("grid", "MRR over every model x n combination");
  add_pipeline_flags(grid, pf);
  grid->add_option("--models", models, "model tags")->required();
  grid->add_option("--ns", ns, "generation counts")->required();

  std::string metric_name = "cssim";
  auto* select = app.add_subcommand("select-best", "best-by-metric versus random exemplar selection");
  add_pipeline_flags(select, pf);
  select->add_option("--metric", metric_name, "cssim | bleu | rouge_l | codebleu");
  select->add_option("--seed", seed, "seed of the random selection");

  std::vector<std::string> delta_inputs;
  auto* delta = app.add_subcommand("delta", "quadrant counts and least-squares fit of delta points");
  delta->add_option("--in", delta_inputs, "JSON-lines files of delta points")->required();

  auto* delta_point = app.add_subcommand("delta-point", "metric gap and ReCo-minus-GAR MRR for one model");
  add_pipeline_flags(delta_point, pf);
  delta_point->add_option("--metric", metric_name, "cssim | bleu | rouge_l | codebleu");

  std::string file_a, file_b, idf_dir, ted_labels = "kind";
  auto* metric = app.add_subcommand("metric", "compare two snippets");
  metric->add_option("name", metric_name, "cssim | bleu | rouge_l | codebleu")->required();
  metric->add_option("--a", file_a, "first snippet file")->required();
  metric->add_option("--b", file_b, "second snippet file (reference)")->required();
  metric->add_option("--language", c.language, "python | java")->required();
  metric->add_option("--idf-corpus", idf_dir, "directory of snippets or a dataset directory");
  metric->add_option("--ted-labels", ted_labels, "kind | full")->check(CLI::IsMember({"kind", "full"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(reco::ExitCode::kConfigError);
  }

  try {
    if (!c.config_path.empty()) s.file = reco::KeyValueFile::load(c.config_path);
    if (*ingest) return cmd_ingest(s, out_dir, sample, seed);
    if (*augment) return cmd_augment(s, augment_what, augment_n, augment_model, mock, seed);
    if (*index) return cmd_index(s, mode, pf, index_out);
    if (*search) return cmd_search(s, mode, index_path, query);
    if (*eval) return cmd_eval(s, pf);
    if (*sweep) return cmd_sweep(s, pf, max_n);
    if (*grid) return cmd_grid(s, pf, models, ns);
    if (*select) return cmd_select_best(s, pf, metric_name, seed);
    if (*delta) return cmd_delta(delta_inputs);
    if (*delta_point) return cmd_delta_point(s, pf, metric_name);
    if (*metric) return cmd_metric(metric_name, file_a, file_b, c.language, idf_dir, ted_labels);
  } catch (const reco::Error& e) {
    spdlog::error("{}", e.what());
    return static_cast<int>(e.exit_code());
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return static_cast<int>(reco::ExitCode::kFailure);
  }
  return 0;
}
