#include "reco/augmentor.hpp"

#include <exception>
#include <thread>

#include <json.hpp>

#include "reco/error.hpp"

namespace reco::augment {

using corpus::AugmentationKind;
using corpus::AugmentationRecord;

Augmentor::Augmentor(LlmClient& client, LlmEndpoint endpoint,
                     std::span<const corpus::PairRecord> train, Language language,
                     corpus::ResponseCache* cache, corpus::AugmentationStore* store)
    : client_(client),
      endpoint_(std::move(endpoint)),
      train_(train),
      language_(language),
      cache_(cache),
      store_(store) {
  endpoint_.validate();
}

Completion Augmentor::call(const PromptTemplate& prompt, int max_tokens, int sample_index) {
  ChatRequest req;
  req.model = endpoint_.model;
  req.prompt = prompt.render();
  req.temperature = endpoint_.temperature;
  req.max_tokens = max_tokens;
  req.kind = prompt.kind;
  req.target = prompt.target;

  const auto key = corpus::make_cache_key(req.prompt, req.model, req.temperature, sample_index);
  if (cache_) {
    if (auto hit = cache_->lookup(key)) {
      ++cache_hits_;
      auto obj = nlohmann::json::parse(*hit);
      return {obj.at("text").get<std::string>(), obj.value("truncated", false)};
    }
  }
  ++endpoint_calls_;
  auto raw = client_.complete(req);
  Completion out{trim_completion(raw.text), raw.truncated};
  if (out.text.empty()) throw EndpointError("empty completion", 0, false);
  if (cache_) {
    cache_->store(key, nlohmann::json{{"text", out.text}, {"truncated", out.truncated}}.dump());
  }
  return out;
}

GenerationBatch Augmentor::generate_from(const std::string& source_id,
                                         std::string_view description, int n,
                                         AugmentationKind kind, std::mt19937_64& rng) {
  if (n < 1) throw ConfigError("number of generations must be >= 1");
  GenerationBatch batch;
  batch.source_id = source_id;
  batch.kind = kind;
  batch.n = n;
  for (int i = 0; i < n; ++i) {
    // Fresh in-context examples for every sample.
    auto prompt = build_gen_prompt(description, sample_shots(train_, endpoint_.k_shots, rng),
                                   language_);
    auto completion = call(prompt, endpoint_.max_tokens_gen, i);
    batch.outputs.push_back(std::move(completion.text));
    batch.truncated.push_back(completion.truncated);
  }
  return batch;
}

void Augmentor::persist(const GenerationBatch& batch) {
  if (!store_) return;
  for (int i = 0; i < batch.n; ++i) {
    store_->put(AugmentationRecord{batch.source_id, batch.kind, i, endpoint_.model,
                                   batch.outputs[static_cast<std::size_t>(i)],
                                   batch.truncated[static_cast<std::size_t>(i)]});
  }
}

GenerationBatch Augmentor::generate_exemplars(const std::string& source_id, std::string_view query,
                                              int n, std::mt19937_64& rng) {
  auto batch = generate_from(source_id, query, n, AugmentationKind::kExemplar, rng);
  persist(batch);
  return batch;
}

std::string Augmentor::summarize_code(const std::string& source_id, std::string_view code,
                                      std::mt19937_64& rng) {
  auto prompt =
      build_sum_prompt(code, sample_shots(train_, endpoint_.k_shots, rng), language_);
  auto completion = call(prompt, endpoint_.max_tokens_sum, 0);
  if (store_) {
    store_->put(AugmentationRecord{source_id, AugmentationKind::kSummary, 0, endpoint_.model,
                                   completion.text, completion.truncated});
  }
  return completion.text;
}

GenerationBatch Augmentor::rewrite_code(const std::string& source_id, std::string_view code,
                                        int n, std::mt19937_64& rng) {
  if (n < 1) throw ConfigError("number of rewrites must be >= 1");
  std::string summary;
  try {
    summary = summarize_code(source_id, code, rng);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError("summarize", e.what());
  }
  GenerationBatch batch;
  try {
    batch = generate_from(source_id, summary, n, AugmentationKind::kRewrite, rng);
  } catch (const std::exception& e) {
    throw StageError("generate", e.what());
  }
  persist(batch);
  return batch;
}

// ---------------------------------------------------------------------------

std::mt19937_64 record_rng(std::uint64_t seed, std::string_view source_id, JobKind kind) {
  // FNV-1a over the id keeps the stream independent of record order and scheduling.
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : source_id) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32),
                    static_cast<std::uint32_t>(kind)};
  return std::mt19937_64(seq);
}

JobReport run_augmentation(Augmentor& augmentor, std::span<const corpus::PairRecord> records,
                           JobKind kind, int n, std::uint64_t seed, int concurrency,
                           const corpus::AugmentationStore* existing, const std::string& model) {
  if (n < 1) throw ConfigError("--n must be >= 1");
  if (concurrency < 1) throw ConfigError("concurrency must be >= 1");
  const auto calls_before = augmentor.endpoint_calls();
  const auto hits_before = augmentor.cache_hits();
  const auto output_kind =
      kind == JobKind::kGenerate ? AugmentationKind::kExemplar : AugmentationKind::kRewrite;

  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::atomic<std::size_t> truncated{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto worker = [&] {
    while (!failed.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= records.size()) return;
      const auto& rec = records[i];
      if (existing && existing->texts(rec.id, output_kind, model, n)) {
        ++done;
        continue;
      }
      try {
        auto rng = record_rng(seed, rec.id, kind);
        auto batch = kind == JobKind::kGenerate
                         ? augmentor.generate_exemplars(rec.id, rec.query, n, rng)
                         : augmentor.rewrite_code(rec.id, rec.code, n, rng);
        for (bool t : batch.truncated) truncated += t ? 1 : 0;
        ++done;
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };

  {
    std::vector<std::jthread> pool;
    for (int t = 1; t < concurrency; ++t) pool.emplace_back(worker);
    worker();
  }
  if (error) std::rethrow_exception(error);

  JobReport report;
  report.records = done.load();
  report.endpoint_calls = augmentor.endpoint_calls() - calls_before;
  report.cache_hits = augmentor.cache_hits() - hits_before;
  report.truncated = truncated.load();
  return report;
}

}  // namespace reco::augment
