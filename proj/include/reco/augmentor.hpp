#pragma once

// Prompt construction and LLM-driven generation of exemplar codes, code
// summaries and rewritten codes.

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "reco/config.hpp"
#include "reco/corpus.hpp"

namespace reco::augment {

// One in-context example: a (query, code) pair from the training split.
struct Shot {
  std::string query;
  std::string code;

  friend bool operator==(const Shot&, const Shot&) = default;
};

enum class PromptKind { kGenerate, kSummarize };

struct PromptTemplate {
  PromptKind kind = PromptKind::kGenerate;
  Language language = Language::kPython;
  std::string instruction;
  std::vector<Shot> shots;
  std::string target;  // description to implement, or code to summarize

  // Instruction, then one block per shot, then the target with an empty answer slot.
  std::string render() const;
};

inline constexpr std::size_t kDefaultShots = 4;

// `k` distinct training pairs in the order they were drawn. Advances `rng`.
std::vector<Shot> sample_shots(std::span<const corpus::PairRecord> train, std::size_t k,
                               std::mt19937_64& rng);

PromptTemplate build_gen_prompt(std::string_view query, std::vector<Shot> shots,
                                Language language);
PromptTemplate build_sum_prompt(std::string_view code, std::vector<Shot> shots,
                                Language language);

// Removes markdown fences and surrounding prose/blank lines; interior lines untouched.
std::string trim_completion(std::string_view completion);

// ---------------------------------------------------------------------------
// LLM endpoint

struct LlmEndpoint {
  std::string base_url;
  std::string model;
  double temperature = 1.0;
  int max_tokens_gen = 256;
  int max_tokens_sum = 128;
  std::string api_key_env = "OPENAI_API_KEY";
  int concurrency = 1;
  std::size_t k_shots = kDefaultShots;
  int max_retries = 3;
  std::chrono::milliseconds backoff{500};
  std::chrono::milliseconds min_request_interval{0};

  // Reads llm.* keys from a key=value config. Throws ConfigError on invalid values.
  static LlmEndpoint from_config(const KeyValueFile& config);
  void validate() const;
};

struct ChatRequest {
  std::string model;
  std::string prompt;  // sent as a single user message
  double temperature = 1.0;
  int max_tokens = 256;
  // Not sent over the wire; lets offline clients see what is being asked.
  PromptKind kind = PromptKind::kGenerate;
  std::string target;
};

struct Completion {
  std::string text;
  bool truncated = false;
};

class LlmClient {
 public:
  virtual ~LlmClient() = default;
  virtual Completion complete(const ChatRequest& request) = 0;
};

// POST <base>/chat/completions with an OpenAI-style body. Retries transport
// errors, HTTP 429 and 5xx with exponential backoff; 401/403 fail immediately.
class HttpLlmClient : public LlmClient {
 public:
  explicit HttpLlmClient(LlmEndpoint endpoint);
  Completion complete(const ChatRequest& request) override;

  static std::string request_body(const ChatRequest& request);
  static Completion parse_response(std::string_view body);

 private:
  Completion attempt(const ChatRequest& request);

  LlmEndpoint endpoint_;
  std::string api_key_;
  std::mutex pace_mutex_;
  std::chrono::steady_clock::time_point next_slot_{};
};

// Offline endpoint. `kEcho` answers with the prompt's target text; `kOracle`
// answers with the paired ground truth from the supplied records (the code of a
// description, or the description of a code), falling back to echo.
class MockLlm : public LlmClient {
 public:
  enum class Personality { kEcho, kOracle };

  explicit MockLlm(Personality personality, std::span<const corpus::PairRecord> pairs = {});
  Completion complete(const ChatRequest& request) override;

  std::size_t calls() const { return calls_.load(); }

 private:
  Personality personality_;
  std::map<std::string, std::string, std::less<>> code_by_query_;
  std::map<std::string, std::string, std::less<>> query_by_code_;
  std::atomic<std::size_t> calls_{0};
};

// ---------------------------------------------------------------------------
// Generation

struct GenerationBatch {
  std::string source_id;
  corpus::AugmentationKind kind = corpus::AugmentationKind::kExemplar;
  int n = 0;
  std::vector<std::string> outputs;
  std::vector<bool> truncated;
};

class Augmentor {
 public:
  // `cache` and `store` may be null. `train` supplies in-context shots and
  // must outlive the augmentor.
  Augmentor(LlmClient& client, LlmEndpoint endpoint, std::span<const corpus::PairRecord> train,
            Language language, corpus::ResponseCache* cache, corpus::AugmentationStore* store);

  GenerationBatch generate_exemplars(const std::string& source_id, std::string_view query, int n,
                                     std::mt19937_64& rng);
  std::string summarize_code(const std::string& source_id, std::string_view code,
                             std::mt19937_64& rng);
  // Summarize once, then generate `n` codes from the summary. Failures are
  // raised as StageError labelled "summarize" or "generate".
  GenerationBatch rewrite_code(const std::string& source_id, std::string_view code, int n,
                               std::mt19937_64& rng);

  std::size_t endpoint_calls() const { return endpoint_calls_.load(); }
  std::size_t cache_hits() const { return cache_hits_.load(); }

 private:
  Completion call(const PromptTemplate& prompt, int max_tokens, int sample_index);
  GenerationBatch generate_from(const std::string& source_id, std::string_view description,
                                int n, corpus::AugmentationKind kind, std::mt19937_64& rng);
  void persist(const GenerationBatch& batch);

  LlmClient& client_;
  LlmEndpoint endpoint_;
  std::span<const corpus::PairRecord> train_;
  Language language_;
  corpus::ResponseCache* cache_;
  corpus::AugmentationStore* store_;
  std::atomic<std::size_t> endpoint_calls_{0};
  std::atomic<std::size_t> cache_hits_{0};
};

enum class JobKind { kGenerate, kRewrite };

// Per-record generator seeded from (seed, source id); independent of scheduling.
std::mt19937_64 record_rng(std::uint64_t seed, std::string_view source_id, JobKind kind);

struct JobReport {
  std::size_t records = 0;
  std::size_t endpoint_calls = 0;
  std::size_t cache_hits = 0;
  std::size_t truncated = 0;
};

// Runs generation (exemplars from queries) or rewriting (from codes) over all
// records with `endpoint.concurrency` workers. Records whose n outputs are
// already stored are skipped.
JobReport run_augmentation(Augmentor& augmentor, std::span<const corpus::PairRecord> records,
                           JobKind kind, int n, std::uint64_t seed, int concurrency,
                           const corpus::AugmentationStore* existing, const std::string& model);

}  // namespace reco::augment
