#include <cstdlib>
#include <thread>

#include <httplib.h>
#include <json.hpp>
#include <spdlog/spdlog.h>

#include "http_util.hpp"
#include "reco/augmentor.hpp"
#include "reco/error.hpp"

namespace reco::augment {

LlmEndpoint LlmEndpoint::from_config(const KeyValueFile& config) {
  LlmEndpoint e;
  e.base_url = config.get_or("llm.base_url", "");
  e.model = config.get_or("llm.model", "");
  e.temperature = config.get_double("llm.temperature", 1.0);
  e.max_tokens_gen = static_cast<int>(config.get_int("llm.max_tokens.gen", 256));
  e.max_tokens_sum = static_cast<int>(config.get_int("llm.max_tokens.sum", 128));
  e.api_key_env = config.get_or("llm.api_key_env", "OPENAI_API_KEY");
  e.concurrency = static_cast<int>(config.get_int("llm.concurrency", 1));
  e.k_shots = static_cast<std::size_t>(config.get_int("llm.k_shots", kDefaultShots));
  e.max_retries = static_cast<int>(config.get_int("llm.max_retries", 3));
  e.backoff = std::chrono::milliseconds(config.get_int("llm.backoff_ms", 500));
  e.min_request_interval =
      std::chrono::milliseconds(config.get_int("llm.min_request_interval_ms", 0));
  e.validate();
  return e;
}

void LlmEndpoint::validate() const {
  if (temperature < 0.0) throw ConfigError("llm.temperature must be >= 0");
  if (max_tokens_gen <= 0 || max_tokens_sum <= 0) {
    throw ConfigError("llm.max_tokens.* must be > 0");
  }
  if (concurrency < 1) throw ConfigError("llm.concurrency must be >= 1");
  if (max_retries < 0) throw ConfigError("llm.max_retries must be >= 0");
  if (model.empty()) throw ConfigError("llm.model is required");
}

// ---------------------------------------------------------------------------

HttpLlmClient::HttpLlmClient(LlmEndpoint endpoint) : endpoint_(std::move(endpoint)) {
  endpoint_.validate();
  if (endpoint_.base_url.empty()) throw ConfigError("llm.base_url is required");
  if (!endpoint_.api_key_env.empty()) {
    if (const char* key = std::getenv(endpoint_.api_key_env.c_str())) api_key_ = key;
  }
}

std::string HttpLlmClient::request_body(const ChatRequest& request) {
  nlohmann::json body = {
      {"model", request.model},
      {"messages", nlohmann::json::array({{{"role", "user"}, {"content", request.prompt}}})},
      {"temperature", request.temperature},
      {"max_tokens", request.max_tokens},
  };
  return body.dump();
}

Completion HttpLlmClient::parse_response(std::string_view body) {
  try {
    auto obj = nlohmann::json::parse(body);
    const auto& choice = obj.at("choices").at(0);
    Completion c;
    c.text = choice.at("message").at("content").get<std::string>();
    c.truncated = choice.value("finish_reason", "") == "length";
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw EndpointError(std::string("malformed completion response: ") + e.what());
  }
}

Completion HttpLlmClient::attempt(const ChatRequest& request) {
  if (endpoint_.min_request_interval.count() > 0) {
    std::chrono::steady_clock::time_point slot;
    {
      std::lock_guard lock(pace_mutex_);
      slot = std::max(next_slot_, std::chrono::steady_clock::now());
      next_slot_ = slot + endpoint_.min_request_interval;
    }
    std::this_thread::sleep_until(slot);
  }
  const auto [host, prefix] = detail::split_base_url(endpoint_.base_url);
  httplib::Client client(host);
  client.set_connection_timeout(30);
  client.set_read_timeout(300);
  httplib::Headers headers;
  if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);
  auto res = client.Post(prefix + "/chat/completions", headers, request_body(request),
                         "application/json");
  if (!res) {
    throw EndpointError("transport error: " + httplib::to_string(res.error()), 0, true);
  }
  const int status = res->status;
  if (status == 401 || status == 403) {
    throw EndpointError("authentication rejected (HTTP " + std::to_string(status) + ")", status,
                        false);
  }
  if (status == 429 || status >= 500) {
    throw EndpointError("HTTP " + std::to_string(status), status, true);
  }
  if (status != 200) throw EndpointError("HTTP " + std::to_string(status), status, false);
  return parse_response(res->body);
}

Completion HttpLlmClient::complete(const ChatRequest& request) {
  for (int attempt_no = 0;; ++attempt_no) {
    try {
      return attempt(request);
    } catch (const EndpointError& e) {
      if (!e.retryable() || attempt_no >= endpoint_.max_retries) throw;
      const auto delay = endpoint_.backoff * (1 << attempt_no);
      spdlog::warn("llm: {} (retry {}/{} in {} ms)", e.what(), attempt_no + 1,
                   endpoint_.max_retries, delay.count());
      std::this_thread::sleep_for(delay);
    }
  }
}

// ---------------------------------------------------------------------------

MockLlm::MockLlm(Personality personality, std::span<const corpus::PairRecord> pairs)
    : personality_(personality) {
  for (const auto& p : pairs) {
    code_by_query_.emplace(p.query, p.code);
    query_by_code_.emplace(p.code, p.query);
  }
}

Completion MockLlm::complete(const ChatRequest& request) {
  ++calls_;
  if (personality_ == Personality::kOracle) {
    const auto& table =
        request.kind == PromptKind::kGenerate ? code_by_query_ : query_by_code_;
    if (auto it = table.find(request.target); it != table.end()) return {it->second, false};
  }
  return {request.target, false};
}

}  // namespace reco::augment
