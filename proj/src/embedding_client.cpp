#include <httplib.h>
#include <json.hpp>

#include "http_util.hpp"
#include "reco/dense.hpp"
#include "reco/error.hpp"

namespace reco::dense {

HttpEmbeddingService::HttpEmbeddingService(HttpEmbeddingConfig config)
    : config_(std::move(config)) {
  if (config_.base_url.empty()) throw ConfigError("embedding service base URL is empty");
  if (config_.batch_size == 0) throw ConfigError("embedding batch size must be > 0");
}

std::vector<std::vector<double>> HttpEmbeddingService::embed_batch(
    std::span<const std::string> texts) {
  const auto [host, prefix] = detail::split_base_url(config_.base_url);
  httplib::Client client(host);
  client.set_connection_timeout(config_.timeout_seconds);
  client.set_read_timeout(config_.timeout_seconds);

  std::vector<std::vector<double>> out;
  out.reserve(texts.size());
  for (std::size_t start = 0; start < texts.size(); start += config_.batch_size) {
    const auto chunk = texts.subspan(start, std::min(config_.batch_size, texts.size() - start));
    nlohmann::json body = {{"texts", chunk}};
    auto res = client.Post(prefix + "/embed", body.dump(), "application/json");
    if (!res) {
      throw EndpointError("embedding request failed: " + httplib::to_string(res.error()), 0, true);
    }
    if (res->status != 200) {
      throw EndpointError("embedding service answered HTTP " + std::to_string(res->status),
                          res->status, res->status >= 500);
    }
    try {
      auto obj = nlohmann::json::parse(res->body);
      auto embeddings = obj.at("embeddings").get<std::vector<std::vector<double>>>();
      const auto dim = obj.at("dim").get<std::size_t>();
      if (embeddings.size() != chunk.size()) {
        throw EndpointError("embedding service returned " + std::to_string(embeddings.size()) +
                            " vectors for " + std::to_string(chunk.size()) + " texts");
      }
      for (auto& e : embeddings) {
        if (e.size() != dim) throw EndpointError("embedding dimension disagrees with 'dim'");
        out.push_back(std::move(e));
      }
    } catch (const nlohmann::json::exception& e) {
      throw EndpointError(std::string("malformed embedding response: ") + e.what());
    }
  }
  return out;
}

}  // namespace reco::dense
