#include "stub_servers.hpp"

#include <httplib.h>
#include <json.hpp>

namespace reco::testing {

StubServer::StubServer() : server_(std::make_unique<httplib::Server>()) {}

StubServer::~StubServer() {
  server_->stop();
  if (thread_.joinable()) thread_.join();
}

void StubServer::start() {
  port_ = server_->bind_to_any_port("127.0.0.1");
  if (port_ <= 0) throw std::runtime_error("stub server could not bind");
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
}

ChatStub::ChatStub(std::vector<int> statuses, std::string reply, std::string finish_reason)
    : statuses_(std::move(statuses)),
      reply_(std::move(reply)),
      finish_reason_(std::move(finish_reason)) {
  server().Post(".*/chat/completions",
                [this](const httplib::Request& req, httplib::Response& res) {
                  const auto n = requests_++;
                  {
                    std::lock_guard lock(mutex_);
                    last_body_ = req.body;
                    last_auth_ = req.get_header_value("Authorization");
                  }
                  const int status = statuses_.empty()
                                         ? 200
                                         : statuses_[std::min(n, statuses_.size() - 1)];
                  res.status = status;
                  if (status != 200) {
                    res.set_content(R"({"error":"stub"})", "application/json");
                    return;
                  }
                  nlohmann::json body = {
                      {"choices",
                       {{{"message", {{"role", "assistant"}, {"content", reply_}}},
                         {"finish_reason", finish_reason_}}}}};
                  res.set_content(body.dump(), "application/json");
                });
  start();
}

std::string ChatStub::last_body() const {
  std::lock_guard lock(mutex_);
  return last_body_;
}

std::string ChatStub::last_authorization() const {
  std::lock_guard lock(mutex_);
  return last_auth_;
}

std::vector<double> EmbedStub::default_vector(const std::string& text) {
  std::vector<double> v(8, 0.0);
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h = (h ^ c) * 1099511628211ULL;
    v[h % 8] += 1.0 + static_cast<double>(c % 7);
  }
  v[0] += 0.5;
  return v;
}

EmbedStub::EmbedStub(Fn fn) : fn_(fn ? std::move(fn) : Fn(&EmbedStub::default_vector)) {
  server().Post(".*/embed", [this](const httplib::Request& req, httplib::Response& res) {
    ++requests_;
    try {
      const auto texts = nlohmann::json::parse(req.body).at("texts").get<std::vector<std::string>>();
      std::size_t prev = max_batch_.load();
      while (texts.size() > prev && !max_batch_.compare_exchange_weak(prev, texts.size())) {
      }
      nlohmann::json emb = nlohmann::json::array();
      std::size_t dim = 0;
      for (const auto& t : texts) {
        auto v = fn_(t);
        dim = v.size();
        emb.push_back(v);
      }
      res.set_content(nlohmann::json{{"embeddings", emb}, {"dim", dim}}.dump(),
                      "application/json");
    } catch (const std::exception& e) {
      res.status = 400;
      res.set_content(e.what(), "text/plain");
    }
  });
  start();
}

}  // namespace reco::testing
