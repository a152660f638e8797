#pragma once

// In-process HTTP stand-ins for the chat-completions and embedding endpoints.

#include <atomic>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace httplib {
class Server;
}

namespace reco::testing {

class StubServer {
 public:
  virtual ~StubServer();
  std::string base_url() const { return "http://127.0.0.1:" + std::to_string(port_); }
  int port() const { return port_; }

 protected:
  StubServer();
  void start();
  httplib::Server& server() { return *server_; }

 private:
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  int port_ = 0;
};

// /chat/completions. Each request consumes the next status of `statuses`
// (the last one repeats); 200 answers with `reply`.
class ChatStub : public StubServer {
 public:
  explicit ChatStub(std::vector<int> statuses = {200}, std::string reply = "print(1)",
                    std::string finish_reason = "stop");

  std::size_t requests() const { return requests_.load(); }
  std::string last_body() const;
  std::string last_authorization() const;

 private:
  std::vector<int> statuses_;
  std::string reply_;
  std::string finish_reason_;
  std::atomic<std::size_t> requests_{0};
  mutable std::mutex mutex_;
  std::string last_body_;
  std::string last_auth_;
};

// /embed. Vectors come from `fn` (default: a deterministic, unnormalized
// function of the text with dimension 8).
class EmbedStub : public StubServer {
 public:
  using Fn = std::function<std::vector<double>(const std::string&)>;
  explicit EmbedStub(Fn fn = {});

  std::size_t requests() const { return requests_.load(); }
  std::size_t max_batch() const { return max_batch_.load(); }

  static std::vector<double> default_vector(const std::string& text);

 private:
  Fn fn_;
  std::atomic<std::size_t> requests_{0};
  std::atomic<std::size_t> max_batch_{0};
};

}  // namespace reco::testing
