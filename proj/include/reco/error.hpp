#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace reco {

// Process exit codes used by the command-line tool.
enum class ExitCode : int {
  kSuccess = 0,
  kFailure = 1,
  kConfigError = 2,
  kMissingAugmentation = 3,
  kEndpointFailure = 4,
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual ExitCode exit_code() const noexcept { return ExitCode::kFailure; }
};

class ConfigError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::kConfigError; }
};

// Malformed dataset or store content. Carries the 1-based line number when known.
class DataError : public Error {
 public:
  explicit DataError(const std::string& what, std::size_t line = 0)
      : Error(what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class StorageError : public Error {
 public:
  using Error::Error;
};

class MissingAugmentationError : public Error {
 public:
  MissingAugmentationError(const std::string& what, std::vector<std::string> ids)
      : Error(what), ids_(std::move(ids)) {}
  const std::vector<std::string>& ids() const noexcept { return ids_; }
  ExitCode exit_code() const noexcept override {
    return ExitCode::kMissingAugmentation;
  }

 private:
  std::vector<std::string> ids_;
};

class EndpointError : public Error {
 public:
  EndpointError(const std::string& what, int status = 0, bool retryable = false)
      : Error(what), status_(status), retryable_(retryable) {}
  int status() const noexcept { return status_; }
  bool retryable() const noexcept { return retryable_; }
  ExitCode exit_code() const noexcept override { return ExitCode::kEndpointFailure; }

 private:
  int status_;
  bool retryable_;
};

// Failure inside one stage of a multi-stage generation ("summarize" or "generate").
class StageError : public EndpointError {
 public:
  StageError(std::string stage, const std::string& what)
      : EndpointError(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

class SizeLimitError : public Error {
 public:
  using Error::Error;
};

}  // namespace reco
