#pragma once

#include <stdexcept>
#include <string>

namespace benefit {

// Bad or missing configuration (config file, model files, missing factor model).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or out-of-schema input (event payloads, traces, policies).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An event was applied at a tick other than the engine's current tick.
class SequenceError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Gradient descent produced a non-finite loss.
class FitError : public std::runtime_error {
 public:
  FitError(const std::string& factor, int epoch)
      : std::runtime_error("fit diverged for '" + factor + "' at epoch " + std::to_string(epoch)),
        factor_(factor),
        epoch_(epoch) {}

  const std::string& factor() const noexcept { return factor_; }
  int epoch() const noexcept { return epoch_; }

 private:
  std::string factor_;
  int epoch_;
};

// The HTTP service could not start (bad bind address, port in use).
class ServiceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace benefit
