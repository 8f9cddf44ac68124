#ifndef CORPUSFORGE_ERROR_HPP_
#define CORPUSFORGE_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace corpusforge {

// Base for every error the library raises. Callers that only need to
// distinguish "bad invocation" from "bad data" can catch ConfigError and
// Error separately.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid configuration value. `field` is a dotted path such as
// "thresholds.max_er" so diagnostics can name the offending setting.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& message)
      : Error(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// Input data could not be used (malformed WAV, empty reference, ...).
class DataError : public Error {
 public:
  using Error::Error;
};

// A recognizer adapter failed for one request (crash, timeout, error reply).
class AdapterError : public Error {
 public:
  using Error::Error;
};

}  // namespace corpusforge

#endif  // CORPUSFORGE_ERROR_HPP_
