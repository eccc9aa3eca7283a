#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace asymphot {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid user input: bad config documents, out-of-range parameters,
/// unsupported options. Maps to CLI exit code 1.
class ConfigError : public Error {
 public:
  enum class Category { syntax, unknown_key, invariant, unsupported };

  ConfigError(Category category, std::string message, std::optional<int> line = std::nullopt)
      : Error(format(category, message, line)), category_(category), line_(line) {}

  Category category() const noexcept { return category_; }
  std::optional<int> line() const noexcept { return line_; }

 private:
  static std::string format(Category category, const std::string& message,
                            std::optional<int> line) {
    std::string prefix;
    switch (category) {
      case Category::syntax: prefix = "syntax error"; break;
      case Category::unknown_key: prefix = "unknown key"; break;
      case Category::invariant: prefix = "invalid value"; break;
      case Category::unsupported: prefix = "unsupported"; break;
    }
    if (line) prefix += " (line " + std::to_string(*line) + ")";
    return prefix + ": " + message;
  }

  Category category_;
  std::optional<int> line_;
};

/// Poling requested for a process that is already phase matched.
class AlreadyPhaseMatchedError : public ConfigError {
 public:
  AlreadyPhaseMatchedError()
      : ConfigError(Category::invariant,
                    "phase mismatch is zero; quasi-phase-matching poling is unnecessary") {}
};

/// Failure during evaluation. Maps to CLI exit code 2.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of a physical function (e.g. k <= 0).
class DomainError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Zero denominator in the closed-form cavity amplitudes: a lossless pole.
class ResonanceSingularity : public NumericalError {
 public:
  explicit ResonanceSingularity(std::string message, std::optional<double> k = std::nullopt)
      : NumericalError(k ? message + " at k = " + std::to_string(*k) + " rad/um" : message),
        k_(k) {}

  std::optional<double> k() const noexcept { return k_; }

 private:
  std::optional<double> k_;
};

/// Transfer matrix with M11 = 0: a perfect reflector at this wavenumber.
class SingularStructureError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace asymphot
