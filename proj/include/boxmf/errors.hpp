#pragma once

#include <stdexcept>
#include <string>

namespace boxmf {

/// Invalid configuration or argument (CLI exit code 2).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input file could not be read or parsed (CLI exit code 3).
class IngestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numeric precondition failed inside the analysis (CLI exit code 4).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace boxmf
