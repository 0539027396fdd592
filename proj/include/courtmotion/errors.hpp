#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace courtmotion {

// Base class of everything thrown by the pipeline. InputError maps to CLI
// exit code 2, NumericError to exit code 3.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InputError : Error {
  using Error::Error;
};

struct NumericError : Error {
  using Error::Error;
};

struct MalformedRow : InputError {
  std::size_t line_no;
  MalformedRow(std::size_t line, const std::string& detail)
      : InputError("malformed row at line " + std::to_string(line) + ": " + detail),
        line_no(line) {}
};

struct EmptyInput : InputError {
  EmptyInput() : InputError("no data rows") {}
};

struct UnknownTag : InputError {
  explicit UnknownTag(const std::string& tag)
      : InputError("roster tag '" + tag + "' has no trajectory") {}
};

struct NonmonotonicTime : InputError {
  using InputError::InputError;
};

struct TooFewPlayers : InputError {
  TooFewPlayers() : InputError("frame has fewer than two players") {}
};

struct EmptyVector : InputError {
  EmptyVector() : InputError("distance vector is empty") {}
};

struct MissingPeriod : InputError {
  using InputError::InputError;
};

struct Misaligned : InputError {
  using InputError::InputError;
};

struct RosterMismatch : InputError {
  using InputError::InputError;
};

struct TooManyClusters : InputError {
  TooManyClusters(int k, std::size_t rows)
      : InputError("k = " + std::to_string(k) + " exceeds row count " + std::to_string(rows)) {}
};

struct EmptyCluster : InputError {
  EmptyCluster() : InputError("cluster has no frames") {}
};

struct UnbalancedPeriods : InputError {
  using InputError::InputError;
};

struct MalformedEvent : InputError {
  std::size_t line_no;
  MalformedEvent(std::size_t line, const std::string& detail)
      : InputError("malformed event at line " + std::to_string(line) + ": " + detail),
        line_no(line) {}
};

struct EigenFailure : NumericError {
  EigenFailure() : NumericError("eigendecomposition did not converge") {}
};

struct IoFailure : InputError {
  explicit IoFailure(const std::string& path) : InputError("cannot write '" + path + "'") {}
};

}  // namespace courtmotion
