#pragma once

#include <stdexcept>
#include <string>

namespace dbicc {

/// Base class of every error raised by the library. `name()` is the stable
/// identifier surfaced by the command-line tool.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& message)
      : std::runtime_error(message), name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

class InputShapeError : public Error {
 public:
  explicit InputShapeError(const std::string& m) : Error("InputShapeError", m) {}
};

class InsufficientGroupsError : public Error {
 public:
  explicit InsufficientGroupsError(const std::string& m)
      : Error("InsufficientGroupsError", m) {}
};

class InsufficientReplicatesError : public Error {
 public:
  explicit InsufficientReplicatesError(const std::string& m)
      : Error("InsufficientReplicatesError", m) {}
};

class InsufficientDataError : public Error {
 public:
  explicit InsufficientDataError(const std::string& m)
      : Error("InsufficientDataError", m) {}
};

class NonFiniteError : public Error {
 public:
  explicit NonFiniteError(const std::string& m) : Error("NonFiniteError", m) {}
};

class MetricMismatchError : public Error {
 public:
  explicit MetricMismatchError(const std::string& m)
      : Error("MetricMismatchError", m) {}
};

class DegenerateInputError : public Error {
 public:
  explicit DegenerateInputError(const std::string& m)
      : Error("DegenerateInputError", m) {}
};

class DegenerateDistancesError : public Error {
 public:
  explicit DegenerateDistancesError(const std::string& m)
      : Error("DegenerateDistancesError", m) {}
};

class ParameterError : public Error {
 public:
  explicit ParameterError(const std::string& m) : Error("ParameterError", m) {}
};

class SingularMatrixError : public Error {
 public:
  explicit SingularMatrixError(const std::string& m)
      : Error("SingularMatrixError", m) {}
};

class FactorizationError : public Error {
 public:
  explicit FactorizationError(const std::string& m)
      : Error("FactorizationError", m) {}
};

}  // namespace dbicc
