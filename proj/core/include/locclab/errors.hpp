#pragma once

#include <stdexcept>
#include <string>

namespace locclab {

/// Base class for every error raised by the library. `kind()` is a short
/// machine-readable tag used by the CLI error JSON.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

class DimensionMismatch : public Error {
 public:
  explicit DimensionMismatch(const std::string& what) : Error("DimensionMismatch", what) {}
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error("InvalidArgument", what) {}
};

class SizeCapExceeded : public Error {
 public:
  explicit SizeCapExceeded(const std::string& what) : Error("SizeCapExceeded", what) {}
};

class ZeroState : public Error {
 public:
  explicit ZeroState(const std::string& what) : Error("ZeroState", what) {}
};

class UndefinedFamily : public Error {
 public:
  explicit UndefinedFamily(const std::string& what) : Error("UndefinedFamily", what) {}
};

class SingularOperator : public Error {
 public:
  explicit SingularOperator(const std::string& what) : Error("SingularOperator", what) {}
};

class NotNormalized : public Error {
 public:
  explicit NotNormalized(const std::string& what) : Error("NotNormalized", what) {}
};

class BudgetExceeded : public Error {
 public:
  explicit BudgetExceeded(const std::string& what) : Error("BudgetExceeded", what) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error("ParseError", what) {}
};

class PreconditionFailed : public Error {
 public:
  explicit PreconditionFailed(const std::string& what) : Error("PreconditionFailed", what) {}
};

}  // namespace locclab
