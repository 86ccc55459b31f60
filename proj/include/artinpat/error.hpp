#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace apat {

// Base for everything the library throws on bad input or unmet preconditions.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class InconsistentPresentation : public Error {
 public:
  using Error::Error;
};

class BoundExceeded : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class NotNormal : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class NotAbelian : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// Generator images that do not extend to a homomorphism.
class RelationViolation : public Error {
 public:
  RelationViolation(const std::string& what, std::string witness)
      : Error(what + ": " + witness), witness_(std::move(witness)) {}
  const std::string& witness() const noexcept { return witness_; }

 private:
  std::string witness_;
};

class FactorizationError : public Error {
 public:
  using Error::Error;
};

class RootReached : public Error {
 public:
  using Error::Error;
};

class UnknownId : public Error {
 public:
  using Error::Error;
};

}  // namespace apat
