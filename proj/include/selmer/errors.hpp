#pragma once

#include <stdexcept>
#include <string>

namespace selmer {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Input violates an operation's precondition (zero where nonzero is required,
/// non-squarefree twist, composite "prime", ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// The request lies outside the cases the library computes exactly.
class Unsupported : public Error {
 public:
  using Error::Error;
};

class NotFound : public Error {
 public:
  using Error::Error;
};

class NotRepresentable : public Error {
 public:
  using Error::Error;
};

class MissingIngestedRank : public Error {
 public:
  MissingIngestedRank(const std::string& what, std::string record)
      : Error(what), record_(std::move(record)) {}
  /// The datastore line that would satisfy the lookup, with `?` for the rank.
  const std::string& record() const { return record_; }

 private:
  std::string record_;
};

class PrecisionExhausted : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line) : Error(what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class RefusedSameTorsionField : public Error {
 public:
  using Error::Error;
};

}  // namespace selmer
