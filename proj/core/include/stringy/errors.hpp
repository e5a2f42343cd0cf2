#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace stringy {

/// Base class for every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// exact-arith

class ExponentOverflow : public Error {
 public:
  using Error::Error;
};

class MissingRoot : public Error {
 public:
  using Error::Error;
};

class InvalidRoot : public Error {
 public:
  using Error::Error;
};

class PoleAtPoint : public Error {
 public:
  using Error::Error;
};

/// A term u^a v^b with a+b odd needs sqrt(s), which is not rational.
class NonTateTerm : public Error {
 public:
  using Error::Error;
};

// strata

class ValidationError : public Error {
 public:
  using Error::Error;
};

class NotLogTerminal : public ValidationError {
 public:
  NotLogTerminal(std::size_t index, const std::string& what)
      : ValidationError(what), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

class InconsistentSupport : public ValidationError {
 public:
  InconsistentSupport(std::uint64_t subset, std::uint64_t superset,
                      const std::string& what)
      : ValidationError(what), subset_(subset), superset_(superset) {}
  std::uint64_t subset() const noexcept { return subset_; }
  std::uint64_t superset() const noexcept { return superset_; }

 private:
  std::uint64_t subset_;
  std::uint64_t superset_;
};

class WrongFlavor : public Error {
 public:
  using Error::Error;
};

class MissingAmbient : public Error {
 public:
  using Error::Error;
};

// stringy

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class MissingCount : public Error {
 public:
  MissingCount(std::uint64_t subset, const std::string& what)
      : Error(what), subset_(subset) {}
  std::uint64_t subset() const noexcept { return subset_; }

 private:
  std::uint64_t subset_;
};

class NotPolynomial : public Error {
 public:
  NotPolynomial(std::int64_t finest_granularity, const std::string& what)
      : Error(what), finest_granularity_(finest_granularity) {}
  /// Granularity g at which the value is a polynomial in u^{1/g}, v^{1/g};
  /// zero when it is not a polynomial at any granularity.
  std::int64_t finest_granularity() const noexcept {
    return finest_granularity_;
  }

 private:
  std::int64_t finest_granularity_;
};

// padic

class Divergent : public Error {
 public:
  Divergent(std::size_t index, const std::string& what)
      : Error(what), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

class InvalidField : public Error {
 public:
  using Error::Error;
};

// count

class NegativeCount : public Error {
 public:
  using Error::Error;
};

class Unenumerable : public Error {
 public:
  using Error::Error;
};

class FieldTooLarge : public Error {
 public:
  using Error::Error;
};

// scenario files

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  /// 1-based line number, or 0 when the problem is structural.
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace stringy
