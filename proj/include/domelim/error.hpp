#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace domelim {

// Base of every error the engine raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input to an operation: out-of-range indices, shape mismatches,
// restrictions of different games, empty sets where nonempty ones are required.
class StructuralError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// A request the engine deliberately does not decide (independent mixed
// beliefs with three or more players, inherent dominance beyond its cap).
class UnsupportedConfiguration : public Error {
 public:
  using Error::Error;
};

// Some player would be left with no undominated strategy.
class AssumptionViolated : public Error {
 public:
  using Error::Error;
};

// A mixed strategy that puts all of its mass on the strategy it is supposed
// to dominate.
class DegenerateDominator : public Error {
 public:
  using Error::Error;
};

class InvalidCertificate : public Error {
 public:
  using Error::Error;
};

class CyclicSystem : public Error {
 public:
  using Error::Error;
};

}  // namespace domelim
