#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gcx {

/// Opaque user and item identifiers. Loaders that ingest non-numeric
/// identifiers intern them into this space in first-occurrence order.
using UserId = std::int64_t;
using ItemId = std::int64_t;

/// Malformed input data (always carries the offending file/line).
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// A value outside its documented domain (empty user set, rating out of
/// range, dimension mismatch, ...).
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// An unusable run configuration (insufficient eligible users, guard
/// violations, bad parameter combinations).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised by CallMeter when a charge would exceed the call budget.
/// Search drivers catch it and turn it into a typed failure outcome;
/// it never escapes the run loop.
class BudgetExhausted : public std::runtime_error {
 public:
  BudgetExhausted() : std::runtime_error("recommender call budget exhausted") {}
};

}  // namespace gcx
