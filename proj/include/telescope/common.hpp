#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace telescope {

using Integer = mpz_class;
using Rational = mpq_class;

enum class ErrorKind {
  EmptyComplex,
  DimensionLimit,
  InvalidSimplex,
  NotMonotone,
  UnknownElement,
  NotAPoset,
  IncompatibleSigns,
  BNotInS,
  FlagMismatch,
  NotAFlag,
  CriterionFails,
  WitnessRejected,
  ParseError,
  TooManyFunctions,
  BadThresholds,
  DepthExceeded,
  InvalidParams,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a kind so callers (and the CLI)
/// can map it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parses "a", "-a", "a/b" (with optional surrounding whitespace) into a canonical rational.
Rational parse_rational(std::string_view text);

/// Canonical text form ("3", "-1/4").
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

Rational rational_pow(const Rational& base, unsigned exponent);
Integer integer_pow(const Integer& base, unsigned long exponent);

/// Number of worker threads, honouring TELESCOPE_THREADS (0 or unset = hardware concurrency).
unsigned worker_threads();

}  // namespace telescope
