#include "telescope/common.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <thread>

namespace telescope {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::EmptyComplex: return "EmptyComplex";
    case ErrorKind::DimensionLimit: return "DimensionLimit";
    case ErrorKind::InvalidSimplex: return "InvalidSimplex";
    case ErrorKind::NotMonotone: return "NotMonotone";
    case ErrorKind::UnknownElement: return "UnknownElement";
    case ErrorKind::NotAPoset: return "NotAPoset";
    case ErrorKind::IncompatibleSigns: return "IncompatibleSigns";
    case ErrorKind::BNotInS: return "BNotInS";
    case ErrorKind::FlagMismatch: return "FlagMismatch";
    case ErrorKind::NotAFlag: return "NotAFlag";
    case ErrorKind::CriterionFails: return "CriterionFails";
    case ErrorKind::WitnessRejected: return "WitnessRejected";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::TooManyFunctions: return "TooManyFunctions";
    case ErrorKind::BadThresholds: return "BadThresholds";
    case ErrorKind::DepthExceeded: return "DepthExceeded";
    case ErrorKind::InvalidParams: return "InvalidParams";
  }
  return "Unknown";
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool valid_integer_text(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  auto slash = s.find('/');
  std::string_view num = slash == std::string_view::npos ? s : s.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
  if (!valid_integer_text(num) || !valid_integer_text(den) || den.front() == '-' || den.front() == '+') {
    throw Error(ErrorKind::ParseError, "not a rational: '" + std::string(text) + "'");
  }
  std::string n(num);
  if (!n.empty() && n.front() == '+') n.erase(0, 1);
  Integer zn(n, 10);
  Integer zd(std::string(den), 10);
  if (zd == 0) throw Error(ErrorKind::ParseError, "zero denominator in '" + std::string(text) + "'");
  Rational q(zn, zd);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }
std::string to_string(const Integer& z) { return z.get_str(10); }

Rational rational_pow(const Rational& base, unsigned exponent) {
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Integer integer_pow(const Integer& base, unsigned long exponent) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

unsigned worker_threads() {
  unsigned requested = 0;
  if (const char* env = std::getenv("TELESCOPE_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) requested = static_cast<unsigned>(v);
  }
  if (requested == 0) requested = std::max(1u, std::thread::hardware_concurrency());
  return requested;
}

}  // namespace telescope
