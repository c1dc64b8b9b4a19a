#include "telescope/bounds.hpp"

#include <algorithm>

namespace telescope {

namespace {

// Exponents beyond this would not fit in memory anyway.
constexpr unsigned long kMaxExponent = 1'000'000;

unsigned long exponent(const Integer& e) {
  if (e < 0 || e > kMaxExponent) throw Error(ErrorKind::InvalidParams, "exponent " + e.get_str() + " out of range");
  return e.get_ui();
}

Integer power(const Integer& base, const Integer& e) { return integer_pow(base, exponent(e)); }

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorKind::InvalidParams, what);
}

void check_common(const BoundParams& p) {
  require(p.n >= 1, "n must be at least 1");
  require(p.s >= 1, "s must be at least 1");
  require(p.d >= 1, "d must be at least 1");
  require(p.k >= 0 && p.r >= 0 && p.p >= 0, "k, r and p must be non-negative");
  require(p.c >= 1 && p.c_prime >= 1, "the constants c and c' must be positive integers");
}

const PfaffianParams& pfaffian_of(const BoundParams& p) {
  require(p.pfaffian.has_value(), "Pfaffian bounds need (ell, alpha, beta)");
  const auto& f = *p.pfaffian;
  require(f.ell >= 0 && f.alpha >= 0 && f.beta >= 0, "ell, alpha and beta must be non-negative");
  return f;
}

}  // namespace

ClassicalVariant parse_classical_variant(std::string_view text) {
  if (text == "equations" || text == "i") return ClassicalVariant::Equations;
  if (text == "nonstrict" || text == "ii") return ClassicalVariant::NonStrict;
  if (text == "mixed" || text == "iii") return ClassicalVariant::Mixed;
  throw Error(ErrorKind::InvalidParams, "classical variant must be equations, nonstrict or mixed");
}

PfaffianVariant parse_pfaffian_variant(std::string_view text) {
  if (text == "total") return PfaffianVariant::Total;
  if (text == "degree_k") return PfaffianVariant::DegreeK;
  if (text == "projection") return PfaffianVariant::Projection;
  throw Error(ErrorKind::InvalidParams, "Pfaffian variant must be total, degree_k or projection");
}

Integer classical_bound(ClassicalVariant v, const BoundParams& p) {
  check_common(p);
  const Integer n = p.n, s = p.s, d = p.d;
  switch (v) {
    case ClassicalVariant::Equations: return d * power(2 * d - 1, n - 1);
    case ClassicalVariant::NonStrict: return power(s * d + 1, n);
    case ClassicalVariant::Mixed: return power(p.c * s * d, n);
  }
  return 0;
}

std::string classical_formula(ClassicalVariant v) {
  switch (v) {
    case ClassicalVariant::Equations: return "d(2d-1)^(n-1)";
    case ClassicalVariant::NonStrict: return "(sd+1)^n";
    case ClassicalVariant::Mixed: return "(c s d)^n";
  }
  return "";
}

long nu(long n, long k, long s) {
  require(n >= 1 && s >= 1, "n and s must be at least 1");
  require(k >= 0 && k <= n, "k must lie in 0..n");
  return std::min({k + 1, n - k, s});
}

Integer gv_bound_k(const BoundParams& p) {
  check_common(p);
  return power(p.c * Integer(nu(p.n, p.k, p.s)) * p.s * p.d, p.n);
}

ProjectionBound projection_bound(const BoundParams& p) {
  check_common(p);
  require(p.r >= 1, "projection bounds need r >= 1");
  ProjectionBound out;
  const Integer sd = Integer(p.s) * p.d;
  for (long q = 0; q <= p.k; ++q) {
    out.terms.push_back(power(p.c * (q + 1) * (p.k + 1) * sd, Integer(p.n) + (q + 1) * p.r));
    out.value += out.terms.back();
  }
  out.elimination = power(sd, p.c_prime * p.n * p.n * p.r);
  return out;
}

Integer telescope_polynomial_count(long k, long s) {
  require(k >= 0 && s >= 1, "need k >= 0 and s >= 1");
  return Integer(4) * (k + 1) * s;
}

Integer fibred_polynomial_count(long p, long k, long s) {
  require(p >= 0 && p <= k, "need 0 <= p <= k");
  return Integer(4) * (p + 1) * (k + 1) * s;
}

Integer pfaffian_bound(PfaffianVariant v, const BoundParams& p) {
  check_common(p);
  const auto& f = pfaffian_of(p);
  const Integer n = p.n, s = p.s, ell = f.ell;
  const Integer two_power = power(2, ell * (ell - 1) / 2);
  const Integer inner = power(p.c * (n * f.beta + std::min(p.n, f.ell) * Integer(f.alpha)), n + ell);
  switch (v) {
    case PfaffianVariant::Total: return power(s, n) * two_power * inner;
    case PfaffianVariant::DegreeK: return power(Integer(nu(p.n, p.k, p.s)) * s, n) * two_power * inner;
    case PfaffianVariant::Projection: {
      const Integer dims = n + (p.k + 1) * Integer(p.r);
      const Integer ckl = p.c * p.k * ell;
      return power(Integer(p.k) * s, p.c * dims) * power(2, ckl * ckl) *
             power(dims * (f.alpha + f.beta), dims + Integer(p.k) * ell);
    }
  }
  return 0;
}

std::string pfaffian_formula(PfaffianVariant v) {
  switch (v) {
    case PfaffianVariant::Total: return "s^n 2^(l(l-1)/2) (c(n beta + min(n,l) alpha))^(n+l)";
    case PfaffianVariant::DegreeK: return "(nu s)^n 2^(l(l-1)/2) (c(n beta + min(n,l) alpha))^(n+l)";
    case PfaffianVariant::Projection:
      return "(k s)^(c(n+(k+1)r)) 2^((c k l)^2) ((n+(k+1)r)(alpha+beta))^(n+(k+1)r+k l)";
  }
  return "";
}

}  // namespace telescope
