#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "telescope/common.hpp"

namespace telescope {

/// Chain order ℓ and degree (α, β) of the Pfaffian functions.
struct PfaffianParams {
  long ell = 0;
  long alpha = 0;
  long beta = 0;
};

/// Parameters of the Betti bounds. `c` (and `c_prime` for the elimination comparison)
/// stand in for the unspecified O-constants; both are positive integers.
struct BoundParams {
  long n = 1;
  long s = 1;
  long d = 1;
  long k = 0;
  long r = 0;
  long p = 0;
  std::optional<PfaffianParams> pfaffian;
  Integer c = 1;
  Integer c_prime = 1;
};

inline constexpr std::string_view kConstantsNote =
    "asymptotic bound evaluated with the O-constants set to c (and c' for the elimination exponent); "
    "valid only up to the unstated constants";

enum class ClassicalVariant { Equations, NonStrict, Mixed };
enum class PfaffianVariant { Total, DegreeK, Projection };

ClassicalVariant parse_classical_variant(std::string_view text);
PfaffianVariant parse_pfaffian_variant(std::string_view text);

/// Equations: d(2d−1)^{n−1}. NonStrict: (sd+1)^n. Mixed: (csd)^n.
Integer classical_bound(ClassicalVariant v, const BoundParams& p);
std::string classical_formula(ClassicalVariant v);

/// ν = min{k+1, n−k, s}. Requires 0 ≤ k ≤ n.
long nu(long n, long k, long s);

/// (cνsd)^n.
Integer gv_bound_k(const BoundParams& p);

struct ProjectionBound {
  /// Σ_{p=0}^{k} (c(p+1)(k+1)sd)^{n+(p+1)r}
  Integer value;
  std::vector<Integer> terms;
  /// (sd)^{c′n²r}, the bound obtained through quantifier elimination.
  Integer elimination;
};

/// Requires r ≥ 1.
ProjectionBound projection_bound(const BoundParams& p);

/// Number of polynomials defining the telescope, 4(k+1)s, and its fibred powers, 4(p+1)(k+1)s.
Integer telescope_polynomial_count(long k, long s);
Integer fibred_polynomial_count(long p, long k, long s);

/// Total:      s^n 2^{ℓ(ℓ−1)/2} (c(nβ + min{n,ℓ}α))^{n+ℓ}
/// DegreeK:    (νs)^n 2^{ℓ(ℓ−1)/2} (c(nβ + min{n,ℓ}α))^{n+ℓ}
/// Projection: (ks)^{c(n+(k+1)r)} 2^{(ckℓ)²} ((n+(k+1)r)(α+β))^{n+(k+1)r+kℓ}
Integer pfaffian_bound(PfaffianVariant v, const BoundParams& p);
std::string pfaffian_formula(PfaffianVariant v);

}  // namespace telescope
