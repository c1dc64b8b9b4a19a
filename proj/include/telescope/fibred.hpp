#pragma once

#include <cstdint>
#include <vector>

#include "telescope/boxes.hpp"

namespace telescope {

/// W_p = T ×_ρ … ×_ρ T (p + 1 factors) for the projection ρ onto the first n coordinates,
/// as boxes in ℝ^{n+(p+1)r} with coordinates (x, y_0, …, y_p).
struct FibredPower {
  int n = 0;
  int r = 0;
  int p = 0;
  BoxComplex boxes;
};

/// Throws InvalidParams unless T is non-empty, 1 ≤ n < dim T and 0 ≤ p ≤ 4.
FibredPower fibred_power(const BoxComplex& t, int n, int p);

/// Reorders the fibre blocks: block i of the result is block perm[i] of w.
FibredPower permute_fibres(const FibredPower& w, const std::vector<int>& perm);

struct SpectralEntry {
  int p = 0;
  int q = 0;
  std::int64_t betti = 0;
};

struct SpectralBound {
  std::int64_t bound = 0;
  std::vector<SpectralEntry> table;
};

/// Σ_{p+q=k} b_q(W_p), with the individual terms. Requires 0 ≤ k ≤ 4.
SpectralBound spectral_upper_bound(const BoxComplex& t, int n, int k);

struct InequalityCheck {
  std::int64_t lhs = 0;
  std::int64_t rhs = 0;
  bool holds = false;
  std::vector<SpectralEntry> table;
};

/// b_k of the projection against the spectral bound.
InequalityCheck check_inequality(const BoxComplex& t, int n, int k);

}  // namespace telescope
