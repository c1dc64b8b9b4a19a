#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "telescope/common.hpp"
#include "telescope/simplicial.hpp"

namespace telescope::testing {

/// Random complex on at most `max_vertices` vertices with maximal simplices of dimension <= max_dim.
inline SimplicialComplex random_complex(std::mt19937_64& rng, int max_vertices = 8, int max_dim = 3,
                                        int max_simplices = 8) {
  std::uniform_int_distribution<int> nv(2, max_vertices);
  const int n = nv(rng);
  std::uniform_int_distribution<int> count(1, max_simplices);
  std::uniform_int_distribution<int> dim(0, max_dim);
  std::vector<Simplex> out;
  const int m = count(rng);
  for (int i = 0; i < m; ++i) {
    std::vector<int> verts(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) verts[static_cast<std::size_t>(v)] = v;
    std::shuffle(verts.begin(), verts.end(), rng);
    const int size = std::min(n, dim(rng) + 1);
    verts.resize(static_cast<std::size_t>(size));
    out.emplace_back(verts);
  }
  return build_complex(out);
}

/// Rank over ℚ by plain Gaussian elimination on rationals.
inline std::size_t rational_rank(std::vector<std::vector<Integer>> m) {
  std::vector<std::vector<Rational>> a;
  for (auto& row : m) a.emplace_back(row.begin(), row.end());
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      if (a[i][c] == 0) continue;
      Rational f = a[i][c] / a[rank][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[rank][j];
    }
    ++rank;
  }
  return rank;
}

/// Determinant by Bareiss fraction-free elimination.
inline std::size_t rank_mod_p(const std::vector<std::vector<Integer>>& src, long p) {
  std::vector<std::vector<long>> m;
  for (const auto& row : src) {
    std::vector<long> r;
    for (const auto& v : row) {
      Integer t = v % p;
      if (t < 0) t += p;
      r.push_back(t.get_si());
    }
    m.push_back(r);
  }
  std::size_t rank = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t piv = rank;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    long inv = 1;
    for (long e = p - 2, b = m[rank][c]; e > 0; e >>= 1, b = b * b % p) {
      if (e & 1) inv = inv * b % p;
    }
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][c] == 0) continue;
      long f = m[r][c] * inv % p;
      for (std::size_t j = c; j < cols; ++j) m[r][j] = ((m[r][j] - f * m[rank][j]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

inline Integer determinant(std::vector<std::vector<Integer>> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[p], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

/// Invariant factors from determinantal divisors: D_k = gcd of all k×k minors, d_k = D_k / D_{k-1}.
inline std::vector<Integer> invariant_factors_by_minors(const std::vector<std::vector<Integer>>& m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  std::vector<Integer> out;
  Integer prev = 1;
  for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
    Integer g = 0;
    std::vector<bool> rsel(rows, false), csel(cols, false);
    std::fill(rsel.begin(), rsel.begin() + static_cast<long>(k), true);
    do {
      std::fill(csel.begin(), csel.end(), false);
      std::fill(csel.begin(), csel.begin() + static_cast<long>(k), true);
      do {
        std::vector<std::vector<Integer>> sub;
        for (std::size_t i = 0; i < rows; ++i) {
          if (!rsel[i]) continue;
          std::vector<Integer> row;
          for (std::size_t j = 0; j < cols; ++j) {
            if (csel[j]) row.push_back(m[i][j]);
          }
          sub.push_back(row);
        }
        g = gcd(g, determinant(sub));
      } while (std::prev_permutation(csel.begin(), csel.end()));
    } while (std::prev_permutation(rsel.begin(), rsel.end()));
    if (g == 0) break;
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

}  // namespace telescope::testing
