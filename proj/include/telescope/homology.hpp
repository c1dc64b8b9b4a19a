#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "telescope/common.hpp"
#include "telescope/simplicial.hpp"

namespace telescope {

/// Column-major sparse integer matrix; each column is sorted by row and holds no zeros.
struct SparseIntMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::vector<std::pair<int, Integer>>> columns;

  SparseIntMatrix() = default;
  SparseIntMatrix(int r, int c) : rows(r), cols(c), columns(static_cast<std::size_t>(c)) {}

  static SparseIntMatrix from_dense(const std::vector<std::vector<Integer>>& dense);
  std::vector<std::vector<Integer>> to_dense() const;
};

struct SmithResult {
  /// Non-zero invariant factors d_1 | d_2 | … in ascending order.
  std::vector<Integer> invariant_factors;
  std::size_t rank = 0;
};

/// Smith normal form over ℤ. Unit pivots are eliminated sparsely first; the remainder
/// is diagonalised densely with the smallest-|entry| pivot (ties: lowest row, then col).
SmithResult smith_normal_form(const SparseIntMatrix& m);
SmithResult smith_normal_form(const std::vector<std::vector<Integer>>& dense);

struct BettiVector {
  std::vector<std::int64_t> free_ranks;
  /// torsion[k]: invariant factors > 1 of H_k.
  std::vector<std::vector<Integer>> torsion;

  bool operator==(const BettiVector&) const = default;
  std::size_t size() const noexcept { return free_ranks.size(); }
  std::int64_t operator[](std::size_t k) const { return k < free_ranks.size() ? free_ranks[k] : 0; }
  std::int64_t euler() const;
};

std::string to_string(const BettiVector& b);

/// Simplices by dimension together with ∂_1 … ∂_top (sorted-vertex orientation).
struct ChainComplex {
  std::vector<std::vector<Simplex>> faces;
  /// boundaries[d] is ∂_d : C_d → C_{d-1}; boundaries[0] is an empty placeholder.
  std::vector<SparseIntMatrix> boundaries;
};

ChainComplex chain_complex(const SimplicialComplex& k, int max_dim = -1);

/// Integral homology. With max_degree >= 0 only degrees 0..max_degree are computed
/// (using the (max_degree+1)-skeleton), otherwise degrees 0..dim K.
BettiVector betti(const SimplicialComplex& k, int max_degree = -1);

/// b̃_0 = b_0 − 1; throws EmptyComplex for the void complex.
BettiVector reduced_betti(const SimplicialComplex& k, int max_degree = -1);

/// Partition by 1-skeleton reachability, ordered by smallest vertex.
std::vector<SimplicialComplex> connected_components(const SimplicialComplex& k);

}  // namespace telescope
