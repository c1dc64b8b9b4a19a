#include "telescope/homology.hpp"

#include <algorithm>
#include <future>
#include <numeric>
#include <queue>

namespace telescope {

SparseIntMatrix SparseIntMatrix::from_dense(const std::vector<std::vector<Integer>>& dense) {
  const int r = static_cast<int>(dense.size());
  const int c = r == 0 ? 0 : static_cast<int>(dense.front().size());
  SparseIntMatrix m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(dense[static_cast<std::size_t>(i)].size()) != c) {
      throw Error(ErrorKind::InvalidParams, "ragged matrix");
    }
    for (int j = 0; j < c; ++j) {
      const Integer& v = dense[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (v != 0) m.columns[static_cast<std::size_t>(j)].emplace_back(i, v);
    }
  }
  return m;
}

std::vector<std::vector<Integer>> SparseIntMatrix::to_dense() const {
  std::vector<std::vector<Integer>> d(static_cast<std::size_t>(rows),
                                      std::vector<Integer>(static_cast<std::size_t>(cols), Integer(0)));
  for (int j = 0; j < cols; ++j) {
    for (const auto& [i, v] : columns[static_cast<std::size_t>(j)]) {
      d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
    }
  }
  return d;
}

namespace {

struct Overflow {};

// Scalar policies for the sparse phase: a checked machine-word fast path and GMP.
struct SmallOps {
  using T = std::int64_t;
  static T from(const Integer& z) {
    if (!z.fits_slong_p()) throw Overflow{};
    return z.get_si();
  }
  static Integer to(T v) { return Integer(static_cast<long>(v)); }
  static bool is_unit(T v) { return v == 1 || v == -1; }
  static bool is_zero(T v) { return v == 0; }
  // a - f*b
  static T sub_mul(T a, T f, T b) {
    T prod, out;
    if (__builtin_mul_overflow(f, b, &prod) || __builtin_sub_overflow(a, prod, &out)) throw Overflow{};
    return out;
  }
  static T neg(T v) {
    if (v == INT64_MIN) throw Overflow{};
    return -v;
  }
};

struct BigOps {
  using T = Integer;
  static T from(const Integer& z) { return z; }
  static Integer to(const T& v) { return v; }
  static bool is_unit(const T& v) { return v == 1 || v == -1; }
  static bool is_zero(const T& v) { return v == 0; }
  static T sub_mul(const T& a, const T& f, const T& b) { return a - f * b; }
  static T neg(const T& v) { return -v; }
};

struct Reduced {
  std::size_t units = 0;
  // Dense remainder left after all unit pivots are exhausted.
  std::vector<std::vector<Integer>> rest;
};

template <class Ops>
Reduced eliminate_units(const SparseIntMatrix& input) {
  using T = typename Ops::T;
  using Column = std::vector<std::pair<int, T>>;
  const std::size_t ncols = static_cast<std::size_t>(input.cols);
  const std::size_t nrows = static_cast<std::size_t>(input.rows);

  std::vector<Column> cols(ncols);
  std::vector<std::vector<int>> row_cols(nrows);
  std::vector<int> row_count(nrows, 0);
  for (std::size_t j = 0; j < ncols; ++j) {
    for (const auto& [i, v] : input.columns[j]) {
      if (v == 0) continue;
      cols[j].emplace_back(i, Ops::from(v));
      row_cols[static_cast<std::size_t>(i)].push_back(static_cast<int>(j));
      ++row_count[static_cast<std::size_t>(i)];
    }
    std::sort(cols[j].begin(), cols[j].end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  }
  std::vector<char> col_alive(ncols, 1);
  std::vector<std::uint32_t> version(ncols, 0);

  using Key = std::tuple<std::size_t, int, std::uint32_t>;  // (nnz, col, version)
  std::priority_queue<Key, std::vector<Key>, std::greater<>> queue;
  for (std::size_t j = 0; j < ncols; ++j) {
    if (!cols[j].empty()) queue.emplace(cols[j].size(), static_cast<int>(j), 0u);
  }

  auto find_entry = [&](const Column& col, int row) -> const T* {
    auto it = std::lower_bound(col.begin(), col.end(), row, [](const auto& e, int r) { return e.first < r; });
    return (it != col.end() && it->first == row) ? &it->second : nullptr;
  };

  Reduced out;
  std::vector<std::uint32_t> mark(ncols, 0);
  std::uint32_t stamp = 0;
  while (!queue.empty()) {
    auto [nnz, c, ver] = queue.top();
    queue.pop();
    const std::size_t cu = static_cast<std::size_t>(c);
    if (!col_alive[cu] || ver != version[cu] || cols[cu].empty()) continue;

    // Sparsest row among the unit entries of this column.
    int pivot_row = -1;
    T pivot_val{};
    for (const auto& [i, v] : cols[cu]) {
      if (!Ops::is_unit(v)) continue;
      if (pivot_row < 0 || row_count[static_cast<std::size_t>(i)] < row_count[static_cast<std::size_t>(pivot_row)]) {
        pivot_row = i;
        pivot_val = v;
      }
    }
    if (pivot_row < 0) continue;  // re-queued if the column changes later

    // Clear row `pivot_row` from every other column by column operations.
    ++stamp;
    std::vector<int> targets;
    for (int other : row_cols[static_cast<std::size_t>(pivot_row)]) {
      const std::size_t ou = static_cast<std::size_t>(other);
      if (other == c || !col_alive[ou] || mark[ou] == stamp) continue;
      mark[ou] = stamp;
      if (find_entry(cols[ou], pivot_row)) targets.push_back(other);
    }
    const Column pivot_col = cols[cu];
    for (int other : targets) {
      const std::size_t ou = static_cast<std::size_t>(other);
      Column& dst = cols[ou];
      // factor = b / a with a = ±1
      T factor = *find_entry(dst, pivot_row);
      if (pivot_val == -1) factor = Ops::neg(factor);
      Column merged;
      merged.reserve(dst.size() + pivot_col.size());
      std::size_t a = 0, b = 0;
      while (a < dst.size() || b < pivot_col.size()) {
        if (b == pivot_col.size() || (a < dst.size() && dst[a].first < pivot_col[b].first)) {
          merged.push_back(std::move(dst[a]));
          ++a;
        } else if (a == dst.size() || pivot_col[b].first < dst[a].first) {
          const int row = pivot_col[b].first;
          T v = Ops::sub_mul(T(0), factor, pivot_col[b].second);
          merged.emplace_back(row, std::move(v));
          ++row_count[static_cast<std::size_t>(row)];
          row_cols[static_cast<std::size_t>(row)].push_back(other);
          ++b;
        } else {
          const int row = dst[a].first;
          T v = Ops::sub_mul(dst[a].second, factor, pivot_col[b].second);
          if (Ops::is_zero(v)) {
            --row_count[static_cast<std::size_t>(row)];
          } else {
            merged.emplace_back(row, std::move(v));
          }
          ++a;
          ++b;
        }
      }
      dst = std::move(merged);
      ++version[ou];
      if (!dst.empty()) queue.emplace(dst.size(), other, version[ou]);
    }
    // Row `pivot_row` now meets only column c; drop both.
    for (const auto& [i, v] : cols[cu]) --row_count[static_cast<std::size_t>(i)];
    cols[cu].clear();
    col_alive[cu] = 0;
    ++out.units;
  }

  // Gather the dense remainder.
  std::vector<int> row_map(nrows, -1);
  int next_row = 0;
  std::vector<std::size_t> live_cols;
  for (std::size_t j = 0; j < ncols; ++j) {
    if (!col_alive[j] || cols[j].empty()) continue;
    live_cols.push_back(j);
    for (const auto& [i, v] : cols[j]) {
      if (row_map[static_cast<std::size_t>(i)] < 0) row_map[static_cast<std::size_t>(i)] = next_row++;
    }
  }
  // Keep the original relative row order for a deterministic dense phase.
  std::vector<int> used_rows;
  for (std::size_t i = 0; i < nrows; ++i) {
    if (row_map[i] >= 0) used_rows.push_back(static_cast<int>(i));
  }
  for (std::size_t k = 0; k < used_rows.size(); ++k) row_map[static_cast<std::size_t>(used_rows[k])] = static_cast<int>(k);
  out.rest.assign(used_rows.size(), std::vector<Integer>(live_cols.size(), Integer(0)));
  for (std::size_t k = 0; k < live_cols.size(); ++k) {
    for (const auto& [i, v] : cols[live_cols[k]]) {
      out.rest[static_cast<std::size_t>(row_map[static_cast<std::size_t>(i)])][k] = Ops::to(v);
    }
  }
  return out;
}

// Dense diagonalisation. Returns the absolute diagonal entries (not yet a divisor chain).
std::vector<Integer> dense_diagonal(std::vector<std::vector<Integer>> a) {
  std::vector<Integer> diag;
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a.front().size();
  std::size_t t = 0;
  while (t < rows && t < cols) {
    // Pivot: smallest non-zero |entry| in the active block, ties by lowest (row, col).
    std::size_t pr = rows, pc = cols;
    Integer best;
    for (std::size_t i = t; i < rows; ++i) {
      for (std::size_t j = t; j < cols; ++j) {
        const Integer& v = a[i][j];
        if (v == 0) continue;
        if (pr == rows || abs(v) < best) {
          best = abs(v);
          pr = i;
          pc = j;
        }
      }
    }
    if (pr == rows) break;
    std::swap(a[t], a[pr]);
    if (pc != t) {
      for (auto& row : a) std::swap(row[t], row[pc]);
    }
    const Integer p = a[t][t];
    bool clean = true;
    for (std::size_t i = t + 1; i < rows; ++i) {
      if (a[i][t] == 0) continue;
      Integer q;
      mpz_tdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), p.get_mpz_t());
      if (q != 0) {
        for (std::size_t j = t; j < cols; ++j) {
          if (a[t][j] != 0) a[i][j] -= q * a[t][j];
        }
      }
      if (a[i][t] != 0) clean = false;
    }
    for (std::size_t j = t + 1; j < cols; ++j) {
      if (a[t][j] == 0) continue;
      Integer q;
      mpz_tdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), p.get_mpz_t());
      if (q != 0) {
        for (std::size_t i = t; i < rows; ++i) {
          if (a[i][t] != 0) a[i][j] -= q * a[i][t];
        }
      }
      if (a[t][j] != 0) clean = false;
    }
    if (!clean) continue;  // remainders are smaller than the pivot: re-pick
    diag.push_back(abs(p));
    ++t;
  }
  return diag;
}

std::vector<Integer> divisor_chain(std::vector<Integer> d) {
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      Integer g = gcd(d[i], d[j]);
      Integer l = (d[i] / g) * d[j];
      d[i] = g;
      d[j] = l;
    }
  }
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace

SmithResult smith_normal_form(const SparseIntMatrix& m) {
  Reduced reduced;
  try {
    reduced = eliminate_units<SmallOps>(m);
  } catch (const Overflow&) {
    reduced = eliminate_units<BigOps>(m);
  }
  std::vector<Integer> factors(reduced.units, Integer(1));
  auto tail = divisor_chain(dense_diagonal(std::move(reduced.rest)));
  factors.insert(factors.end(), tail.begin(), tail.end());
  std::sort(factors.begin(), factors.end());
  SmithResult out;
  out.rank = factors.size();
  out.invariant_factors = std::move(factors);
  return out;
}

SmithResult smith_normal_form(const std::vector<std::vector<Integer>>& dense) {
  return smith_normal_form(SparseIntMatrix::from_dense(dense));
}

std::int64_t BettiVector::euler() const {
  std::int64_t chi = 0;
  for (std::size_t k = 0; k < free_ranks.size(); ++k) chi += (k % 2 == 0 ? 1 : -1) * free_ranks[k];
  return chi;
}

std::string to_string(const BettiVector& b) {
  std::string out = "(";
  for (std::size_t k = 0; k < b.free_ranks.size(); ++k) {
    if (k) out += ",";
    out += std::to_string(b.free_ranks[k]);
  }
  out += ")";
  for (std::size_t k = 0; k < b.torsion.size(); ++k) {
    for (const auto& t : b.torsion[k]) out += " Z/" + to_string(t) + "@" + std::to_string(k);
  }
  return out;
}

ChainComplex chain_complex(const SimplicialComplex& k, int max_dim) {
  ChainComplex cc;
  cc.faces = k.faces_by_dimension(max_dim);
  cc.boundaries.resize(cc.faces.size());
  for (std::size_t d = 1; d < cc.faces.size(); ++d) {
    const auto& lower = cc.faces[d - 1];
    const auto& upper = cc.faces[d];
    std::unordered_map<Simplex, int, SimplexHash> index;
    index.reserve(lower.size());
    for (std::size_t i = 0; i < lower.size(); ++i) index.emplace(lower[i], static_cast<int>(i));
    SparseIntMatrix m(static_cast<int>(lower.size()), static_cast<int>(upper.size()));
    for (std::size_t j = 0; j < upper.size(); ++j) {
      auto& col = m.columns[j];
      for (std::size_t i = 0; i < upper[j].size(); ++i) {
        col.emplace_back(index.at(upper[j].facet(i)), Integer(i % 2 == 0 ? 1 : -1));
      }
      std::sort(col.begin(), col.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    }
    cc.boundaries[d] = std::move(m);
  }
  return cc;
}

BettiVector betti(const SimplicialComplex& k, int max_degree) {
  BettiVector out;
  if (k.empty()) return out;
  const int top_degree = max_degree < 0 ? k.dim() : std::min(k.dim(), max_degree);
  const ChainComplex cc = chain_complex(k, top_degree + 1);
  const std::size_t nmat = cc.faces.size();

  // Degrees are independent; results are collected by index so order cannot matter.
  std::vector<SmithResult> snf(nmat);
  const unsigned threads = worker_threads();
  if (threads > 1 && nmat > 2) {
    std::vector<std::future<SmithResult>> jobs;
    for (std::size_t d = 1; d < nmat; ++d) {
      jobs.push_back(std::async(std::launch::async, [&cc, d] { return smith_normal_form(cc.boundaries[d]); }));
    }
    for (std::size_t d = 1; d < nmat; ++d) snf[d] = jobs[d - 1].get();
  } else {
    for (std::size_t d = 1; d < nmat; ++d) snf[d] = smith_normal_form(cc.boundaries[d]);
  }

  out.free_ranks.resize(static_cast<std::size_t>(top_degree + 1));
  out.torsion.resize(static_cast<std::size_t>(top_degree + 1));
  for (int d = 0; d <= top_degree; ++d) {
    const std::size_t du = static_cast<std::size_t>(d);
    const std::int64_t faces = static_cast<std::int64_t>(cc.faces[du].size());
    const std::int64_t rank_down = d >= 1 ? static_cast<std::int64_t>(snf[du].rank) : 0;
    const std::int64_t rank_up = du + 1 < nmat ? static_cast<std::int64_t>(snf[du + 1].rank) : 0;
    out.free_ranks[du] = faces - rank_down - rank_up;
    if (du + 1 < nmat) {
      for (const auto& f : snf[du + 1].invariant_factors) {
        if (f > 1) out.torsion[du].push_back(f);
      }
    }
  }
  return out;
}

BettiVector reduced_betti(const SimplicialComplex& k, int max_degree) {
  if (k.empty()) throw Error(ErrorKind::EmptyComplex, "reduced homology of the void complex");
  BettiVector b = betti(k, max_degree);
  b.free_ranks[0] -= 1;
  return b;
}

std::vector<SimplicialComplex> connected_components(const SimplicialComplex& k) {
  const auto verts = k.vertices();
  std::unordered_map<int, std::size_t> pos;
  for (std::size_t i = 0; i < verts.size(); ++i) pos.emplace(verts[i], i);
  std::vector<std::size_t> parent(verts.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (const auto& s : k.maximal_simplices()) {
    std::size_t root = find(pos.at(s.front()));
    for (int v : s.vertices()) {
      std::size_t r = find(pos.at(v));
      if (r != root) parent[std::max(r, root)] = std::min(r, root), root = std::min(r, root);
    }
  }
  std::map<std::size_t, std::vector<Simplex>> groups;
  for (const auto& s : k.maximal_simplices()) groups[find(pos.at(s.front()))].push_back(s);
  std::vector<SimplicialComplex> out;
  for (auto& [root, simplices] : groups) {
    auto c = SimplicialComplex::from_simplices(std::move(simplices));
    for (const auto& [v, label] : k.labels()) {
      auto it = pos.find(v);
      if (it != pos.end() && find(it->second) == root) c.set_label(v, label);
    }
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace telescope
