#include "telescope/fibred.hpp"

#include <algorithm>
#include <future>

namespace telescope {

namespace {

void check_projection(const BoxComplex& t, int n) {
  if (t.boxes.empty()) throw Error(ErrorKind::InvalidParams, "fibred powers need a non-empty box set");
  if (n < 1 || n >= t.n) throw Error(ErrorKind::InvalidParams, "projection must keep between 1 and dim - 1 coordinates");
}

// All boxes whose tuples start with `first`.
std::vector<Box> tuples_from(const BoxComplex& t, std::size_t n, std::size_t first, int p) {
  std::vector<Box> out;
  const std::size_t count = t.boxes.size();
  std::vector<std::size_t> tuple{first};
  std::vector<Rational> lo(t.boxes[first].lo.begin(), t.boxes[first].lo.begin() + static_cast<long>(n));
  std::vector<Rational> hi(t.boxes[first].hi.begin(), t.boxes[first].hi.begin() + static_cast<long>(n));
  // Depth-first over tuples, carrying the running intersection of x-shadows.
  auto recurse = [&](auto&& self, const std::vector<Rational>& l, const std::vector<Rational>& h) -> void {
    if (static_cast<int>(tuple.size()) == p + 1) {
      Box b;
      b.lo = l;
      b.hi = h;
      for (auto j : tuple) {
        b.lo.insert(b.lo.end(), t.boxes[j].lo.begin() + static_cast<long>(n), t.boxes[j].lo.end());
        b.hi.insert(b.hi.end(), t.boxes[j].hi.begin() + static_cast<long>(n), t.boxes[j].hi.end());
      }
      out.push_back(std::move(b));
      return;
    }
    for (std::size_t j = 0; j < count; ++j) {
      std::vector<Rational> nl = l, nh = h;
      bool meets = true;
      for (std::size_t i = 0; i < n && meets; ++i) {
        nl[i] = std::max(nl[i], t.boxes[j].lo[i]);
        nh[i] = std::min(nh[i], t.boxes[j].hi[i]);
        meets = nl[i] <= nh[i];
      }
      if (!meets) continue;
      tuple.push_back(j);
      self(self, nl, nh);
      tuple.pop_back();
    }
  };
  recurse(recurse, lo, hi);
  return out;
}

}  // namespace

FibredPower fibred_power(const BoxComplex& t, int n, int p) {
  check_projection(t, n);
  if (p < 0 || p > 4) throw Error(ErrorKind::InvalidParams, "p must lie in 0..4");
  const int r = t.n - n;
  FibredPower w{n, r, p, BoxComplex{n + (p + 1) * r, {}}};
  const std::size_t count = t.boxes.size();
  const unsigned threads = std::min<unsigned>(worker_threads(), static_cast<unsigned>(count));
  std::vector<std::vector<Box>> parts(count);
  if (threads > 1 && p > 0) {
    std::vector<std::future<void>> jobs;
    for (unsigned w_i = 0; w_i < threads; ++w_i) {
      jobs.push_back(std::async(std::launch::async, [&, w_i] {
        for (std::size_t first = w_i; first < count; first += threads) {
          parts[first] = tuples_from(t, static_cast<std::size_t>(n), first, p);
        }
      }));
    }
    for (auto& j : jobs) j.get();
  } else {
    for (std::size_t first = 0; first < count; ++first) parts[first] = tuples_from(t, static_cast<std::size_t>(n), first, p);
  }
  for (auto& part : parts) {
    for (auto& b : part) w.boxes.boxes.push_back(std::move(b));
  }
  w.boxes = w.boxes.reduced();
  return w;
}

FibredPower permute_fibres(const FibredPower& w, const std::vector<int>& perm) {
  std::vector<int> sorted = perm;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] != static_cast<int>(i) || sorted.size() != static_cast<std::size_t>(w.p + 1)) {
      throw Error(ErrorKind::InvalidParams, "not a permutation of the fibre blocks");
    }
  }
  FibredPower out = w;
  const auto n = static_cast<std::size_t>(w.n), r = static_cast<std::size_t>(w.r);
  for (auto& b : out.boxes.boxes) {
    auto lo = b.lo, hi = b.hi;
    for (std::size_t i = 0; i < perm.size(); ++i) {
      const std::size_t from = n + static_cast<std::size_t>(perm[i]) * r, to = n + i * r;
      std::copy(b.lo.begin() + static_cast<long>(from), b.lo.begin() + static_cast<long>(from + r), lo.begin() + static_cast<long>(to));
      std::copy(b.hi.begin() + static_cast<long>(from), b.hi.begin() + static_cast<long>(from + r), hi.begin() + static_cast<long>(to));
    }
    b.lo = std::move(lo);
    b.hi = std::move(hi);
  }
  out.boxes = out.boxes.reduced();
  return out;
}

SpectralBound spectral_upper_bound(const BoxComplex& t, int n, int k) {
  if (k < 0 || k > 4) throw Error(ErrorKind::InvalidParams, "k must lie in 0..4");
  check_projection(t, n);
  SpectralBound out;
  for (int p = 0; p <= k; ++p) {
    const int q = k - p;
    auto w = fibred_power(t, n, p);
    std::int64_t b = box_homology(w.boxes, q)[static_cast<std::size_t>(q)];
    out.table.push_back({p, q, b});
    out.bound += b;
  }
  return out;
}

InequalityCheck check_inequality(const BoxComplex& t, int n, int k) {
  auto bound = spectral_upper_bound(t, n, k);
  InequalityCheck out;
  out.lhs = box_homology(project(t, n), k)[static_cast<std::size_t>(k)];
  out.rhs = bound.bound;
  out.holds = out.lhs <= out.rhs;
  out.table = std::move(bound.table);
  return out;
}

}  // namespace telescope
