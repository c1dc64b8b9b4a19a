#include "doctest.h"

#include <random>

#include "box_oracle.hpp"
#include "telescope/fibred.hpp"

using namespace telescope;

namespace {

BoxComplex two_boxes() { return parse_boxes("0,2x0,1\n1,3x2,3\n"); }

// (x, y_0, …, y_p) lies in W_p iff every (x, y_i) lies in T.
bool in_power(const BoxComplex& t, int n, int p, const std::vector<Rational>& pt) {
  const std::size_t r = static_cast<std::size_t>(t.n - n);
  for (int i = 0; i <= p; ++i) {
    std::vector<Rational> q(pt.begin(), pt.begin() + n);
    auto from = pt.begin() + n + static_cast<long>(static_cast<std::size_t>(i) * r);
    q.insert(q.end(), from, from + static_cast<long>(r));
    if (!t.contains(q)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("fibred power of the two-box example") {
  auto t = two_boxes();
  auto w0 = fibred_power(t, 1, 0);
  CHECK(w0.boxes.boxes == t.reduced().boxes);
  auto w1 = fibred_power(t, 1, 1);
  CHECK(w1.boxes.n == 3);
  CHECK(w1.r == 1);
  CHECK(w1.boxes.boxes.size() == 4);
  CHECK(box_homology(w1.boxes)[0] == 4);
  CHECK(box_components(w1.boxes) == 4);
  CHECK(w1.boxes.contains({Rational(3, 2), Rational(1, 2), Rational(5, 2)}));
  CHECK(!w1.boxes.contains({Rational(1, 2), Rational(1, 2), Rational(5, 2)}));
}

TEST_CASE("disjoint shadows keep only diagonal tuples") {
  auto t = parse_boxes("0,1x0,1\n2,3x5,6\n");
  auto w = fibred_power(t, 1, 2);
  CHECK(w.boxes.boxes.size() == 2);
  for (const auto& b : w.boxes.boxes) CHECK(b.lo[1] == b.lo[3]);
}

TEST_CASE("fibred powers agree with pointwise membership") {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 2), r = 1 + static_cast<int>(rng() % 2);
    auto t = testing::random_boxes(rng, n + r, 1 + static_cast<int>(rng() % 5), 4, trial % 3 == 0);
    const int p = static_cast<int>(rng() % 3);
    auto w = fibred_power(t, n, p);
    CHECK(w.boxes.n == n + (p + 1) * r);
    for (int s = 0; s < 200; ++s) {
      std::vector<Rational> pt;
      for (int i = 0; i < w.boxes.n; ++i) pt.emplace_back(static_cast<long>(rng() % 10), 2);
      for (auto& v : pt) v.canonicalize();
      CHECK(w.boxes.contains(pt) == in_power(t, n, p, pt));
    }
  }
}

TEST_CASE("fibre permutations preserve homology") {
  std::mt19937_64 rng(72);
  for (int trial = 0; trial < 10; ++trial) {
    auto t = testing::random_boxes(rng, 2, 1 + static_cast<int>(rng() % 5), 5);
    auto w = fibred_power(t, 1, 2);
    auto swapped = permute_fibres(w, {2, 0, 1});
    CHECK(box_homology(swapped.boxes) == box_homology(w.boxes));
    // The set itself is symmetric.
    CHECK(swapped.boxes.boxes.size() == w.boxes.boxes.size());
  }
  CHECK(box_homology(fibred_power(two_boxes(), 1, 0).boxes) == box_homology(two_boxes()));
  CHECK_THROWS_AS(permute_fibres(fibred_power(two_boxes(), 1, 1), {0, 0}), Error);
}

TEST_CASE("spectral bound examples") {
  auto t = two_boxes();
  auto k0 = check_inequality(t, 1, 0);
  CHECK(k0.lhs == 1);
  CHECK(k0.rhs == 2);
  CHECK(k0.holds);
  auto k1 = check_inequality(t, 1, 1);
  CHECK(k1.lhs == 0);
  CHECK(k1.rhs == 4);
  REQUIRE(k1.table.size() == 2);
  CHECK(k1.table[0].betti == 0);
  CHECK(k1.table[1].p == 1);
  CHECK(k1.table[1].betti == 4);

  auto single = parse_boxes("0,1x0,1\n");
  CHECK(spectral_upper_bound(single, 1, 0).bound == 1);
  // b_0(W_k) = 1 is the only non-zero term for k ≥ 1.
  for (int k = 1; k <= 3; ++k) {
    auto s = check_inequality(single, 1, k);
    CHECK(s.rhs == 1);
    CHECK(s.lhs == 0);
    CHECK(s.table.back().betti == 1);
  }
  auto apart = parse_boxes("0,1x0,1\n2,3x0,1\n");
  auto d = check_inequality(apart, 1, 0);
  CHECK(d.lhs == 2);
  CHECK(d.rhs == 2);

  CHECK_THROWS_AS(fibred_power(t, 2, 0), Error);
  CHECK_THROWS_AS(fibred_power(t, 1, 5), Error);
  CHECK_THROWS_AS(fibred_power(BoxComplex{2, {}}, 1, 0), Error);
  CHECK_THROWS_AS(spectral_upper_bound(t, 1, -1), Error);
}

TEST_CASE("spectral inequality on random box sets") {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 2), r = 1 + static_cast<int>(rng() % 2);
    auto t = testing::random_boxes(rng, n + r, 1 + static_cast<int>(rng() % 6), 5);
    auto rho = testing::kuhn_homology(project(t, n));
    for (int k = 0; k <= 2; ++k) {
      auto c = check_inequality(t, n, k);
      CHECK(c.holds);
      CHECK(c.lhs == rho[static_cast<std::size_t>(k)]);
    }
  }
}
