#include "doctest.h"

#include "telescope/bounds.hpp"

using namespace telescope;

namespace {

// Repeated multiplication, independent of integer_pow.
Integer slow_pow(Integer b, long e) {
  Integer out = 1;
  for (long i = 0; i < e; ++i) out *= b;
  return out;
}

BoundParams params(long n, long s, long d, long k = 0, long r = 0) {
  BoundParams p;
  p.n = n;
  p.s = s;
  p.d = d;
  p.k = k;
  p.r = r;
  return p;
}

}  // namespace

TEST_CASE("classical bounds") {
  CHECK(classical_bound(ClassicalVariant::Equations, params(3, 1, 2)) == 18);
  CHECK(classical_bound(ClassicalVariant::NonStrict, params(2, 2, 1)) == 9);
  CHECK(classical_bound(ClassicalVariant::Mixed, params(5, 1, 1)) == 1);
  auto p = params(4, 3, 5);
  p.c = 2;
  CHECK(classical_bound(ClassicalVariant::Mixed, p) == slow_pow(30, 4));
  CHECK(classical_bound(ClassicalVariant::Equations, params(1, 1, 7)) == 7);
  CHECK(parse_classical_variant("ii") == ClassicalVariant::NonStrict);
  CHECK_THROWS_AS(parse_classical_variant("iv"), Error);
  CHECK_THROWS_AS(classical_bound(ClassicalVariant::Mixed, params(0, 1, 1)), Error);
  CHECK_THROWS_AS(classical_bound(ClassicalVariant::Mixed, params(2, 0, 1)), Error);
  p.c = 0;
  CHECK_THROWS_AS(classical_bound(ClassicalVariant::Mixed, p), Error);
}

TEST_CASE("nu and the degree-k bound") {
  CHECK(nu(3, 1, 5) == 2);
  CHECK(nu(5, 0, 7) == 1);
  CHECK(nu(4, 4, 3) == 0);
  CHECK_THROWS_AS(nu(3, 4, 1), Error);
  CHECK(gv_bound_k(params(3, 5, 2, 1)) == slow_pow(2 * 5 * 2, 3));
  for (long n = 1; n <= 6; ++n) {
    for (long k = 0; k + 1 <= n; ++k) {
      // Symmetric under k ↔ n − k − 1 once s does not cap ν.
      CHECK(gv_bound_k(params(n, 50, 3, k)) == gv_bound_k(params(n, 50, 3, n - k - 1)));
      // Same shape as the mixed classical bound with s replaced by νs.
      auto q = params(n, nu(n, k, 4) * 4, 3);
      CHECK(gv_bound_k(params(n, 4, 3, k)) == classical_bound(ClassicalVariant::Mixed, q));
      CHECK(gv_bound_k(params(n, 4, 3, k)) <= classical_bound(ClassicalVariant::Mixed, params(n, 4 * 4, 3)));
    }
  }
}

TEST_CASE("projection bound") {
  auto p = params(2, 2, 2, 1, 1);
  auto b = projection_bound(p);
  REQUIRE(b.terms.size() == 2);
  CHECK(b.terms[0] == slow_pow(8, 3));
  CHECK(b.terms[1] == slow_pow(16, 4));
  CHECK(b.value == 66048);
  CHECK(b.elimination == slow_pow(4, 4));
  auto k0 = projection_bound(params(3, 2, 5, 0, 2));
  CHECK(k0.terms.size() == 1);
  CHECK(k0.value == slow_pow(10, 5));
  CHECK_THROWS_AS(projection_bound(params(2, 2, 2, 1, 0)), Error);
  CHECK(telescope_polynomial_count(1, 3) == 24);
  CHECK(fibred_polynomial_count(1, 1, 3) == 48);
  CHECK(fibred_polynomial_count(0, 2, 1) == 12);
  CHECK_THROWS_AS(fibred_polynomial_count(3, 2, 1), Error);
}

TEST_CASE("pfaffian bounds") {
  auto p = params(3, 2, 1, 1, 1);
  p.pfaffian = PfaffianParams{0, 4, 5};
  // ℓ = 0 drops the power of two and the α term.
  CHECK(pfaffian_bound(PfaffianVariant::Total, p) == slow_pow(2, 3) * slow_pow(15, 3));
  p.pfaffian = PfaffianParams{3, 2, 1};
  Integer expected = slow_pow(2, 3) * slow_pow(2, 3) * slow_pow(3 * 1 + 3 * 2, 6);
  CHECK(pfaffian_bound(PfaffianVariant::Total, p) == expected);
  // ν = min(2, 2, 2) = 2 for n=3, k=1, s=2.
  CHECK(pfaffian_bound(PfaffianVariant::DegreeK, p) == slow_pow(4, 3) * slow_pow(2, 3) * slow_pow(9, 6));
  auto one = p;
  one.k = 0;  // ν = 1
  CHECK(pfaffian_bound(PfaffianVariant::DegreeK, one) == pfaffian_bound(PfaffianVariant::Total, one));
  // (ks)^{c(n+(k+1)r)} 2^{(ckℓ)²} ((n+(k+1)r)(α+β))^{n+(k+1)r+kℓ} with n=3,k=1,r=1,s=2,ℓ=3,α=2,β=1.
  CHECK(pfaffian_bound(PfaffianVariant::Projection, p) == slow_pow(2, 5) * slow_pow(2, 9) * slow_pow(15, 8));
  auto missing = params(2, 1, 1);
  CHECK_THROWS_AS(pfaffian_bound(PfaffianVariant::Total, missing), Error);
  missing.pfaffian = PfaffianParams{-1, 0, 0};
  CHECK_THROWS_AS(pfaffian_bound(PfaffianVariant::Total, missing), Error);
  CHECK(parse_pfaffian_variant("degree_k") == PfaffianVariant::DegreeK);
  CHECK_THROWS_AS(parse_pfaffian_variant("x"), Error);
}

TEST_CASE("bounds are monotone in every parameter") {
  auto all = [](const BoundParams& p) {
    std::vector<Integer> v{classical_bound(ClassicalVariant::Equations, p), classical_bound(ClassicalVariant::NonStrict, p),
                           classical_bound(ClassicalVariant::Mixed, p), projection_bound(p).value,
                           projection_bound(p).elimination, pfaffian_bound(PfaffianVariant::Total, p),
                           pfaffian_bound(PfaffianVariant::Projection, p)};
    if (p.k <= p.n) v.push_back(gv_bound_k(p));
    return v;
  };
  auto leq = [](const std::vector<Integer>& a, const std::vector<Integer>& b) {
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
      if (a[i] > b[i]) return false;
    }
    return true;
  };
  int checked = 0;
  for (long n = 1; n <= 4; ++n) {
    for (long s = 1; s <= 4; ++s) {
      for (long d = 1; d <= 4; ++d) {
        for (long c = 1; c <= 2; ++c) {
          auto p = params(n, s, d, 1, 1);
          p.c = c;
          p.pfaffian = PfaffianParams{2, 1, 2};
          auto base = all(p);
          for (int which = 0; which < 4; ++which) {
            auto q = p;
            if (which == 0) ++q.n;
            if (which == 1) ++q.s;
            if (which == 2) ++q.d;
            if (which == 3) q.c += 1;
            CHECK(leq(base, all(q)));
            ++checked;
          }
        }
      }
    }
  }
  CHECK(checked == 512);
}
