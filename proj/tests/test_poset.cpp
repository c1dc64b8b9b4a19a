#include "doctest.h"

#include <random>

#include "telescope/homology.hpp"
#include "telescope/poset.hpp"
#include "test_support.hpp"

using namespace telescope;

namespace {

// Chains enumerated directly as subsets, for small posets.
std::vector<std::vector<int>> brute_chains(const Poset& p) {
  const auto& el = p.elements();
  std::vector<std::vector<int>> out;
  for (std::uint32_t mask = 1; mask < (1u << el.size()); ++mask) {
    std::vector<int> s;
    for (std::size_t i = 0; i < el.size(); ++i) {
      if (mask & (1u << i)) s.push_back(el[i]);
    }
    bool chain = true;
    for (std::size_t i = 0; i < s.size() && chain; ++i) {
      for (std::size_t j = i + 1; j < s.size(); ++j) chain = chain && p.comparable(s[i], s[j]);
    }
    if (chain) out.push_back(s);
  }
  return out;
}

std::size_t face_count(const SimplicialComplex& k) {
  std::size_t n = 0;
  for (auto f : k.f_vector()) n += static_cast<std::size_t>(f);
  return n;
}

Poset random_poset(std::mt19937_64& rng, int n) {
  // Random DAG on a shuffled order.
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::bernoulli_distribution edge(0.3);
  std::vector<std::pair<int, int>> rel;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (edge(rng)) rel.emplace_back(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
    }
  }
  return Poset(perm, rel);
}

}  // namespace

TEST_CASE("poset construction") {
  Poset p({0, 1, 2}, {{0, 1}, {1, 2}});
  CHECK(p.less(0, 2));
  CHECK_FALSE(p.less(2, 0));
  CHECK(p.rank(0) == 0);
  CHECK(p.rank(2) == 2);
  CHECK(p.down_set(1) == std::vector<int>{0, 1});
  CHECK_THROWS_AS(Poset({0, 1}, {{0, 1}, {1, 0}}), Error);
  CHECK_THROWS_AS(Poset({0}, {{0, 0}}), Error);
  CHECK_THROWS_AS(Poset({0}, {{0, 3}}), Error);
  try {
    Poset({0, 1, 2}, {{0, 1}, {1, 2}, {2, 0}});
    FAIL("cycle accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotAPoset);
  }
}

TEST_CASE("order complex examples") {
  CHECK(order_complex(Poset({0, 1, 2}, {{0, 1}, {1, 2}})) == build_complex({Simplex{0, 1, 2}}));
  auto anti = order_complex(Poset({0, 1, 2}, {}));
  CHECK(anti.f_vector() == std::vector<std::int64_t>{3});
  auto fp = face_poset(build_complex({Simplex{0, 1}, Simplex{1, 2}, Simplex{0, 2}}));
  auto oc = order_complex(fp.poset);
  CHECK(betti(oc).free_ranks == std::vector<std::int64_t>{1, 1});
  CHECK(oc.f_vector() == std::vector<std::int64_t>{6, 6});
}

TEST_CASE("order complex simplices are exactly the chains") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    auto p = random_poset(rng, 7);
    auto oc = order_complex(p);
    auto chains = brute_chains(p);
    CHECK(face_count(oc) == chains.size());
    for (const auto& c : chains) CHECK(oc.contains(Simplex(c)));
  }
}

TEST_CASE("face poset order complex matches subdivision and Betti") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 25; ++trial) {
    auto k = testing::random_complex(rng, 6, 3, 5);
    auto fp = face_poset(k);
    auto oc = order_complex(fp.poset);
    CHECK(oc == barycentric_subdivision(k).complex);
    CHECK(betti(oc) == betti(k));
  }
}

TEST_CASE("nerve examples") {
  Cover two{{{0, {1, 2}}, {1, {2, 3}}}};
  CHECK(nerve(two) == build_complex({Simplex{0, 1}}));
  Cover three{{{0, {1, 2}}, {1, {2, 3}}, {2, {3, 1}}}};
  auto hollow = nerve(three);
  CHECK(hollow.f_vector() == std::vector<std::int64_t>{3, 3});
  CHECK(betti(hollow).free_ranks == std::vector<std::int64_t>{1, 1});

  // Path 0-1-2-3-4 covered by closed vertex stars (edge ids 10+i for edge {i,i+1}).
  Cover stars;
  for (int v = 0; v <= 4; ++v) {
    stars.members[v].insert(100 + v);
    if (v > 0) stars.members[v].insert(10 + v - 1);
    if (v < 4) stars.members[v].insert(10 + v);
  }
  auto path = build_complex({Simplex{0, 1}, Simplex{1, 2}, Simplex{2, 3}, Simplex{3, 4}});
  CHECK(betti(nerve(stars)) == betti(path));
}

TEST_CASE("nerve agrees with brute-force intersections and is monotone") {
  std::mt19937_64 rng(47);
  std::uniform_int_distribution<int> elem(0, 7);
  for (int trial = 0; trial < 40; ++trial) {
    Cover c;
    for (int i = 0; i < 5; ++i) {
      for (int t = 0; t < 3; ++t) c.members[i].insert(elem(rng));
    }
    auto n = nerve(c);
    for (std::uint32_t mask = 1; mask < 32; ++mask) {
      std::vector<int> sigma;
      std::set<int> inter;
      bool first = true;
      for (int i = 0; i < 5; ++i) {
        if (!(mask & (1u << i))) continue;
        sigma.push_back(i);
        if (first) {
          inter = c.members[i];
          first = false;
        } else {
          std::set<int> next;
          std::set_intersection(inter.begin(), inter.end(), c.members[i].begin(), c.members[i].end(),
                                std::inserter(next, next.begin()));
          inter = next;
        }
      }
      CHECK(n.contains(Simplex(sigma)) == !inter.empty());
    }
    Cover smaller = c;
    smaller.members.erase(trial % 5);
    const auto sub = nerve(smaller);
    for (const auto& s : sub.maximal_simplices()) CHECK(n.contains(s));
  }
}

TEST_CASE("flag nerve") {
  CHECK(flag_nerve(build_complex({Simplex{0}})) == build_complex({Simplex{0}}));
  auto e = flag_nerve(build_complex({Simplex{0, 1}}));
  CHECK(betti(e).free_ranks == std::vector<std::int64_t>{1, 0});
  CHECK(e.f_vector() == std::vector<std::int64_t>{3, 2});
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 30; ++trial) {
    auto k = testing::random_complex(rng, 7, 3, 6);
    CHECK(betti(flag_nerve(k)) == betti(k));
  }
}

TEST_CASE("poset fibers") {
  Poset p({0, 1, 2, 3}, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
  std::map<int, int> id{{0, 0}, {1, 1}, {2, 2}, {3, 3}};
  CHECK(poset_fiber(p, p, id, 3) == order_complex(p));
  CHECK(poset_fiber(p, p, id, 1) == order_complex(p.restrict_to({0, 1})));

  Poset point({7}, {});
  std::map<int, int> constant{{0, 7}, {1, 7}, {2, 7}, {3, 7}};
  CHECK(poset_fiber(p, point, constant, 7) == order_complex(p));

  std::map<int, int> bad{{0, 3}, {1, 0}, {2, 0}, {3, 0}};
  try {
    poset_fiber(p, p, bad, 3);
    FAIL("non-monotone map accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotMonotone);
  }
  CHECK_THROWS_AS(poset_fiber(p, p, id, 9), Error);

  // Product of chains 0<1<2 and 0<1 (element 10a+b) projected onto the first factor.
  std::vector<int> el;
  std::vector<std::pair<int, int>> rel;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 2; ++b) el.push_back(10 * a + b);
  }
  for (int x : el) {
    for (int y : el) {
      if (x != y && x / 10 <= y / 10 && x % 10 <= y % 10) rel.emplace_back(x, y);
    }
  }
  Poset prod(el, rel);
  Poset chain({0, 1, 2}, {{0, 1}, {1, 2}});
  std::map<int, int> proj;
  for (int x : el) proj[x] = x / 10;
  for (int q = 0; q < 3; ++q) {
    auto fib = poset_fiber(prod, chain, proj, q);
    std::vector<int> pre;
    for (int x : el) {
      if (x / 10 <= q) pre.push_back(x);
    }
    auto chains = brute_chains(prod.restrict_to(pre));
    CHECK(face_count(fib) == chains.size());
    CHECK(betti(fib).free_ranks[0] == 1);
  }
}

TEST_CASE("text formats") {
  auto p = parse_poset("# diamond\n0 < 1\n0 < 2\n1 < 3 # top\n2<3\n5\n");
  CHECK(p.size() == 5);
  CHECK(p.less(0, 3));
  CHECK_FALSE(p.comparable(1, 2));
  CHECK(p.contains(5));
  CHECK_THROWS_AS(parse_poset("0 1\n"), Error);
  CHECK_THROWS_AS(parse_poset("0 < x\n"), Error);
  auto c = parse_cover("0: 1 2\n1: 2 3\n# c\n2:\n");
  CHECK(c.members.size() == 3);
  CHECK(c.members[1] == std::set<int>{2, 3});
  CHECK_THROWS_AS(parse_cover("0 1 2\n"), Error);
}
