#include "doctest.h"

#include <functional>
#include <random>

#include "telescope/mcomplex.hpp"
#include "test_support.hpp"

using namespace telescope;

namespace {

MSpec chain_spec(std::vector<int> caps) {
  std::vector<int> el;
  std::vector<std::pair<int, int>> rel;
  for (std::size_t p = 0; p < caps.size(); ++p) {
    el.push_back(static_cast<int>(p));
    if (p) rel.emplace_back(static_cast<int>(p) - 1, static_cast<int>(p));
  }
  return MSpec(Poset(el, rel), std::move(caps));
}

MSpec random_spec(std::mt19937_64& rng, int max_n = 3, int max_cap = 3) {
  std::uniform_int_distribution<int> n_dist(0, max_n), cap(0, max_cap);
  std::bernoulli_distribution edge(0.45);
  const int n = n_dist(rng);
  std::vector<int> el, caps;
  std::vector<std::pair<int, int>> rel;
  for (int p = 0; p <= n; ++p) {
    el.push_back(p);
    caps.push_back(cap(rng));
    for (int q = 0; q < p; ++q) {
      if (edge(rng)) rel.emplace_back(q, p);
    }
  }
  return MSpec(Poset(el, rel), caps);
}

// Admissible chains by definition: sort by (p, i) and test (c) on every ordered pair.
bool admissible(const MSpec& spec, std::vector<std::pair<int, int>> chain) {
  std::sort(chain.begin(), chain.end());
  for (std::size_t nu = 0; nu < chain.size(); ++nu) {
    for (std::size_t mu = nu + 1; mu < chain.size(); ++mu) {
      if (spec.order.leq(chain[nu].first, chain[mu].first) && !(chain[mu].second > chain[nu].second)) return false;
    }
  }
  return true;
}

std::set<int> all_faces(const SimplicialComplex& r) {
  std::set<int> s;
  std::size_t n = 0;
  for (auto f : r.f_vector()) n += static_cast<std::size_t>(f);
  for (std::size_t j = 0; j < n; ++j) s.insert(static_cast<int>(j));
  return s;
}

MarkedComplex all_hard(const SimplicialComplex& r) {
  auto s = all_faces(r);
  auto probe = mark_all_soft(r, s);
  std::set<std::pair<int, int>> h;
  for (int a : s) {
    for (int b : s) {
      if (probe.face(a).is_proper_face_of(probe.face(b))) h.insert({a, b});
    }
  }
  return MarkedComplex(r, s, h);
}

std::vector<std::vector<Simplex>> flags_of(const MarkedComplex& m) {
  std::vector<std::vector<Simplex>> out;
  const auto pool = m.s_hat();
  std::function<void(std::vector<Simplex>&)> extend = [&](std::vector<Simplex>& f) {
    out.push_back(f);
    for (const auto& s : pool) {
      if (s.is_proper_face_of(f.back())) {
        f.push_back(s);
        extend(f);
        f.pop_back();
      }
    }
  };
  for (const auto& s : pool) {
    std::vector<Simplex> f{s};
    extend(f);
  }
  return out;
}

// All index sequences of a given length over 0..m.
std::vector<std::vector<ZIndex>> sequences(std::size_t length, int m) {
  std::vector<std::vector<ZIndex>> out;
  std::vector<ZIndex> cur(length);
  std::function<void(std::size_t)> rec = [&](std::size_t pos) {
    if (pos == length) {
      out.push_back(cur);
      return;
    }
    for (int i = 0; i <= m; ++i) {
      for (int j = 0; j <= m; ++j) {
        cur[pos] = {i, j};
        rec(pos + 1);
      }
    }
  };
  rec(0);
  return out;
}

BaryPoint random_point(std::mt19937_64& rng, const Simplex& k, const std::vector<Rational>& scales) {
  std::uniform_int_distribution<std::size_t> pick(0, scales.size() - 1);
  std::uniform_int_distribution<int> jitter(1, 999);
  std::map<int, Rational> raw;
  Rational sum = 0;
  for (int v : k.vertices()) {
    Rational w = scales[pick(rng)] * Rational(jitter(rng), 500);
    w.canonicalize();
    raw[v] = w;
    sum += w;
  }
  for (auto& [v, w] : raw) {
    w /= sum;
    w.canonicalize();
  }
  return BaryPoint(k, raw);
}

}  // namespace

TEST_CASE("M complex examples") {
  auto m22 = build_m(chain_spec({2, 2}));
  CHECK(m22.complex.f_vector() == std::vector<std::int64_t>{6, 9, 4});
  CHECK(betti(m22.complex).free_ranks == std::vector<std::int64_t>{1, 0, 0});

  auto anti = build_m(MSpec(Poset({0, 1}, {}), {1, 1}));
  CHECK(anti.complex.f_vector() == std::vector<std::int64_t>{4, 6, 4, 1});
  CHECK(betti(anti.complex).free_ranks == std::vector<std::int64_t>{1, 0, 0, 0});

  auto single = build_m(MSpec(Poset({0}, {}), {3}));
  CHECK(single.complex == build_complex({Simplex{0, 1, 2, 3}}));

  CHECK_THROWS_AS(MSpec(Poset({0, 1}, {{1, 0}}), {1, 1}), Error);
  CHECK_THROWS_AS(MSpec(Poset({0, 1}, {}), {1}), Error);
  CHECK_THROWS_AS(MSpec(Poset({0, 1}, {}), {1, -1}), Error);
  CHECK(MSpec(Poset({0, 1, 2}, {}), {4, 2, 3}).m() == 2);
  CHECK(MSpec(Poset({0, 1, 2}, {}), {1, 2, 3}).m_with_zero() == 1);
}

TEST_CASE("M complex faces are exactly the admissible chains") {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 40; ++trial) {
    auto spec = random_spec(rng, 3, 2);
    auto m = build_m(spec);
    const auto& lab = m.vertex_label;
    REQUIRE(lab.size() <= 12);
    std::int64_t count = 0;
    for (std::uint32_t mask = 1; mask < (1u << lab.size()); ++mask) {
      std::vector<int> ids;
      std::vector<std::pair<int, int>> chain;
      for (std::size_t v = 0; v < lab.size(); ++v) {
        if (mask & (1u << v)) {
          ids.push_back(static_cast<int>(v));
          chain.push_back(lab[v]);
        }
      }
      bool ok = admissible(spec, chain);
      count += ok;
      CHECK(m.complex.contains(Simplex(ids)) == ok);
    }
    std::int64_t faces = 0;
    for (auto f : m.complex.f_vector()) faces += f;
    CHECK(faces == count);
  }
}

TEST_CASE("connectivity of M complexes") {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 60; ++trial) {
    auto spec = random_spec(rng);
    auto m = build_m(spec);
    if (spec.m() >= 1) CHECK(check_connectivity(m.complex, spec.m()).homology_ok);
    if (spec.m_with_zero() >= 1) CHECK(check_connectivity(m.complex, spec.m_with_zero()).homology_ok);
  }
}

TEST_CASE("caps above ranks give contractible M complexes") {
  std::mt19937_64 rng(79);
  int cases = 0, collapsed = 0;
  for (int trial = 0; trial < 40; ++trial) {
    auto spec = random_spec(rng, 3, 2);
    for (int p = 0; p <= spec.n(); ++p) {
      auto& c = spec.caps[static_cast<std::size_t>(p)];
      c = std::max(c, spec.order.rank(p));
    }
    auto m = build_m(spec);
    auto b = reduced_betti(m.complex);
    for (std::size_t d = 0; d < b.size(); ++d) {
      CHECK(b[d] == 0);
      CHECK(b.torsion[d].empty());
    }
    ++cases;
    collapsed += collapse(m.complex, 32, static_cast<std::uint64_t>(trial)) == CollapseResult::Collapsible;
  }
  CHECK(collapsed * 100 >= cases * 95);
}

TEST_CASE("connectivity and collapse examples") {
  auto circle = build_complex({Simplex{0, 1}, Simplex{1, 2}, Simplex{0, 2}});
  auto rep = check_connectivity(circle, 2);
  CHECK_FALSE(rep.homology_ok);
  CHECK(rep.degrees_checked == 2);
  CHECK(check_connectivity(circle, 1).homology_ok);
  CHECK(check_connectivity(build_complex({Simplex{4}}), 5).homology_ok);
  CHECK(check_connectivity(build_m(chain_spec({2, 2})).complex, 2).homology_ok);
  CHECK_THROWS_AS(check_connectivity(circle, 0), Error);

  CHECK(collapse(build_complex({Simplex{0, 1, 2, 3}})) == CollapseResult::Collapsible);
  CHECK(collapse(build_complex({Simplex{0}})) == CollapseResult::Collapsible);
  CHECK(collapse(circle) == CollapseResult::Unknown);
  CHECK(collapse(build_complex({Simplex{0}, Simplex{1}})) == CollapseResult::Unknown);
  CHECK(collapse(build_m(chain_spec({2, 2})).complex) == CollapseResult::Collapsible);
  // Same seed, same answer.
  auto tet = skeleton(build_complex({Simplex{0, 1, 2, 3}}), 2);
  CHECK(collapse(tet, 4, 9) == collapse(tet, 4, 9));
}

TEST_CASE("ladder parameters") {
  auto l = geometric_ladder(2);
  REQUIRE(l.m() == 2);
  CHECK(l.epsilons[0] == Rational(1, 1000000));
  CHECK(l.deltas[0] == Rational(1, 100000));
  CHECK(l.epsilons[2] == Rational(1, 100));
  CHECK(l.deltas[2] == Rational(1, 10));
  CHECK_THROWS_AS(LadderParams({Rational(1, 2)}, {Rational(1, 3)}), Error);
  CHECK_THROWS_AS(LadderParams({Rational(1, 3), Rational(1, 4)}, {Rational(1, 2), Rational(1, 2)}), Error);
  CHECK_THROWS_AS(LadderParams({Rational(1, 3)}, {Rational(1)}), Error);
  CHECK_THROWS_AS(geometric_ladder(1, Rational(3, 2)), Error);
}

TEST_CASE("K_B membership") {
  auto r = build_complex({Simplex{0, 1, 2}});
  auto m = mark_all_soft(r, all_faces(r));
  const Simplex k{0, 3, 6};
  const Simplex b{3, 6};
  auto core = m.core(b);
  BaryPoint centre(k, {{0, Rational(1, 10)}, {3, Rational(9, 20)}, {6, Rational(9, 20)}});
  CHECK(membership_k_b(centre, b, core, Rational(1, 5), Rational(1, 5)));
  CHECK_FALSE(membership_k_b(centre, b, core, Rational(1, 5), Rational(1, 20)));
  CHECK(membership_k_b(centre, b, core, std::nullopt, Rational(1, 5)));
  BaryPoint hollow(k, {{0, Rational(1, 10)}, {3, Rational(9, 10)}});
  CHECK_FALSE(membership_k_b(hollow, b, core, Rational(1, 100), Rational(1, 2)));
  BaryPoint no_core(k, {{0, Rational(1, 10)}, {3, Rational(8, 10)}, {6, Rational(1, 10)}});
  CHECK(core == std::vector<int>{6});
  CHECK_FALSE(membership_k_b(no_core, b, core, Rational(1, 5), Rational(1, 2)));
  CHECK_THROWS_AS(membership_k_b(centre, Simplex{1, 3}, {3}, std::nullopt, Rational(1, 2)), Error);
  CHECK_THROWS_AS(BaryPoint(k, {{0, Rational(1, 2)}}), Error);
  CHECK_THROWS_AS(BaryPoint(k, {{0, Rational(3, 2)}, {3, Rational(-1, 2)}}), Error);
  CHECK_THROWS_AS(BaryPoint(k, {{1, Rational(1)}}), Error);
}

TEST_CASE("intersection of two K_B sets is a single K_B set") {
  auto r = build_complex({Simplex{0, 1, 2}});
  auto m = mark_all_soft(r, all_faces(r));
  const Simplex k{0, 3, 6};
  std::mt19937_64 rng(83);
  const std::vector<Rational> values{Rational(1, 1000), Rational(1, 100), Rational(1, 20), Rational(1, 10),
                                     Rational(1, 3), Rational(1, 2), Rational(9, 10)};
  std::uniform_int_distribution<std::size_t> pick(0, values.size() - 1);
  for (const Simplex& b : {Simplex{3, 6}, Simplex{0, 3, 6}, Simplex{6}}) {
    auto core = m.core(b);
    for (int trial = 0; trial < 1000; ++trial) {
      auto d1 = values[pick(rng)], e1 = values[pick(rng)], d2 = values[pick(rng)], e2 = values[pick(rng)];
      auto x = random_point(rng, k, values);
      bool both = membership_k_b(x, b, core, d1, e1) && membership_k_b(x, b, core, d2, e2);
      CHECK(both == membership_k_b(x, b, core, std::max(d1, d2), std::min(e1, e2)));
    }
  }
}

TEST_CASE("Z_K criterion examples") {
  auto r = build_complex({Simplex{0, 1, 2}});
  auto m = mark_all_soft(r, all_faces(r));
  auto l = geometric_ladder(1);
  CHECK(z_nonempty(m, {Simplex{3, 6}}, {{1, 0}}, l));
  // {3} ≻ {3,6}: need j_1 > i_0.
  REQUIRE(m.succ(Simplex{3}, Simplex{3, 6}));
  CHECK_FALSE(z_nonempty(m, {Simplex{3, 6}, Simplex{3}}, {{0, 0}, {0, 0}}, l));
  CHECK(z_nonempty(m, {Simplex{3, 6}, Simplex{3}}, {{0, 0}, {0, 1}}, l));
  CHECK_THROWS_AS(z_witness(m, {Simplex{3, 6}, Simplex{3}}, {{0, 0}, {0, 0}}, Simplex{3, 6}, l), Error);
  CHECK_THROWS_AS(z_nonempty(m, {Simplex{3}, Simplex{3, 6}}, {{0, 0}, {0, 0}}, l), Error);
  CHECK_THROWS_AS(z_nonempty(m, {Simplex{3, 6}}, {{0, 2}}, l), Error);
  CHECK_THROWS_AS(z_witness(m, {Simplex{3, 6}}, {{0, 0}}, Simplex{1, 5, 6}, l), Error);
  try {
    z_witness(m, {Simplex{3, 6}, Simplex{3}}, {{1, 1}, {0, 1}}, Simplex{0, 3, 6}, l);
    FAIL("inadmissible sequence accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CriterionFails);
  }
  auto w = z_witness(m, {Simplex{3, 6}}, {{1, 0}}, Simplex{0, 3, 6}, l);
  CHECK(membership_k_b(w, Simplex{3, 6}, m.core(Simplex{3, 6}), l.deltas[1], l.epsilons[0]));
}

TEST_CASE("Z_K criterion agrees with the witness construction") {
  auto r = build_complex({Simplex{0, 1, 2}});
  for (const auto& m : {mark_all_soft(r, all_faces(r)), all_hard(r)}) {
    for (int mm = 0; mm <= 2; ++mm) {
      auto l = geometric_ladder(mm);
      for (const auto& f : flags_of(m)) {
        for (const auto& seq : sequences(f.size(), mm)) {
          const bool ne = z_nonempty(m, f, seq, l);
          for (const auto& layer : m.refined().faces_by_dimension()) {
            for (const auto& k : layer) {
              if (!f.front().is_face_of(k)) continue;
              if (ne) {
                auto x = z_witness(m, f, seq, k, l);
                CHECK(in_z(m, x, f, seq, l));
              } else {
                CHECK_THROWS_AS(z_witness(m, f, seq, k, l), Error);
              }
            }
          }
        }
      }
    }
  }
}

TEST_CASE("empty Z_K admits no sampled points") {
  auto r = build_complex({Simplex{0, 1, 2}});
  auto m = mark_all_soft(r, all_faces(r));
  auto l = geometric_ladder(1);
  std::vector<Rational> scales{Rational(1)};
  for (const auto& e : l.epsilons) scales.push_back(e);
  for (const auto& d : l.deltas) scales.push_back(d);
  std::mt19937_64 rng(89);
  int empties = 0;
  for (const auto& f : flags_of(m)) {
    if (f.size() < 2) continue;
    for (const auto& seq : sequences(f.size(), 1)) {
      if (z_nonempty(m, f, seq, l)) continue;
      ++empties;
      for (const auto& layer : m.refined().faces_by_dimension()) {
        for (const auto& k : layer) {
          if (!f.front().is_face_of(k)) continue;
          for (int s = 0; s < 20; ++s) CHECK_FALSE(in_z(m, random_point(rng, k, scales), f, seq, l));
        }
      }
    }
  }
  CHECK(empties > 0);
}

TEST_CASE("M_B complexes") {
  auto r = build_complex({Simplex{0, 1, 2}});
  auto soft = mark_all_soft(r, all_faces(r));
  // B a vertex of R̂: S_B = {B}, so M_B is a solid m-simplex.
  auto point = build_m_b(soft, Simplex{0}, 3);
  CHECK(point.complex == build_complex({Simplex{0, 1, 2, 3}}));

  // S = {3}: S_B of B = {1,3} is the nested pair {3} ⊂ {1,3}, unrelated by ≻.
  auto single = mark_all_soft(r, {3});
  auto mb = build_m_b(single, Simplex{1, 3}, 2);
  auto mm = build_m(MSpec(Poset({0, 1}, {}), {2, 2}));
  CHECK(mb.complex.f_vector() == mm.complex.f_vector());
  CHECK(betti(mb.complex) == betti(mm.complex));

  CHECK_THROWS_AS(build_m_b(single, Simplex{1}, 2), Error);

  std::mt19937_64 rng(97);
  std::bernoulli_distribution coin(0.5);
  for (int trial = 0; trial < 10; ++trial) {
    auto s = all_faces(r);
    std::set<std::pair<int, int>> hard;
    for (int a : s) {
      for (int b : s) {
        if (soft.face(a).is_proper_face_of(soft.face(b)) && coin(rng)) hard.insert({a, b});
      }
    }
    MarkedComplex marked(r, s, hard);
    for (const Simplex& b : {Simplex{0, 3, 6}, Simplex{1, 5, 6}, Simplex{3, 6}}) {
      for (int m = 1; m <= 2; ++m) {
        auto rep = check_connectivity(build_m_b(marked, b, m).complex, m);
        CHECK(rep.homology_ok);
      }
    }
  }
}
