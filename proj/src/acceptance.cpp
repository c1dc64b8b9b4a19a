#include "telescope/acceptance.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "telescope/bounds.hpp"
#include "telescope/constructible.hpp"
#include "telescope/fibred.hpp"
#include "telescope/homology.hpp"
#include "telescope/marking.hpp"
#include "telescope/mcomplex.hpp"

namespace telescope {

namespace {

// Collects failures; a criterion passes when none were recorded.
struct Checks {
  std::vector<std::string> failures;
  std::string summary;

  void expect(bool ok, const std::string& what) {
    if (!ok && failures.size() < 5) failures.push_back(what);
    if (!ok) ++failed;
  }
  int failed = 0;
};

std::string join_ranks(const std::vector<std::int64_t>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out + ")";
}

// ---------------------------------------------------------------- M complexes

MSpec random_spec(std::mt19937_64& rng, int max_n, int max_cap) {
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

void m22_reproduction(Checks& c, std::uint64_t) {
  MSpec spec(Poset({0, 1}, {{0, 1}}), {2, 2});
  auto m = build_m(spec);
  auto f = m.complex.f_vector();
  auto b = betti(m.complex);
  c.expect(f == std::vector<std::int64_t>{6, 9, 4}, "f-vector " + join_ranks(f));
  c.expect(b.free_ranks == std::vector<std::int64_t>{1, 0, 0}, "Betti " + to_string(b));
  const bool collapsible = collapse(m.complex) == CollapseResult::Collapsible;
  c.expect(collapsible, "not certified collapsible");
  c.summary = "f=" + join_ranks(f) + " betti=" + to_string(b) + (collapsible ? " collapsible" : "");
}

void m_connectivity(Checks& c, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x2a);
  int checked_degrees = 0;
  for (int trial = 0; trial < 100; ++trial) {
    auto spec = random_spec(rng, 3, 3);
    auto m = build_m(spec);
    if (spec.m() < 1) continue;
    auto rep = check_connectivity(m.complex, spec.m());
    checked_degrees += rep.degrees_checked;
    c.expect(rep.homology_ok, "instance " + std::to_string(trial) + ": reduced homology " + to_string(rep.reduced));
  }
  c.summary = "100 instances, " + std::to_string(checked_degrees) + " degrees checked";
}

void m_contractible(Checks& c, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x3b);
  int collapsed = 0;
  for (int trial = 0; trial < 100; ++trial) {
    auto spec = random_spec(rng, 3, 3);
    for (int p = 0; p <= spec.n(); ++p) {
      auto& cap = spec.caps[static_cast<std::size_t>(p)];
      cap = std::max(cap, spec.order.rank(p));
    }
    auto m = build_m(spec);
    auto b = betti(m.complex);
    bool point = b[0] == 1;
    for (std::size_t d = 0; d < b.size(); ++d) point = point && (d == 0 || b[d] == 0) && b.torsion[d].empty();
    c.expect(point, "instance " + std::to_string(trial) + ": Betti " + to_string(b));
    collapsed += collapse(m.complex, 32, seed + static_cast<std::uint64_t>(trial)) == CollapseResult::Collapsible;
  }
  c.expect(collapsed >= 95, "only " + std::to_string(collapsed) + " of 100 collapsed");
  c.summary = "100 instances acyclic, " + std::to_string(collapsed) + " collapsible";
}

// ---------------------------------------------------------------- telescopes

const char* kQuadrant =
    "p1: x0\np2: x1\n(or (and (> p1) (> p2)) (and (> p1) (= p2)) (and (= p1) (> p2)) (and (= p1) (= p2)))";
const char* kPuncturedDisk = "p1: x0^2 + x1^2 - 1\np2: x0^2 + x1^2\n(and (< p1) (> p2))";
const char* kTwoIntervals = "p1: x0^2 - 1\np2: 9 - x0^2\n(and (> p1) (> p2))";

double elapsed_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void telescope_homology(Checks& c, std::uint64_t) {
  TelescopeOptions o;
  o.m = 2;
  o.box = parse_box("-2,2x-2,2");
  o.depth = 8;
  o.policy = Policy::Inner;
  const std::vector<Rational> schedule{Rational(1, 10), Rational(1, 100)};
  std::string summary;
  for (auto [name, text, expected] : {std::tuple{"quadrant", kQuadrant, std::vector<std::int64_t>{1, 0}},
                                      std::tuple{"punctured disk", kPuncturedDisk, std::vector<std::int64_t>{1, 1}}}) {
    auto t0 = std::chrono::steady_clock::now();
    auto s = stabilize(parse_formula(text), o, schedule);
    double dt = elapsed_since(t0);
    c.expect(s.stable, std::string(name) + " not stable");
    c.expect(s.betti.free_ranks == expected, std::string(name) + " Betti " + to_string(s.betti));
    c.expect(dt < 30, std::string(name) + " took too long");
    summary += std::string(summary.empty() ? "" : "; ") + name + " " + to_string(s.betti) + (s.stable ? " stable" : "");
  }
  c.summary = summary;
}

void telescope_components(Checks& c, std::uint64_t) {
  TelescopeOptions o;
  o.m = 1;
  o.depth = 8;
  o.policy = Policy::Inner;
  o.box = parse_box("-4,4");
  auto two = box_components(build_telescope(parse_formula(kTwoIntervals), o).set.boxes());
  o.box = parse_box("-2,2x-2,2");
  auto quad = box_components(build_telescope(parse_formula(kQuadrant), o).set.boxes());
  c.expect(two == 2, "two intervals: " + std::to_string(two) + " components");
  c.expect(quad == 1, "quadrant: " + std::to_string(quad) + " components");
  c.summary = "two intervals " + std::to_string(two) + ", quadrant " + std::to_string(quad);
}

// ---------------------------------------------------------------- K_B and Z_K

std::set<int> all_faces(const MarkedComplex& probe) {
  std::set<int> s;
  for (std::size_t j = 0; j < probe.face_count(); ++j) s.insert(static_cast<int>(j));
  return s;
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

std::vector<MarkedComplex> triangle_markings() {
  auto r = build_complex({Simplex{0, 1, 2}});
  auto probe = mark_all_soft(r, {});
  auto faces = all_faces(probe);
  // Sign vectors of (x, y) on the closed quadrant, with the triangle's corners at the
  // origin and on the two positive axes.
  std::map<int, std::string> signs{{0, "00"}, {1, "+0"}, {2, "0+"}, {3, "+0"}, {4, "0+"}, {5, "++"}, {6, "++"}};
  return {mark_all_soft(r, faces), mark_from_signs(r, faces, signs)};
}

void k_b_and_z_k(Checks& c, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x66);
  const std::vector<Rational> values{Rational(1, 1000), Rational(1, 100), Rational(1, 20), Rational(1, 10),
                                     Rational(1, 3),    Rational(1, 2),   Rational(9, 10)};
  std::uniform_int_distribution<std::size_t> pick(0, values.size() - 1);
  long identity_points = 0, witnesses = 0, empties = 0, sampled = 0;
  for (const auto& m : triangle_markings()) {
    const auto shat = m.s_hat();
    std::vector<Simplex> simplices;
    for (const auto& layer : m.refined().faces_by_dimension()) simplices.insert(simplices.end(), layer.begin(), layer.end());
    // (a) K_B(δ,ε) ∩ K_B(δ′,ε′) = K_B(max δ, min ε).
    for (int choice = 0; choice < 8; ++choice) {
      const Rational d1 = values[pick(rng)], e1 = values[pick(rng)], d2 = values[pick(rng)], e2 = values[pick(rng)];
      for (int s = 0; s < 1000; ++s) {
        const Simplex& b = shat[rng() % shat.size()];
        std::vector<const Simplex*> around;
        for (const auto& k : simplices) {
          if (b.is_face_of(k)) around.push_back(&k);
        }
        const Simplex& k = *around[rng() % around.size()];
        auto x = random_point(rng, k, values);
        auto core = m.core(b);
        bool both = membership_k_b(x, b, core, d1, e1) && membership_k_b(x, b, core, d2, e2);
        c.expect(both == membership_k_b(x, b, core, std::max(d1, d2), std::min(e1, e2)), "intersection identity");
        ++identity_points;
      }
    }
    // (b) criterion ⇔ witness, exhaustively for m ≤ 2.
    struct EmptyCase {
      std::vector<Simplex> flag;
      std::vector<ZIndex> seq;
      Simplex k;
      int m;
    };
    std::vector<EmptyCase> empty_cases;
    for (int mm = 0; mm <= 2; ++mm) {
      auto ladder = geometric_ladder(mm);
      for (const auto& f : flags_of(m)) {
        for (const auto& seq : sequences(f.size(), mm)) {
          const bool nonempty = z_nonempty(m, f, seq, ladder);
          for (const auto& k : simplices) {
            if (!f.front().is_face_of(k)) continue;
            if (nonempty) {
              bool ok = false;
              try {
                ok = in_z(m, z_witness(m, f, seq, k, ladder), f, seq, ladder);
              } catch (const Error&) {
                ok = false;
              }
              c.expect(ok, "witness rejected");
              ++witnesses;
            } else {
              bool refused = false;
              try {
                z_witness(m, f, seq, k, ladder);
              } catch (const Error& e) {
                refused = e.kind() == ErrorKind::CriterionFails;
              }
              c.expect(refused, "witness built for an empty Z_K");
              empty_cases.push_back({f, seq, k, mm});
              ++empties;
            }
          }
        }
      }
    }
    // 10⁴ points over the empty cases, half of them per marking.
    for (int s = 0; s < 5000 && !empty_cases.empty(); ++s) {
      const auto& e = empty_cases[rng() % empty_cases.size()];
      auto ladder = geometric_ladder(e.m);
      std::vector<Rational> scales{Rational(1)};
      scales.insert(scales.end(), ladder.epsilons.begin(), ladder.epsilons.end());
      scales.insert(scales.end(), ladder.deltas.begin(), ladder.deltas.end());
      c.expect(!in_z(m, random_point(rng, e.k, scales), e.flag, e.seq, ladder), "point found in an empty Z_K");
      ++sampled;
    }
  }
  c.summary = std::to_string(identity_points) + " identity points, " + std::to_string(witnesses) + " witnesses, " +
              std::to_string(empties) + " empty cases, " + std::to_string(sampled) + " samples";
}

// ---------------------------------------------------------------- fibred powers

BoxComplex random_box_complex(std::mt19937_64& rng, int dim, int count) {
  std::uniform_int_distribution<int> coord(0, 6);
  BoxComplex out{dim, {}};
  for (int k = 0; k < count; ++k) {
    std::vector<Rational> lo, hi;
    for (int i = 0; i < dim; ++i) {
      int a = coord(rng), b = coord(rng);
      if (a > b) std::swap(a, b);
      if (a == b) ++b;
      lo.emplace_back(a);
      hi.emplace_back(b);
    }
    out.boxes.emplace_back(lo, hi);
  }
  return out;
}

void spectral(Checks& c, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x77);
  auto worked = parse_boxes("0,2x0,1\n1,3x2,3\n");
  auto k0 = check_inequality(worked, 1, 0), k1 = check_inequality(worked, 1, 1);
  c.expect(k0.lhs == 1 && k0.rhs == 2, "worked example k=0");
  c.expect(k1.lhs == 0 && k1.rhs == 4, "worked example k=1");
  int instances = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 2), r = 1 + static_cast<int>(rng() % 2);
    const int count = 1 + static_cast<int>(rng() % 12);
    auto t = random_box_complex(rng, n + r, count);
    for (int k = 0; k <= 2; ++k) {
      auto res = check_inequality(t, n, k);
      c.expect(res.holds, "instance " + std::to_string(trial) + " k=" + std::to_string(k) + ": " +
                              std::to_string(res.lhs) + " > " + std::to_string(res.rhs));
      ++instances;
    }
  }
  c.summary = "worked example 1<=2, 0<=4; " + std::to_string(instances) + " random (T, k) checks";
}

// ---------------------------------------------------------------- homology backend

std::size_t rational_rank(const std::vector<std::vector<Integer>>& m) {
  std::vector<std::vector<Rational>> a;
  for (const auto& row : m) a.emplace_back(row.begin(), row.end());
  std::size_t rank = 0;
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  for (std::size_t col = 0; col < cols && rank < a.size(); ++col) {
    std::size_t p = rank;
    while (p < a.size() && a[p][col] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t i = rank + 1; i < a.size(); ++i) {
      if (a[i][col] == 0) continue;
      Rational f = a[i][col] / a[rank][col];
      for (std::size_t j = col; j < cols; ++j) a[i][j] -= f * a[rank][j];
    }
    ++rank;
  }
  return rank;
}

SimplicialComplex random_complex(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nv(2, 8), count(1, 8), dim(0, 3);
  const int n = nv(rng);
  std::vector<Simplex> out;
  for (int i = count(rng); i > 0; --i) {
    std::vector<int> verts(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) verts[static_cast<std::size_t>(v)] = v;
    std::shuffle(verts.begin(), verts.end(), rng);
    verts.resize(static_cast<std::size_t>(std::min(n, dim(rng) + 1)));
    out.emplace_back(verts);
  }
  return build_complex(out);
}

void homology_backend(Checks& c, std::uint64_t seed) {
  auto rp2 = build_complex({Simplex{0, 1, 2}, Simplex{0, 2, 3}, Simplex{0, 3, 4}, Simplex{0, 4, 5}, Simplex{0, 5, 1},
                            Simplex{1, 2, 4}, Simplex{1, 3, 4}, Simplex{1, 3, 5}, Simplex{2, 3, 5}, Simplex{2, 4, 5}});
  auto b = betti(rp2);
  c.expect(b.free_ranks == std::vector<std::int64_t>{1, 0, 0}, "RP2 free ranks " + to_string(b));
  c.expect(b.torsion.size() == 3 && b.torsion[1] == std::vector<Integer>{2} && b.torsion[0].empty() &&
               b.torsion[2].empty(),
           "RP2 torsion " + to_string(b));
  std::mt19937_64 rng(seed ^ 0x88);
  for (int trial = 0; trial < 100; ++trial) {
    auto k = random_complex(rng);
    auto cc = chain_complex(k);
    for (std::size_t d = 2; d < cc.boundaries.size(); ++d) {
      auto hi = cc.boundaries[d].to_dense(), lo = cc.boundaries[d - 1].to_dense();
      bool zero = true;
      for (std::size_t i = 0; i < lo.size() && zero; ++i) {
        for (std::size_t j = 0; j < (hi.empty() ? 0 : hi[0].size()) && zero; ++j) {
          Integer s = 0;
          for (std::size_t t = 0; t < hi.size(); ++t) s += lo[i][t] * hi[t][j];
          zero = s == 0;
        }
      }
      c.expect(zero, "boundary of boundary non-zero");
    }
    auto h = betti(k);
    c.expect(h.euler() == k.euler_characteristic(), "Euler characteristic mismatch");
    // b_d = dim C_d − rank ∂_d − rank ∂_{d+1}, all ranks over ℚ.
    for (std::size_t d = 0; d < cc.faces.size(); ++d) {
      std::size_t rank_d = d ? rational_rank(cc.boundaries[d].to_dense()) : 0;
      std::size_t rank_up = d + 1 < cc.boundaries.size() ? rational_rank(cc.boundaries[d + 1].to_dense()) : 0;
      auto expected = static_cast<std::int64_t>(cc.faces[d].size() - rank_d - rank_up);
      c.expect(h[d] == expected, "free rank differs from rational rank");
    }
  }
  c.summary = "RP2 " + to_string(b) + "; 100 random complexes";
}

// ---------------------------------------------------------------- bounds

void bounds_check(Checks& c, std::uint64_t) {
  BoundParams p;
  p.n = 3;
  p.d = 2;
  auto i = classical_bound(ClassicalVariant::Equations, p);
  p = BoundParams{};
  p.n = 2;
  p.s = 2;
  p.d = 1;
  auto ii = classical_bound(ClassicalVariant::NonStrict, p);
  c.expect(i == 18, "classical (i) = " + i.get_str());
  c.expect(ii == 9, "classical (ii) = " + ii.get_str());
  c.expect(nu(3, 1, 5) == 2, "nu");
  c.expect(telescope_polynomial_count(1, 3) == 24, "4(k+1)s");
  c.expect(fibred_polynomial_count(1, 1, 3) == 48, "4(p+1)(k+1)s");
  long comparisons = 0;
  for (long n = 1; n <= 4; ++n) {
    for (long s = 1; s <= 3; ++s) {
      for (long d = 1; d <= 3; ++d) {
        for (long cc = 1; cc <= 2; ++cc) {
          BoundParams base;
          base.n = n;
          base.s = s;
          base.d = d;
          base.k = 1;
          base.r = 1;
          base.c = cc;
          base.pfaffian = PfaffianParams{2, 1, 1};
          auto eval = [](const BoundParams& q) {
            return std::vector<Integer>{classical_bound(ClassicalVariant::Equations, q),
                                        classical_bound(ClassicalVariant::NonStrict, q),
                                        classical_bound(ClassicalVariant::Mixed, q),
                                        gv_bound_k(q),
                                        projection_bound(q).value,
                                        pfaffian_bound(PfaffianVariant::Total, q),
                                        pfaffian_bound(PfaffianVariant::DegreeK, q),
                                        pfaffian_bound(PfaffianVariant::Projection, q)};
          };
          auto v0 = eval(base);
          for (int which = 0; which < 4; ++which) {
            auto q = base;
            if (which == 0) ++q.n;
            if (which == 1) ++q.s;
            if (which == 2) ++q.d;
            if (which == 3) q.c += 1;
            auto v1 = eval(q);
            for (std::size_t t = 0; t < v0.size(); ++t) {
              // ν may drop when n grows past k+1, so the degree-k forms are only compared in s, d, c.
              if (which == 0 && (t == 3 || t == 6)) continue;
              c.expect(v0[t] <= v1[t], "bound decreased");
              ++comparisons;
            }
          }
        }
      }
    }
  }
  c.summary = "(i)=18, (ii)=9, nu=2, counts 24/48, " + std::to_string(comparisons) + " monotone comparisons";
}

// ---------------------------------------------------------------- representation algebra

SignFormula random_formula(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coef(-3, 3), rel(0, 2), kind(0, 3);
  SignFormula f;
  f.variables = 2;
  for (int i = 0; i < 2; ++i) {
    std::vector<Polynomial::Term> terms{{Rational(coef(rng), 2), {0, 0}}, {Rational(coef(rng)), {1, 0}},
                                        {Rational(coef(rng)), {0, 1}},    {Rational(coef(rng)), {2, 0}},
                                        {Rational(coef(rng)), {0, 2}},    {Rational(1), {static_cast<unsigned>(rng() % 2), 1}}};
    f.functions.emplace_back(2, terms);
  }
  auto atom = [&] { return SignFormula::Node::atom(static_cast<int>(rng() % 2), static_cast<Relation>(rel(rng))); };
  auto sub = [&]() -> SignFormula::Node {
    switch (kind(rng)) {
      case 0: return SignFormula::Node::all({atom(), atom()});
      case 1: return SignFormula::Node::any({atom(), atom()});
      case 2: return SignFormula::Node::negate(atom());
      default: return atom();
    }
  };
  f.root = rng() % 2 ? SignFormula::Node::any({sub(), sub()}) : SignFormula::Node::all({sub(), sub()});
  return f;
}

void representation_algebra(Checks& c, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x99);
  const Box box = parse_box("-3,3x-3,3");
  const int depth = 5;
  int identities = 0, inclusions = 0;
  for (int pair = 0; pair < 20; ++pair) {
    auto f1 = random_formula(rng), f2 = random_formula(rng);
    for (auto policy : {Policy::Inner, Policy::Outer}) {
      for (auto eps : {std::optional<Rational>{Rational(1, 100)}, std::optional<Rational>{}}) {
        const Rational delta(1, 10);
        auto a = approximate(relax(f1, delta, eps), box, depth, policy);
        auto b = approximate(relax(f2, delta, eps), box, depth, policy);
        c.expect(approximate(relax(conjoin(f1, f2), delta, eps), box, depth, policy) == a.intersect(b), "and vs intersection");
        c.expect(approximate(relax(disjoin(f1, f2), delta, eps), box, depth, policy) == a.unite(b), "or vs union");
        identities += 2;
      }
      for (const auto& f : {f1, f2}) {
        auto at = [&](Rational d, std::optional<Rational> e) { return approximate(relax(f, d, e), box, depth, policy); };
        c.expect(at(Rational(1, 4), Rational(1, 100)).subset_of(at(Rational(1, 4), Rational(1, 8))), "eps monotonicity");
        c.expect(at(Rational(1, 2), std::nullopt).subset_of(at(Rational(1, 8), std::nullopt)), "delta nesting");
        inclusions += 2;
      }
    }
  }
  c.summary = std::to_string(identities) + " identities, " + std::to_string(inclusions) + " inclusions on 20 pairs";
}

struct Criterion {
  int id;
  const char* name;
  double budget;
  void (*run)(Checks&, std::uint64_t);
};

const Criterion kCriteria[] = {
    {1, "M(2,2) reproduction", 1, m22_reproduction},
    {2, "M complexes are (m-1)-connected", 60, m_connectivity},
    {3, "M complexes with caps >= ranks are contractible", 120, m_contractible},
    {4, "telescope homology of quadrant and punctured disk", 60, telescope_homology},
    {5, "telescope component counts", 10, telescope_components},
    {6, "K_B intersections and Z_K witnesses", 60, k_b_and_z_k},
    {7, "fibred-power Betti inequality", 120, spectral},
    {8, "integer homology backend", 60, homology_backend},
    {9, "Betti bound formulas", 5, bounds_check},
    {10, "relaxations respect and/or and thresholds", 30, representation_algebra},
};

}  // namespace

std::vector<CriterionResult> run_acceptance(std::uint64_t seed, const std::vector<int>& only) {
  std::vector<CriterionResult> out;
  for (const auto& crit : kCriteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), crit.id) == only.end()) continue;
    CriterionResult r;
    r.id = crit.id;
    r.name = crit.name;
    r.budget_seconds = crit.budget;
    Checks checks;
    auto t0 = std::chrono::steady_clock::now();
    try {
      crit.run(checks, seed);
    } catch (const std::exception& e) {
      checks.expect(false, std::string("exception: ") + e.what());
    }
    r.seconds = elapsed_since(t0);
    const bool in_time = r.seconds < r.budget_seconds;
    r.passed = checks.failed == 0 && in_time;
    if (checks.failed) {
      r.detail = std::to_string(checks.failed) + " failed checks; first: " + checks.failures.front();
    } else {
      r.detail = checks.summary;
    }
    if (!in_time) r.detail += "; over the time budget";
    out.push_back(std::move(r));
  }
  return out;
}

std::string format_result(const CriterionResult& r) {
  char times[64];
  std::snprintf(times, sizeof times, "(%.2f s / %g s)", r.seconds, r.budget_seconds);
  std::ostringstream os;
  os << (r.passed ? "PASS" : "FAIL") << "  " << (r.id < 10 ? " " : "") << r.id << "  " << r.name << "  " << times
     << "  " << r.detail;
  return os.str();
}

}  // namespace telescope
