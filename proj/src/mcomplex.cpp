#include "telescope/mcomplex.hpp"

#include <algorithm>
#include <queue>
#include <random>
#include <unordered_map>

namespace telescope {

MSpec::MSpec(Poset order_in, std::vector<int> caps_in) : order(std::move(order_in)), caps(std::move(caps_in)) {
  if (caps.empty()) throw Error(ErrorKind::InvalidParams, "at least one cap is required");
  for (int c : caps) {
    if (c < 0) throw Error(ErrorKind::InvalidParams, "caps must be non-negative");
  }
  const int n = static_cast<int>(caps.size());
  for (int x : order.elements()) {
    if (x >= n) {
      throw Error(ErrorKind::InvalidParams, "poset element " + std::to_string(x) + " has no cap (" +
                                                std::to_string(n) + " caps given)");
    }
  }
  std::vector<int> all(static_cast<std::size_t>(n));
  for (int p = 0; p < n; ++p) all[static_cast<std::size_t>(p)] = p;
  order = Poset(all, order.relations());
  for (auto [lo, hi] : order.relations()) {
    if (hi < lo) {
      throw Error(ErrorKind::NotAPoset, std::to_string(hi) + " is above " + std::to_string(lo) +
                                            " but smaller as an integer");
    }
  }
}

int MSpec::m() const {
  if (caps.size() == 1) return caps[0];
  return *std::min_element(caps.begin() + 1, caps.end());
}

int MSpec::m_with_zero() const { return *std::min_element(caps.begin(), caps.end()); }

LabelledComplex build_m(const MSpec& spec) {
  LabelledComplex out;
  for (int p = 0; p <= spec.n(); ++p) {
    for (int i = 0; i <= spec.caps[static_cast<std::size_t>(p)]; ++i) out.vertex_label.emplace_back(p, i);
  }
  const int n = static_cast<int>(out.vertex_label.size());
  std::vector<std::vector<int>> adj(out.vertex_label.size());
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      auto [p, i] = out.vertex_label[static_cast<std::size_t>(a)];
      auto [q, j] = out.vertex_label[static_cast<std::size_t>(b)];
      // p ≤ q by numbering. Same element: any two distinct levels, ordered by level.
      bool ok = p == q ? i != j : !(spec.order.less(p, q) && j <= i);
      if (ok) {
        adj[static_cast<std::size_t>(a)].push_back(b);
        adj[static_cast<std::size_t>(b)].push_back(a);
      }
    }
  }
  out.complex = clique_complex(n, adj);
  for (int v = 0; v < n; ++v) {
    auto [p, i] = out.vertex_label[static_cast<std::size_t>(v)];
    out.complex.set_label(v, "(" + std::to_string(p) + "," + std::to_string(i) + ")");
  }
  return out;
}

LabelledComplex build_m_b(const MarkedComplex& marked, const Simplex& b, int m) {
  if (m < 0) throw Error(ErrorKind::InvalidParams, "m must be non-negative");
  if (!marked.in_s_hat(b)) throw Error(ErrorKind::BNotInS, to_string(b) + " is not in the marked set");
  const auto sb = marked.s_b(b);
  LabelledComplex out;
  for (std::size_t p = 0; p < sb.size(); ++p) {
    for (int i = 0; i <= m; ++i) out.vertex_label.emplace_back(static_cast<int>(p), i);
  }
  const int n = static_cast<int>(out.vertex_label.size());
  std::vector<std::vector<int>> adj(out.vertex_label.size());
  for (int a = 0; a < n; ++a) {
    for (int c = a + 1; c < n; ++c) {
      auto [p, i] = out.vertex_label[static_cast<std::size_t>(a)];
      auto [q, j] = out.vertex_label[static_cast<std::size_t>(c)];
      const Simplex& x = sb[static_cast<std::size_t>(p)];
      const Simplex& y = sb[static_cast<std::size_t>(q)];
      bool ok = false;
      if (p == q) {
        ok = i != j;
      } else if (y.is_proper_face_of(x)) {
        ok = !(marked.succ(y, x) && j <= i);
      } else if (x.is_proper_face_of(y)) {
        ok = !(marked.succ(x, y) && i <= j);
      }
      if (ok) {
        adj[static_cast<std::size_t>(a)].push_back(c);
        adj[static_cast<std::size_t>(c)].push_back(a);
      }
    }
  }
  out.complex = clique_complex(n, adj);
  return out;
}

ConnectivityReport check_connectivity(const SimplicialComplex& k, int m) {
  if (m < 1) throw Error(ErrorKind::InvalidParams, "connectivity level m must be at least 1");
  ConnectivityReport out;
  out.degrees_checked = m;
  out.reduced = reduced_betti(k, m - 1);
  out.homology_ok = true;
  for (int d = 0; d < m; ++d) {
    const auto q = static_cast<std::size_t>(d);
    if (out.reduced[q] != 0 || (q < out.reduced.torsion.size() && !out.reduced.torsion[q].empty())) {
      out.homology_ok = false;
    }
  }
  return out;
}

namespace {

struct FaceLattice {
  std::vector<int> dim;
  std::vector<std::vector<int>> facets;
  std::vector<std::vector<int>> cofacets;
};

FaceLattice face_lattice(const SimplicialComplex& k) {
  FaceLattice lat;
  std::unordered_map<Simplex, int, SimplexHash> id;
  std::vector<Simplex> faces;
  for (auto& layer : k.faces_by_dimension()) {
    for (auto& f : layer) {
      id.emplace(f, static_cast<int>(faces.size()));
      faces.push_back(f);
    }
  }
  lat.dim.resize(faces.size());
  lat.facets.resize(faces.size());
  lat.cofacets.resize(faces.size());
  for (std::size_t f = 0; f < faces.size(); ++f) {
    lat.dim[f] = faces[f].dim();
    if (faces[f].size() < 2) continue;
    for (std::size_t i = 0; i < faces[f].size(); ++i) {
      int g = id.at(faces[f].facet(i));
      lat.facets[f].push_back(g);
      lat.cofacets[static_cast<std::size_t>(g)].push_back(static_cast<int>(f));
    }
  }
  return lat;
}

// One collapse pass. pick(candidates) returns the next candidate to try.
template <typename Picker>
bool collapse_pass(const FaceLattice& lat, Picker& picker) {
  const std::size_t n = lat.dim.size();
  std::vector<char> alive(n, 1);
  std::vector<int> live_cofacets(n);
  std::size_t remaining = n;
  for (std::size_t f = 0; f < n; ++f) {
    live_cofacets[f] = static_cast<int>(lat.cofacets[f].size());
    if (live_cofacets[f] == 1) picker.push(static_cast<int>(f));
  }
  int sigma = -1;
  while (picker.pop(sigma)) {
    const auto s = static_cast<std::size_t>(sigma);
    if (!alive[s] || live_cofacets[s] != 1) continue;
    int tau = -1;
    for (int c : lat.cofacets[s]) {
      if (alive[static_cast<std::size_t>(c)]) tau = c;
    }
    const auto t = static_cast<std::size_t>(tau);
    alive[s] = alive[t] = 0;
    remaining -= 2;
    for (int g : lat.facets[t]) {
      const auto gg = static_cast<std::size_t>(g);
      if (g != sigma && --live_cofacets[gg] == 1 && alive[gg]) picker.push(g);
    }
    for (int g : lat.facets[s]) {
      const auto gg = static_cast<std::size_t>(g);
      if (--live_cofacets[gg] == 1 && alive[gg]) picker.push(g);
    }
  }
  return remaining == 1;
}

struct TopDownPicker {
  const FaceLattice& lat;
  std::priority_queue<std::pair<int, int>> heap;  // (dim, −id)
  void push(int f) { heap.emplace(lat.dim[static_cast<std::size_t>(f)], -f); }
  bool pop(int& f) {
    if (heap.empty()) return false;
    f = -heap.top().second;
    heap.pop();
    return true;
  }
};

struct RandomPicker {
  std::mt19937_64& rng;
  std::vector<int> pool;
  void push(int f) { pool.push_back(f); }
  bool pop(int& f) {
    if (pool.empty()) return false;
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    const std::size_t i = pick(rng);
    f = pool[i];
    pool[i] = pool.back();
    pool.pop_back();
    return true;
  }
};

}  // namespace

CollapseResult collapse(const SimplicialComplex& k, int restarts, std::uint64_t seed) {
  if (k.empty()) throw Error(ErrorKind::EmptyComplex, "cannot collapse the void complex");
  const auto lat = face_lattice(k);
  TopDownPicker top{lat, {}};
  if (collapse_pass(lat, top)) return CollapseResult::Collapsible;
  std::mt19937_64 rng(seed);
  for (int r = 0; r < restarts; ++r) {
    RandomPicker random{rng, {}};
    if (collapse_pass(lat, random)) return CollapseResult::Collapsible;
  }
  return CollapseResult::Unknown;
}

LadderParams::LadderParams(std::vector<Rational> eps, std::vector<Rational> dels)
    : epsilons(std::move(eps)), deltas(std::move(dels)) {
  if (epsilons.empty() || epsilons.size() != deltas.size()) {
    throw Error(ErrorKind::BadThresholds, "need equally many epsilons and deltas (at least one)");
  }
  Rational prev = 0;
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    if (!(prev < epsilons[i] && epsilons[i] < deltas[i])) {
      throw Error(ErrorKind::BadThresholds, "thresholds must satisfy eps_0 < delta_0 < eps_1 < ... < 1");
    }
    prev = deltas[i];
  }
  if (!(prev < 1)) throw Error(ErrorKind::BadThresholds, "thresholds must stay below 1");
}

LadderParams geometric_ladder(int m, const Rational& eta) {
  if (m < 0) throw Error(ErrorKind::InvalidParams, "m must be non-negative");
  if (!(eta > 0 && eta < 1)) throw Error(ErrorKind::BadThresholds, "eta must lie in (0,1)");
  std::vector<Rational> eps, del;
  for (int i = 0; i <= m; ++i) {
    eps.push_back(rational_pow(eta, static_cast<unsigned>(2 * (m - i) + 2)));
    del.push_back(rational_pow(eta, static_cast<unsigned>(2 * (m - i) + 1)));
  }
  return LadderParams(std::move(eps), std::move(del));
}

BaryPoint::BaryPoint(Simplex k_in, std::map<int, Rational> t_in) : k(std::move(k_in)), t(std::move(t_in)) {
  Rational sum = 0;
  for (const auto& [j, v] : t) {
    if (!k.contains(j)) throw Error(ErrorKind::InvalidParams, "coordinate " + std::to_string(j) + " outside " + to_string(k));
    if (v < 0) throw Error(ErrorKind::InvalidParams, "negative barycentric coordinate");
    sum += v;
  }
  if (sum != 1) throw Error(ErrorKind::InvalidParams, "barycentric coordinates sum to " + to_string(sum));
}

Rational BaryPoint::at(int j) const {
  auto it = t.find(j);
  return it == t.end() ? Rational(0) : it->second;
}

bool membership_k_b(const BaryPoint& x, const Simplex& b, const std::vector<int>& core,
                    const std::optional<Rational>& delta, const Rational& epsilon) {
  if (!b.is_face_of(x.k)) throw Error(ErrorKind::FlagMismatch, to_string(b) + " is not a face of " + to_string(x.k));
  Rational min_in = 2, max_out = -1, mass = 0, core_mass = 0;
  for (int j : x.k.vertices()) {
    const Rational v = x.at(j);
    if (v <= 0) return false;
    if (b.contains(j)) {
      mass += v;
      min_in = std::min(min_in, v);
    } else {
      max_out = std::max(max_out, v);
    }
  }
  for (int j : core) core_mass += x.at(j);
  if (delta && !(core_mass > *delta)) return false;
  if (!(mass > 1 - epsilon)) return false;
  return min_in > max_out;
}

namespace {

void check_flag(const MarkedComplex& marked, const std::vector<Simplex>& flag, const std::vector<ZIndex>& seq,
                const LadderParams& ladder) {
  if (flag.empty() || flag.size() != seq.size()) {
    throw Error(ErrorKind::InvalidParams, "flag and index sequence must be non-empty and of equal length");
  }
  for (std::size_t nu = 0; nu < flag.size(); ++nu) {
    if (!marked.refined().contains(flag[nu]) || !marked.in_s_hat(flag[nu])) {
      throw Error(ErrorKind::NotAFlag, to_string(flag[nu]) + " is not a simplex of the marked set");
    }
    if (nu > 0 && !flag[nu].is_proper_face_of(flag[nu - 1])) {
      throw Error(ErrorKind::NotAFlag, to_string(flag[nu]) + " is not a proper face of " + to_string(flag[nu - 1]));
    }
    for (int v : {seq[nu].i, seq[nu].j}) {
      if (v < 0 || v > ladder.m()) throw Error(ErrorKind::InvalidParams, "ladder index out of range");
    }
  }
}

}  // namespace

bool z_nonempty(const MarkedComplex& marked, const std::vector<Simplex>& flag, const std::vector<ZIndex>& seq,
                const LadderParams& ladder) {
  check_flag(marked, flag, seq, ladder);
  for (std::size_t mu = 0; mu < flag.size(); ++mu) {
    for (std::size_t nu = 0; nu < flag.size(); ++nu) {
      if (marked.succ(flag[mu], flag[nu]) && !(seq[mu].j > seq[nu].i)) return false;
    }
  }
  return true;
}

bool in_z(const MarkedComplex& marked, const BaryPoint& x, const std::vector<Simplex>& flag,
          const std::vector<ZIndex>& seq, const LadderParams& ladder) {
  for (std::size_t nu = 0; nu < flag.size(); ++nu) {
    const auto& z = seq[nu];
    if (!membership_k_b(x, flag[nu], marked.core(flag[nu]), ladder.deltas[static_cast<std::size_t>(z.i)],
                        ladder.epsilons[static_cast<std::size_t>(z.j)])) {
      return false;
    }
  }
  return true;
}

BaryPoint z_witness(const MarkedComplex& marked, const std::vector<Simplex>& flag, const std::vector<ZIndex>& seq,
                    const Simplex& k, const LadderParams& ladder) {
  if (!z_nonempty(marked, flag, seq, ladder)) {
    throw Error(ErrorKind::CriterionFails, "the index sequence violates the emptiness criterion");
  }
  if (!marked.refined().contains(k) || !flag.front().is_face_of(k)) {
    throw Error(ErrorKind::FlagMismatch, to_string(flag.front()) + " is not a face of " + to_string(k));
  }
  const std::size_t count = flag.size();
  const int top = static_cast<int>(count) - 1;
  auto delta = [&](std::size_t nu) { return ladder.deltas[static_cast<std::size_t>(seq[nu].i)]; };

  // Layer values: vertices outside B_0 get γ_0, vertices of B_{ν−1} \ B_ν get
  // γ_ν + max{δ_{i_μ} : B_ν ≻ B_μ}, vertices of B_k get γ_{k+1} + max δ_{i_μ}.
  // Each core C(B_ν) meets the first layer past the last B_μ it intersects, and there
  // the value already exceeds δ_{i_ν}, so no vertex is raised to δ_{i_ν} separately.
  std::vector<Rational> gamma;
  for (int nu = 0; nu <= top + 1; ++nu) {
    Rational g = ladder.epsilons[0] * (nu + 1) / (100 * (top + 3));
    g.canonicalize();
    gamma.push_back(g);
  }
  std::map<int, Rational> t;
  for (int j : k.vertices()) {
    if (!flag.front().contains(j)) t[j] = gamma[0];
  }
  for (std::size_t nu = 1; nu < count; ++nu) {
    Rational below = 0;
    for (std::size_t mu = 0; mu < count; ++mu) {
      if (marked.succ(flag[nu], flag[mu])) below = std::max(below, delta(mu));
    }
    for (int j : flag[nu - 1].vertices()) {
      if (!flag[nu].contains(j)) t[j] = gamma[nu] + below;
    }
  }
  Rational all_max = 0;
  for (std::size_t nu = 0; nu < count; ++nu) all_max = std::max(all_max, delta(nu));
  for (int j : flag.back().vertices()) t[j] = gamma[count] + all_max;
  // (c) the smallest face of B_k absorbs the remaining mass.
  const int omega = marked.flag_order(flag.back()).back();
  Rational rest = 1;
  for (const auto& [j, v] : t) {
    if (j != omega) rest -= v;
  }
  t[omega] = rest;
  if (rest <= 0) throw Error(ErrorKind::WitnessRejected, "the remaining mass is not positive");
  BaryPoint x(k, std::move(t));
  if (!in_z(marked, x, flag, seq, ladder)) {
    throw Error(ErrorKind::WitnessRejected, "constructed point misses a factor of the intersection");
  }
  return x;
}

}  // namespace telescope
