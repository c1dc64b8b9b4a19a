#include "telescope/simplicial.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace telescope {

namespace {

void check_dimension(std::size_t vertex_count) {
  if (static_cast<int>(vertex_count) - 1 > kMaxDimension) {
    throw Error(ErrorKind::DimensionLimit,
                "simplex of dimension " + std::to_string(vertex_count - 1) + " exceeds limit " +
                    std::to_string(kMaxDimension));
  }
}

}  // namespace

Simplex::Simplex(std::initializer_list<int> vertices) : Simplex(std::vector<int>(vertices)) {}

Simplex::Simplex(std::vector<int> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.empty()) throw Error(ErrorKind::InvalidSimplex, "simplex must be non-empty");
  std::sort(vertices_.begin(), vertices_.end());
  if (vertices_.front() < 0) throw Error(ErrorKind::InvalidSimplex, "negative vertex id");
  if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end()) {
    throw Error(ErrorKind::InvalidSimplex, "duplicate vertex id in " + to_string(*this));
  }
}

Simplex make_sorted_simplex(std::vector<int> sorted) { return Simplex(Simplex::Trusted{}, std::move(sorted)); }

bool Simplex::contains(int vertex) const {
  return std::binary_search(vertices_.begin(), vertices_.end(), vertex);
}

bool Simplex::is_face_of(const Simplex& other) const {
  return std::includes(other.vertices_.begin(), other.vertices_.end(), vertices_.begin(), vertices_.end());
}

Simplex Simplex::facet(std::size_t i) const {
  std::vector<int> out;
  out.reserve(vertices_.size() - 1);
  for (std::size_t j = 0; j < vertices_.size(); ++j) {
    if (j != i) out.push_back(vertices_[j]);
  }
  return Simplex(Trusted{}, std::move(out));
}

std::size_t SimplexHash::operator()(const Simplex& s) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (int v : s.vertices()) {
    h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

std::string to_string(const Simplex& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s.vertices()[i]);
  }
  return out + "}";
}

SimplicialComplex SimplicialComplex::from_simplices(std::vector<Simplex> simplices) {
  for (const auto& s : simplices) {
    if (s.empty()) throw Error(ErrorKind::InvalidSimplex, "empty simplex in complex");
    check_dimension(s.size());
  }
  std::sort(simplices.begin(), simplices.end(), [](const Simplex& a, const Simplex& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a < b;
  });
  simplices.erase(std::unique(simplices.begin(), simplices.end()), simplices.end());

  // Keep a simplex unless it is a face of an already kept (hence not smaller) one.
  std::vector<Simplex> kept;
  std::unordered_map<int, std::vector<std::size_t>> containing;
  for (auto& s : simplices) {
    bool absorbed = false;
    auto it = containing.find(s.front());
    if (it != containing.end()) {
      for (std::size_t idx : it->second) {
        if (kept[idx].size() > s.size() && s.is_face_of(kept[idx])) {
          absorbed = true;
          break;
        }
      }
    }
    if (absorbed) continue;
    for (int v : s.vertices()) containing[v].push_back(kept.size());
    kept.push_back(std::move(s));
  }
  std::sort(kept.begin(), kept.end());
  SimplicialComplex out;
  out.maximal_ = std::move(kept);
  return out;
}

int SimplicialComplex::dim() const noexcept {
  int d = -1;
  for (const auto& s : maximal_) d = std::max(d, s.dim());
  return d;
}

bool SimplicialComplex::contains(const Simplex& s) const {
  if (s.empty()) return false;
  return std::any_of(maximal_.begin(), maximal_.end(), [&](const Simplex& m) { return s.is_face_of(m); });
}

std::vector<int> SimplicialComplex::vertices() const {
  std::set<int> vs;
  for (const auto& s : maximal_) vs.insert(s.vertices().begin(), s.vertices().end());
  return {vs.begin(), vs.end()};
}

std::vector<std::vector<Simplex>> SimplicialComplex::faces_by_dimension(int max_dim) const {
  int top = dim();
  if (max_dim >= 0) top = std::min(top, max_dim);
  std::vector<std::vector<Simplex>> out(static_cast<std::size_t>(std::max(top + 1, 0)));
  std::vector<std::unordered_map<Simplex, char, SimplexHash>> seen(out.size());
  std::vector<int> idx;
  for (const auto& m : maximal_) {
    const auto& vs = m.vertices();
    const int n = static_cast<int>(vs.size());
    for (int size = 1; size <= std::min(n, top + 1); ++size) {
      auto& bucket = seen[static_cast<std::size_t>(size - 1)];
      auto& layer = out[static_cast<std::size_t>(size - 1)];
      idx.resize(static_cast<std::size_t>(size));
      std::iota(idx.begin(), idx.end(), 0);
      while (true) {
        std::vector<int> sub(static_cast<std::size_t>(size));
        for (int i = 0; i < size; ++i) sub[static_cast<std::size_t>(i)] = vs[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
        Simplex face = make_sorted_simplex(std::move(sub));
        if (bucket.emplace(face, 0).second) layer.push_back(std::move(face));
        int i = size - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - size + i) --i;
        if (i < 0) break;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < size; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
      }
    }
  }
  for (auto& layer : out) std::sort(layer.begin(), layer.end());
  return out;
}

std::vector<std::int64_t> SimplicialComplex::f_vector() const {
  auto faces = faces_by_dimension();
  std::vector<std::int64_t> f;
  f.reserve(faces.size());
  for (const auto& layer : faces) f.push_back(static_cast<std::int64_t>(layer.size()));
  return f;
}

std::int64_t SimplicialComplex::euler_characteristic() const {
  std::int64_t chi = 0;
  auto f = f_vector();
  for (std::size_t d = 0; d < f.size(); ++d) chi += (d % 2 == 0 ? 1 : -1) * f[d];
  return chi;
}

SimplicialComplex build_complex(std::vector<Simplex> simplices) {
  if (simplices.empty()) throw Error(ErrorKind::EmptyComplex, "build_complex needs at least one simplex");
  return SimplicialComplex::from_simplices(std::move(simplices));
}

Subdivision barycentric_subdivision(const SimplicialComplex& k) {
  if (k.empty()) throw Error(ErrorKind::EmptyComplex, "cannot subdivide the void complex");
  Subdivision out;
  for (const auto& layer : k.faces_by_dimension()) {
    for (const auto& face : layer) {
      out.vertex_of.emplace(face, static_cast<int>(out.center_of.size()));
      out.center_of.push_back(face);
    }
  }
  // Maximal flags of each maximal simplex: remove vertices one at a time in every order.
  std::vector<Simplex> simplices;
  for (const auto& m : k.maximal_simplices()) {
    std::vector<int> order(m.vertices());
    do {
      std::vector<int> ids;
      std::vector<int> current = m.vertices();
      ids.push_back(out.vertex_of.at(m));
      for (std::size_t i = 0; i + 1 < order.size(); ++i) {
        current.erase(std::find(current.begin(), current.end(), order[i]));
        ids.push_back(out.vertex_of.at(make_sorted_simplex(current)));
      }
      simplices.emplace_back(std::move(ids));
    } while (std::next_permutation(order.begin(), order.end()));
  }
  out.complex = SimplicialComplex::from_simplices(std::move(simplices));
  return out;
}

namespace {

void extend_flags(const std::vector<Simplex>& faces, std::vector<Simplex>& chain, int remaining,
                  std::vector<Flag>& out) {
  if (remaining == 0) {
    out.push_back(Flag{chain});
    return;
  }
  const Simplex last = chain.back();
  for (const auto& f : faces) {
    if (f.is_proper_face_of(last)) {
      chain.push_back(f);
      extend_flags(faces, chain, remaining - 1, out);
      chain.pop_back();
    }
  }
}

}  // namespace

std::vector<Flag> flags(const SimplicialComplex& complex, int k) {
  if (k < 0) throw Error(ErrorKind::InvalidParams, "flag length must be non-negative");
  std::vector<Flag> out;
  if (k > complex.dim()) return out;
  std::vector<Simplex> faces;
  for (auto& layer : complex.faces_by_dimension()) {
    for (auto& f : layer) faces.push_back(std::move(f));
  }
  std::vector<Simplex> chain;
  for (const auto& f : faces) {
    if (f.dim() < k) continue;
    chain.assign(1, f);
    extend_flags(faces, chain, k, out);
  }
  return out;
}

SimplicialComplex skeleton(const SimplicialComplex& complex, int k) {
  if (k < 0) throw Error(ErrorKind::InvalidParams, "skeleton dimension must be non-negative");
  std::vector<Simplex> out;
  for (const auto& m : complex.maximal_simplices()) {
    if (m.dim() <= k) {
      out.push_back(m);
      continue;
    }
    const auto& vs = m.vertices();
    std::vector<bool> pick(vs.size(), false);
    std::fill(pick.begin(), pick.begin() + k + 1, true);
    do {
      std::vector<int> sub;
      for (std::size_t i = 0; i < vs.size(); ++i) {
        if (pick[i]) sub.push_back(vs[i]);
      }
      out.push_back(make_sorted_simplex(std::move(sub)));
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  auto result = SimplicialComplex::from_simplices(std::move(out));
  for (const auto& [v, label] : complex.labels()) result.set_label(v, label);
  return result;
}

namespace {

struct CliqueSearch {
  const std::vector<std::vector<int>>& adj;  // sorted neighbour lists
  int max_size;
  std::vector<Simplex>& out;

  static std::vector<int> intersect(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> r;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
  }

  void emit(const std::vector<int>& clique) {
    std::vector<int> sorted = clique;
    std::sort(sorted.begin(), sorted.end());
    if (max_size <= 0 || static_cast<int>(sorted.size()) <= max_size) {
      check_dimension(sorted.size());
      out.push_back(make_sorted_simplex(std::move(sorted)));
      return;
    }
    std::vector<bool> pick(sorted.size(), false);
    std::fill(pick.begin(), pick.begin() + max_size, true);
    do {
      std::vector<int> sub;
      for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (pick[i]) sub.push_back(sorted[i]);
      }
      out.push_back(make_sorted_simplex(std::move(sub)));
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }

  // Bron–Kerbosch with Tomita pivoting.
  void run(std::vector<int>& r, std::vector<int> p, std::vector<int> x) {
    if (p.empty()) {
      if (x.empty()) emit(r);
      return;
    }
    int pivot = -1;
    std::size_t best = 0;
    for (const auto* set : {&p, &x}) {
      for (int u : *set) {
        std::size_t c = intersect(p, adj[static_cast<std::size_t>(u)]).size();
        if (pivot < 0 || c > best) {
          pivot = u;
          best = c;
        }
      }
    }
    std::vector<int> candidates;
    std::set_difference(p.begin(), p.end(), adj[static_cast<std::size_t>(pivot)].begin(),
                        adj[static_cast<std::size_t>(pivot)].end(), std::back_inserter(candidates));
    for (int v : candidates) {
      const auto& nv = adj[static_cast<std::size_t>(v)];
      r.push_back(v);
      run(r, intersect(p, nv), intersect(x, nv));
      r.pop_back();
      p.erase(std::lower_bound(p.begin(), p.end(), v));
      x.insert(std::lower_bound(x.begin(), x.end(), v), v);
    }
  }
};

}  // namespace

SimplicialComplex clique_complex(int vertex_count, const std::vector<std::vector<int>>& adjacency, int max_size) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(vertex_count));
  for (int v = 0; v < vertex_count; ++v) {
    for (int u : adjacency[static_cast<std::size_t>(v)]) {
      if (u != v) adj[static_cast<std::size_t>(v)].push_back(u);
    }
    auto& a = adj[static_cast<std::size_t>(v)];
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  std::vector<Simplex> out;
  CliqueSearch search{adj, max_size, out};
  std::vector<int> p(static_cast<std::size_t>(vertex_count));
  std::iota(p.begin(), p.end(), 0);
  std::vector<int> r;
  search.run(r, std::move(p), {});
  return SimplicialComplex::from_simplices(std::move(out));
}

SimplicialComplex parse_complex(std::string_view text) {
  std::vector<Simplex> simplices;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<int> ids;
    std::string tok;
    while (fields >> tok) {
      try {
        std::size_t used = 0;
        int v = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        ids.push_back(v);
      } catch (const std::exception&) {
        throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": bad vertex id '" + tok + "'");
      }
    }
    if (!ids.empty()) simplices.emplace_back(std::move(ids));
  }
  return build_complex(std::move(simplices));
}

std::string format_complex(const SimplicialComplex& complex) {
  std::string out;
  for (const auto& s : complex.maximal_simplices()) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(s.vertices()[i]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace telescope
