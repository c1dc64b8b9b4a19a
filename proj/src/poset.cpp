#include "telescope/poset.hpp"

#include <algorithm>
#include <sstream>

namespace telescope {

Poset::Poset(std::vector<int> elements, const std::vector<std::pair<int, int>>& relations)
    : elements_(std::move(elements)) {
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
  for (std::size_t i = 0; i < elements_.size(); ++i) index_[elements_[i]] = i;
  const std::size_t n = elements_.size();
  less_.assign(n, std::vector<bool>(n, false));
  for (auto [a, b] : relations) {
    if (a == b) throw Error(ErrorKind::NotAPoset, "reflexive pair " + std::to_string(a) + " < " + std::to_string(a));
    less_[at(a)][at(b)] = true;
  }
  // Warshall closure.
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!less_[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (less_[k][j]) less_[i][j] = true;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (less_[i][i]) throw Error(ErrorKind::NotAPoset, "cycle through " + std::to_string(elements_[i]));
  }
  // Ranks by repeated relaxation in order of number of predecessors (a linear extension).
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  auto below = [&](std::size_t i) {
    std::size_t c = 0;
    for (std::size_t j = 0; j < n; ++j) c += less_[j][i];
    return c;
  };
  std::vector<std::size_t> count(n);
  for (std::size_t i = 0; i < n; ++i) count[i] = below(i);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return count[a] < count[b]; });
  rank_.assign(n, 0);
  for (std::size_t i : order) {
    for (std::size_t j = 0; j < n; ++j) {
      if (less_[j][i]) rank_[i] = std::max(rank_[i], rank_[j] + 1);
    }
  }
}

std::size_t Poset::at(int x) const {
  auto it = index_.find(x);
  if (it == index_.end()) throw Error(ErrorKind::UnknownElement, "element " + std::to_string(x) + " not in poset");
  return it->second;
}

bool Poset::less(int a, int b) const { return less_[at(a)][at(b)]; }

std::vector<int> Poset::down_set(int q) const {
  const std::size_t iq = at(q);
  std::vector<int> out;
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (i == iq || less_[i][iq]) out.push_back(elements_[i]);
  }
  return out;
}

int Poset::rank(int x) const { return rank_[at(x)]; }

std::vector<std::pair<int, int>> Poset::relations() const {
  std::vector<std::pair<int, int>> out;
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    for (std::size_t j = 0; j < elements_.size(); ++j) {
      if (less_[i][j]) out.emplace_back(elements_[i], elements_[j]);
    }
  }
  return out;
}

Poset Poset::restrict_to(const std::vector<int>& subset) const {
  std::vector<std::pair<int, int>> rel;
  for (int a : subset) {
    for (int b : subset) {
      if (less(a, b)) rel.emplace_back(a, b);
    }
  }
  return Poset(subset, rel);
}

SimplicialComplex order_complex(const Poset& p) {
  const auto& el = p.elements();
  const int n = static_cast<int>(el.size());
  std::vector<std::vector<int>> adj(el.size());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j && p.comparable(el[static_cast<std::size_t>(i)], el[static_cast<std::size_t>(j)])) {
        adj[static_cast<std::size_t>(i)].push_back(j);
      }
    }
  }
  auto local = clique_complex(n, adj);
  std::vector<Simplex> out;
  for (const auto& s : local.maximal_simplices()) {
    std::vector<int> ids;
    for (int v : s.vertices()) ids.push_back(el[static_cast<std::size_t>(v)]);
    out.emplace_back(std::move(ids));
  }
  return SimplicialComplex::from_simplices(std::move(out));
}

FacePoset face_poset(const SimplicialComplex& k) {
  FacePoset out;
  for (auto& layer : k.faces_by_dimension()) out.faces.insert(out.faces.end(), layer.begin(), layer.end());
  std::vector<int> ids(out.faces.size());
  std::vector<std::pair<int, int>> rel;
  for (std::size_t i = 0; i < out.faces.size(); ++i) {
    ids[i] = static_cast<int>(i);
    // Covering relations suffice; the constructor closes them.
    for (std::size_t f = 0; f < out.faces[i].size() && out.faces[i].size() > 1; ++f) {
      auto facet = out.faces[i].facet(f);
      auto it = std::lower_bound(out.faces.begin(), out.faces.end(), facet, [](const Simplex& a, const Simplex& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
      });
      rel.emplace_back(static_cast<int>(it - out.faces.begin()), static_cast<int>(i));
    }
  }
  out.poset = Poset(std::move(ids), rel);
  return out;
}

SimplicialComplex nerve(const Cover& c) {
  std::map<int, std::vector<int>> containing;
  for (const auto& [i, set] : c.members) {
    for (int e : set) containing[e].push_back(i);
  }
  std::vector<Simplex> simplices;
  for (auto& [e, ids] : containing) simplices.emplace_back(ids);
  return SimplicialComplex::from_simplices(std::move(simplices));
}

SimplicialComplex flag_nerve(const SimplicialComplex& k) { return barycentric_subdivision(k).complex; }

void check_poset_map(const Poset& p, const Poset& q, const std::map<int, int>& f) {
  auto image = [&](int x) {
    auto it = f.find(x);
    if (it == f.end()) throw Error(ErrorKind::UnknownElement, "map undefined at " + std::to_string(x));
    if (!q.contains(it->second)) {
      throw Error(ErrorKind::UnknownElement, "image " + std::to_string(it->second) + " not in target poset");
    }
    return it->second;
  };
  for (int x : p.elements()) image(x);
  for (auto [a, b] : p.relations()) {
    if (!q.leq(image(a), image(b))) {
      throw Error(ErrorKind::NotMonotone, std::to_string(a) + " < " + std::to_string(b) + " but f(" +
                                              std::to_string(a) + ") is not below f(" + std::to_string(b) + ")");
    }
  }
}

SimplicialComplex poset_fiber(const Poset& p, const Poset& q, const std::map<int, int>& f, int target) {
  check_poset_map(p, q, f);
  if (!q.contains(target)) throw Error(ErrorKind::UnknownElement, "element " + std::to_string(target) + " not in target");
  std::vector<int> pre;
  for (int x : p.elements()) {
    if (q.leq(f.at(x), target)) pre.push_back(x);
  }
  return order_complex(p.restrict_to(pre));
}

namespace {

int parse_id(const std::string& tok, int line_no) {
  try {
    std::size_t used = 0;
    int v = std::stoi(tok, &used);
    if (used == tok.size() && v >= 0) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": bad id '" + tok + "'");
}

std::string strip_comment(std::string line) {
  if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
  return line;
}

}  // namespace

Poset parse_poset(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<int> elements;
  std::vector<std::pair<int, int>> rel;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_comment(line);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<int> chain;
    std::size_t start = 0;
    while (true) {
      auto lt = line.find('<', start);
      std::istringstream piece(line.substr(start, lt == std::string::npos ? std::string::npos : lt - start));
      std::string tok, extra;
      if (!(piece >> tok) || (piece >> extra)) {
        throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": expected 'a < b'");
      }
      chain.push_back(parse_id(tok, line_no));
      if (lt == std::string::npos) break;
      start = lt + 1;
    }
    elements.insert(elements.end(), chain.begin(), chain.end());
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) rel.emplace_back(chain[i], chain[i + 1]);
  }
  return Poset(std::move(elements), rel);
}

Cover parse_cover(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  Cover c;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_comment(line);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": missing ':'");
    std::istringstream head(line.substr(0, colon));
    std::string id;
    head >> id;
    auto& set = c.members[parse_id(id, line_no)];
    std::istringstream rest(line.substr(colon + 1));
    std::string tok;
    while (rest >> tok) set.insert(parse_id(tok, line_no));
  }
  return c;
}

}  // namespace telescope
