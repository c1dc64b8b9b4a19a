#include "telescope/marking.hpp"

#include <algorithm>
#include <sstream>

namespace telescope {

MarkedComplex::MarkedComplex(SimplicialComplex r, const std::set<int>& s_faces,
                             const std::set<std::pair<int, int>>& hard)
    : r_(std::move(r)), sd_(barycentric_subdivision(r_)), s_faces_(s_faces) {
  const int n = static_cast<int>(sd_.center_of.size());
  for (int j : s_faces_) {
    if (j < 0 || j >= n) throw Error(ErrorKind::UnknownElement, "face id " + std::to_string(j) + " not in complex");
  }
  for (auto [sub, sup] : hard) {
    if (sub < 0 || sub >= n || sup < 0 || sup >= n) {
      throw Error(ErrorKind::UnknownElement, "marking names unknown face id");
    }
    if (!face(sub).is_proper_face_of(face(sup))) {
      throw Error(ErrorKind::InvalidSimplex,
                  "face " + std::to_string(sub) + " is not a subsimplex of face " + std::to_string(sup));
    }
    // A subsimplex outside S is always soft.
    if (s_faces_.count(sub) && s_faces_.count(sup)) hard_.insert({sub, sup});
  }
}

int MarkedComplex::face_id(const Simplex& f) const {
  auto it = sd_.vertex_of.find(f);
  if (it == sd_.vertex_of.end()) throw Error(ErrorKind::UnknownElement, "face " + to_string(f) + " not in complex");
  return it->second;
}

bool MarkedComplex::is_hard(int sub, int sup) const { return hard_.count({sub, sup}) != 0; }

std::vector<int> MarkedComplex::flag_order(const Simplex& b) const {
  if (!sd_.complex.contains(b)) throw Error(ErrorKind::NotAFlag, to_string(b) + " is not a simplex of the subdivision");
  std::vector<int> ids = b.vertices();
  std::sort(ids.begin(), ids.end(), [&](int a, int c) { return face(a).size() > face(c).size(); });
  return ids;
}

bool MarkedComplex::in_s_hat(const Simplex& b) const { return s_faces_.count(flag_order(b).front()) != 0; }

std::vector<int> MarkedComplex::core(const Simplex& b) const {
  auto ids = flag_order(b);
  if (!s_faces_.count(ids.front())) return {};
  std::vector<int> out{ids.front()};
  for (std::size_t nu = 1; nu < ids.size(); ++nu) {
    bool ok = std::all_of(out.begin(), out.end(), [&](int mu) { return is_hard(ids[nu], mu); });
    if (!ok) break;
    out.push_back(ids[nu]);
  }
  return out;
}

bool MarkedComplex::succeq(const Simplex& b_prime, const Simplex& b) const {
  if (b_prime == b) return true;
  if (!b_prime.is_proper_face_of(b)) return false;
  if (!in_s_hat(b_prime) || !in_s_hat(b)) return false;
  auto c1 = core(b_prime);
  auto c2 = core(b);
  return std::none_of(c1.begin(), c1.end(), [&](int j) { return std::find(c2.begin(), c2.end(), j) != c2.end(); });
}

std::vector<Simplex> MarkedComplex::s_hat() const {
  std::vector<Simplex> out;
  for (const auto& layer : sd_.complex.faces_by_dimension()) {
    for (const auto& s : layer) {
      if (in_s_hat(s)) out.push_back(s);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Simplex> MarkedComplex::s_b(const Simplex& b) const {
  if (!sd_.complex.contains(b)) throw Error(ErrorKind::NotAFlag, to_string(b) + " is not a simplex of the subdivision");
  std::vector<Simplex> out;
  const auto& v = b.vertices();
  for (std::uint32_t mask = 1; mask < (1u << v.size()); ++mask) {
    std::vector<int> ids;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (mask & (1u << i)) ids.push_back(v[i]);
    }
    auto s = make_sorted_simplex(std::move(ids));
    if (in_s_hat(s)) out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Poset succ_poset(const MarkedComplex& m, const std::vector<Simplex>& simplices) {
  std::vector<int> ids(simplices.size());
  std::vector<std::pair<int, int>> rel;
  for (std::size_t a = 0; a < simplices.size(); ++a) {
    ids[a] = static_cast<int>(a);
    for (std::size_t b = 0; b < simplices.size(); ++b) {
      if (a != b && m.succ(simplices[b], simplices[a])) rel.emplace_back(static_cast<int>(a), static_cast<int>(b));
    }
  }
  return Poset(std::move(ids), rel);
}

Ranks ranks(const MarkedComplex& m) {
  Ranks out;
  auto all = m.s_hat();
  // B′ ≻ B forces B′ ⊊ B, so visiting larger simplices first is a topological order.
  std::vector<std::size_t> order(all.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return all[a].size() > all[b].size(); });
  std::vector<int> height(all.size(), 0);  // longest chain B ≻ …, with B on top
  for (std::size_t i : order) {
    for (std::size_t j : order) {
      if (all[j].size() <= all[i].size()) break;
      if (m.succ(all[i], all[j])) height[i] = std::max(height[i], height[j] + 1);
    }
  }
  for (std::size_t i = 0; i < all.size(); ++i) {
    out.per_element[all[i]] = height[i];
    out.total = std::max(out.total, height[i]);
  }
  for (const auto& b : all) {
    auto sb = m.s_b(b);
    auto p = succ_poset(m, sb);
    int r = 0;
    for (int x : p.elements()) r = std::max(r, p.rank(x));
    out.per_simplex[b] = r;
  }
  return out;
}

MarkedComplex mark_all_soft(const SimplicialComplex& r, const std::set<int>& s_faces) {
  return MarkedComplex(r, s_faces, {});
}

namespace {

int sign_code(char c) {
  switch (c) {
    case '-': return -1;
    case '0': return 0;
    case '+': return 1;
  }
  throw Error(ErrorKind::ParseError, std::string("bad sign character '") + c + "'");
}

}  // namespace

MarkedComplex mark_from_signs(const SimplicialComplex& r, const std::set<int>& s_faces,
                              const std::map<int, std::string>& signs) {
  MarkedComplex shape(r, s_faces, {});
  std::size_t width = std::string::npos;
  for (int j : s_faces) {
    auto it = signs.find(j);
    if (it == signs.end()) throw Error(ErrorKind::IncompatibleSigns, "no sign vector for face " + std::to_string(j));
    if (width == std::string::npos) width = it->second.size();
    if (it->second.size() != width) throw Error(ErrorKind::IncompatibleSigns, "sign vectors differ in length");
    for (char c : it->second) sign_code(c);
  }
  std::set<std::pair<int, int>> hard;
  for (int sup : s_faces) {
    for (int sub : s_faces) {
      if (!shape.face(sub).is_proper_face_of(shape.face(sup))) continue;
      const auto& big = signs.at(sup);
      const auto& small = signs.at(sub);
      for (std::size_t i = 0; i < width; ++i) {
        const int a = sign_code(big[i]);
        const int b = sign_code(small[i]);
        if (b != 0 && b != a) {
          throw Error(ErrorKind::IncompatibleSigns, "face " + std::to_string(sub) + " has sign " + small[i] +
                                                        " in coordinate " + std::to_string(i) + " but face " +
                                                        std::to_string(sup) + " has " + big[i]);
        }
      }
      if (big == small) hard.insert({sub, sup});
    }
  }
  return MarkedComplex(r, s_faces, hard);
}

MarkingSpec parse_marking(std::string_view text) {
  MarkingSpec out;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string kind;
    if (!(fields >> kind)) continue;
    int sub = 0, sup = 0;
    std::string extra;
    if ((kind != "hard" && kind != "soft") || !(fields >> sub >> sup) || (fields >> extra) || sub < 0 || sup < 0) {
      throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": expected 'hard|soft <sub> <sup>'");
    }
    out.s_faces.insert(sub);
    out.s_faces.insert(sup);
    if (kind == "hard") out.hard.insert({sub, sup});
  }
  return out;
}

std::map<int, std::string> parse_signs(std::string_view text) {
  std::map<int, std::string> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string head, kw, vec, extra;
    int id = -1;
    if (!(fields >> head)) continue;
    if (head != "face" || !(fields >> id >> kw >> vec) || kw != "signs" || (fields >> extra) || id < 0) {
      throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": expected 'face <id> signs <vector>'");
    }
    for (char c : vec) sign_code(c);
    out[id] = vec;
  }
  return out;
}

}  // namespace telescope
