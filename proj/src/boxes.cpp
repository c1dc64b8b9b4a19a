#include "telescope/boxes.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace telescope {

Box::Box(std::vector<Rational> l, std::vector<Rational> h) : lo(std::move(l)), hi(std::move(h)) {
  if (lo.size() != hi.size() || lo.empty()) throw Error(ErrorKind::InvalidParams, "box corners must have equal, positive length");
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (hi[i] < lo[i]) throw Error(ErrorKind::InvalidParams, "box has lo > hi on axis " + std::to_string(i));
  }
}

bool Box::intersects(const Box& o) const {
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (hi[i] < o.lo[i] || o.hi[i] < lo[i]) return false;
  }
  return true;
}

bool Box::contains(const Box& o) const {
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (o.lo[i] < lo[i] || hi[i] < o.hi[i]) return false;
  }
  return true;
}

bool Box::contains(const std::vector<Rational>& p) const {
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (p[i] < lo[i] || hi[i] < p[i]) return false;
  }
  return true;
}

std::vector<Interval> Box::intervals() const {
  std::vector<Interval> out;
  for (std::size_t i = 0; i < lo.size(); ++i) out.emplace_back(lo[i], hi[i]);
  return out;
}

std::string to_string(const Box& b) {
  std::string out;
  for (std::size_t i = 0; i < b.lo.size(); ++i) {
    if (i) out += 'x';
    out += to_string(b.lo[i]) + "," + to_string(b.hi[i]);
  }
  return out;
}

Box parse_box(std::string_view text) {
  std::vector<Rational> lo, hi;
  std::size_t start = 0;
  while (true) {
    auto x = text.find('x', start);
    auto axis = text.substr(start, x == std::string_view::npos ? std::string_view::npos : x - start);
    auto comma = axis.find(',');
    if (comma == std::string_view::npos) {
      throw Error(ErrorKind::ParseError, "expected 'lo,hi' per axis in '" + std::string(text) + "'");
    }
    lo.push_back(parse_rational(axis.substr(0, comma)));
    hi.push_back(parse_rational(axis.substr(comma + 1)));
    if (x == std::string_view::npos) break;
    start = x + 1;
  }
  try {
    return Box(lo, hi);
  } catch (const Error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

bool BoxComplex::contains(const std::vector<Rational>& point) const {
  return std::any_of(boxes.begin(), boxes.end(), [&](const Box& b) { return b.contains(point); });
}

BoxComplex BoxComplex::reduced() const {
  std::vector<Box> sorted = boxes;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  BoxComplex out{n, {}};
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    bool inside = false;
    for (std::size_t j = 0; j < sorted.size() && !inside; ++j) {
      inside = j != i && sorted[j].contains(sorted[i]);
    }
    if (!inside) out.boxes.push_back(sorted[i]);
  }
  return out;
}

BoxComplex parse_boxes(std::string_view text) {
  BoxComplex out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line.erase(std::remove_if(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); }), line.end());
    if (line.empty()) continue;
    Box b = parse_box(line);
    if (out.n == 0) out.n = b.dim();
    if (b.dim() != out.n) throw Error(ErrorKind::ParseError, "boxes of different dimensions");
    out.boxes.push_back(std::move(b));
  }
  return out;
}

std::string format_boxes(const BoxComplex& b) {
  std::string out;
  for (const auto& box : b.boxes) out += to_string(box) + "\n";
  return out;
}

namespace {

std::vector<std::vector<int>> intersection_graph(const BoxComplex& b) {
  const std::size_t count = b.boxes.size();
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return b.boxes[x].lo[0] < b.boxes[y].lo[0]; });
  std::vector<std::vector<int>> adj(count);
  for (std::size_t a = 0; a < count; ++a) {
    const Box& u = b.boxes[order[a]];
    for (std::size_t c = a + 1; c < count; ++c) {
      const Box& v = b.boxes[order[c]];
      if (u.hi[0] < v.lo[0]) break;
      if (u.intersects(v)) {
        adj[order[a]].push_back(static_cast<int>(order[c]));
        adj[order[c]].push_back(static_cast<int>(order[a]));
      }
    }
  }
  return adj;
}

}  // namespace

BettiVector box_homology(const BoxComplex& b, int max_degree) {
  if (max_degree < 0) max_degree = std::max(b.n - 1, 0);
  if (b.boxes.empty()) {
    BettiVector zero;
    zero.free_ranks.assign(static_cast<std::size_t>(max_degree + 1), 0);
    zero.torsion.assign(static_cast<std::size_t>(max_degree + 1), {});
    return zero;
  }
  auto adj = intersection_graph(b);
  auto nerve = clique_complex(static_cast<int>(b.boxes.size()), adj, max_degree + 2);
  auto out = betti(nerve, max_degree);
  out.free_ranks.resize(static_cast<std::size_t>(max_degree + 1), 0);
  out.torsion.resize(static_cast<std::size_t>(max_degree + 1));
  return out;
}

std::size_t box_components(const BoxComplex& b) {
  auto adj = intersection_graph(b);
  std::vector<std::size_t> parent(b.boxes.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t comps = b.boxes.size();
  for (std::size_t u = 0; u < adj.size(); ++u) {
    for (int v : adj[u]) {
      auto ru = find(u), rv = find(static_cast<std::size_t>(v));
      if (ru != rv) {
        parent[ru] = rv;
        --comps;
      }
    }
  }
  return comps;
}

BoxComplex project(const BoxComplex& b, int keep) {
  if (keep < 1 || keep > b.n) throw Error(ErrorKind::InvalidParams, "projection must keep between 1 and n coordinates");
  BoxComplex out{keep, {}};
  for (const auto& box : b.boxes) {
    out.boxes.emplace_back(std::vector<Rational>(box.lo.begin(), box.lo.begin() + keep),
                           std::vector<Rational>(box.hi.begin(), box.hi.begin() + keep));
  }
  return out.reduced();
}

DyadicCell DyadicCell::parent() const { return ancestor(level - 1); }

DyadicCell DyadicCell::ancestor(int lvl) const {
  if (lvl < 0 || lvl > level) throw Error(ErrorKind::InvalidParams, "no ancestor at that level");
  DyadicCell out{lvl, index};
  for (auto& i : out.index) i >>= (level - lvl);
  return out;
}

std::vector<DyadicCell> DyadicCell::children() const {
  const std::size_t n = index.size();
  std::vector<DyadicCell> out;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    DyadicCell c{level + 1, index};
    for (std::size_t i = 0; i < n; ++i) c.index[i] = 2 * index[i] + ((mask >> i) & 1u);
    out.push_back(std::move(c));
  }
  return out;
}

DyadicSet::DyadicSet(Box root, std::vector<DyadicCell> cells) : root_(std::move(root)) {
  const std::size_t n = root_.lo.size();
  std::set<DyadicCell> all;
  for (auto& c : cells) {
    if (c.index.size() != n || c.level < 0) throw Error(ErrorKind::InvalidParams, "cell does not match the root box");
    for (auto i : c.index) {
      if (i < 0 || i >= (std::int64_t{1} << c.level)) throw Error(ErrorKind::InvalidParams, "cell index outside the grid");
    }
    all.insert(std::move(c));
  }
  // Drop cells inside a coarser member.
  for (const auto& c : all) {
    bool covered = false;
    for (int l = 0; l < c.level && !covered; ++l) covered = all.count(c.ancestor(l)) != 0;
    if (!covered) cells_.insert(c);
  }
  // Merge complete sibling groups, finest level first so merges cascade.
  int top = max_level();
  for (int level = top; level >= 1; --level) {
    std::map<DyadicCell, int> count;
    for (const auto& c : cells_) {
      if (c.level == level) ++count[c.parent()];
    }
    for (const auto& [p, k] : count) {
      if (k == (1 << n)) {
        for (const auto& child : p.children()) cells_.erase(child);
        cells_.insert(p);
      }
    }
  }
}

int DyadicSet::max_level() const {
  int m = 0;
  for (const auto& c : cells_) m = std::max(m, c.level);
  return m;
}

bool DyadicSet::covers(const DyadicCell& c) const {
  for (int l = 0; l <= c.level; ++l) {
    if (cells_.count(c.ancestor(l))) return true;
  }
  return false;
}

Box DyadicSet::cell_box(const DyadicCell& c) const {
  std::vector<Rational> lo, hi;
  const Rational scale(1, Integer(1) << c.level);
  for (std::size_t i = 0; i < c.index.size(); ++i) {
    Rational w = (root_.hi[i] - root_.lo[i]) * scale;
    Rational l = root_.lo[i] + w * Rational(Integer(static_cast<long>(c.index[i])));
    lo.push_back(l);
    hi.push_back(l + w);
  }
  return Box(lo, hi);
}

BoxComplex DyadicSet::boxes() const {
  BoxComplex out{n(), {}};
  for (const auto& c : cells_) out.boxes.push_back(cell_box(c));
  return out;
}

Rational DyadicSet::volume() const {
  Rational root_volume = 1;
  for (std::size_t i = 0; i < root_.lo.size(); ++i) root_volume *= root_.hi[i] - root_.lo[i];
  Rational v = 0;
  for (const auto& c : cells_) v += root_volume / Rational(Integer(1) << (c.level * n()));
  v.canonicalize();
  return v;
}

void DyadicSet::check_compatible(const DyadicSet& other) const {
  if (!(root_ == other.root_)) throw Error(ErrorKind::InvalidParams, "dyadic sets over different root boxes");
}

DyadicSet DyadicSet::unite(const DyadicSet& other) const {
  if (cells_.empty()) return other;
  if (other.cells_.empty()) return *this;
  check_compatible(other);
  std::vector<DyadicCell> all(cells_.begin(), cells_.end());
  all.insert(all.end(), other.cells_.begin(), other.cells_.end());
  return DyadicSet(root_, std::move(all));
}

DyadicSet DyadicSet::intersect(const DyadicSet& other) const {
  if (cells_.empty() || other.cells_.empty()) return DyadicSet(cells_.empty() ? root_ : other.root_, {});
  check_compatible(other);
  std::vector<DyadicCell> out;
  for (const auto& c : cells_) {
    if (other.covers(c)) out.push_back(c);
  }
  for (const auto& c : other.cells_) {
    if (covers(c)) out.push_back(c);
  }
  return DyadicSet(root_, std::move(out));
}

bool DyadicSet::subset_of(const DyadicSet& other) const {
  if (cells_.empty()) return true;
  return intersect(other) == *this;
}

std::string render_ppm(const DyadicSet& s, int min_pixels) {
  if (s.n() != 2) throw Error(ErrorKind::InvalidParams, "images are only drawn for 2D sets");
  const int level = std::max(s.max_level(), 0);
  const std::int64_t cells = std::int64_t{1} << level;
  const std::int64_t scale = std::max<std::int64_t>(1, (min_pixels + cells - 1) / cells);
  const std::int64_t side = cells * scale;
  std::string pixels(static_cast<std::size_t>(side * side * 3), static_cast<char>(255));
  for (const auto& c : s.cells()) {
    const std::int64_t span = std::int64_t{1} << (level - c.level);
    const std::int64_t x0 = c.index[0] * span * scale, y0 = c.index[1] * span * scale;
    for (std::int64_t y = y0; y < y0 + span * scale; ++y) {
      const std::int64_t row = side - 1 - y;
      for (std::int64_t x = x0; x < x0 + span * scale; ++x) {
        auto at = static_cast<std::size_t>((row * side + x) * 3);
        pixels[at] = 30;
        pixels[at + 1] = 60;
        pixels[at + 2] = static_cast<char>(150);
      }
    }
  }
  return "P6\n" + std::to_string(side) + " " + std::to_string(side) + "\n255\n" + pixels;
}

}  // namespace telescope
