#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "telescope/homology.hpp"
#include "telescope/polynomial.hpp"

namespace telescope {

/// Closed axis-aligned box ∏ [lo_i, hi_i] with lo_i ≤ hi_i.
struct Box {
  std::vector<Rational> lo;
  std::vector<Rational> hi;

  Box() = default;
  /// Throws InvalidParams unless both corners have the same length and lo ≤ hi.
  Box(std::vector<Rational> lo, std::vector<Rational> hi);

  int dim() const noexcept { return static_cast<int>(lo.size()); }
  bool intersects(const Box& other) const;
  bool contains(const Box& other) const;
  bool contains(const std::vector<Rational>& point) const;
  std::vector<Interval> intervals() const;

  auto operator<=>(const Box&) const = default;
  bool operator==(const Box&) const = default;
};

std::string to_string(const Box& b);
/// `lo,hi` per axis joined by `x`, e.g. `-2,2x-2,2`.
Box parse_box(std::string_view text);

/// Union of finitely many closed boxes in ℝⁿ.
struct BoxComplex {
  int n = 0;
  std::vector<Box> boxes;

  bool empty() const noexcept { return boxes.empty(); }
  bool contains(const std::vector<Rational>& point) const;
  /// Sorted, duplicates and boxes inside another box removed.
  BoxComplex reduced() const;
};

/// One box per line in parse_box syntax; '#' comments.
BoxComplex parse_boxes(std::string_view text);
std::string format_boxes(const BoxComplex& b);

/// Homology of the union through the nerve of the closed boxes. Boxes meet as a family
/// exactly when they meet pairwise, so the nerve is the clique complex of the
/// intersection graph. Degrees above max_degree are skipped (max_degree < 0: n − 1).
BettiVector box_homology(const BoxComplex& b, int max_degree = -1);
std::size_t box_components(const BoxComplex& b);

/// Keeps the first `keep` coordinates of every box.
BoxComplex project(const BoxComplex& b, int keep);

/// A cell of the dyadic grid on a root box: level L and integer index vector, covering
/// the 1/2^L-scaled sub-box at that index.
struct DyadicCell {
  int level = 0;
  std::vector<std::int64_t> index;

  DyadicCell parent() const;
  std::vector<DyadicCell> children() const;
  /// The ancestor at `lvl` ≤ level.
  DyadicCell ancestor(int lvl) const;

  auto operator<=>(const DyadicCell&) const = default;
  bool operator==(const DyadicCell&) const = default;
};

/// Finite union of dyadic cells of a root box, kept in quadtree normal form: no cell lies
/// inside another and no complete set of 2ⁿ siblings is present. Equal sets have equal
/// normal forms, so == is set equality.
class DyadicSet {
 public:
  DyadicSet() = default;
  DyadicSet(Box root, std::vector<DyadicCell> cells);

  const Box& root() const noexcept { return root_; }
  int n() const noexcept { return root_.dim(); }
  const std::set<DyadicCell>& cells() const noexcept { return cells_; }
  bool empty() const noexcept { return cells_.empty(); }
  int max_level() const;

  bool covers(const DyadicCell& c) const;
  Box cell_box(const DyadicCell& c) const;
  BoxComplex boxes() const;
  /// Total volume as an exact rational.
  Rational volume() const;

  DyadicSet unite(const DyadicSet& other) const;
  DyadicSet intersect(const DyadicSet& other) const;
  bool subset_of(const DyadicSet& other) const;

  bool operator==(const DyadicSet& other) const { return root_ == other.root_ && cells_ == other.cells_; }

 private:
  void check_compatible(const DyadicSet& other) const;

  Box root_;
  std::set<DyadicCell> cells_;
};

/// Binary PPM (P6) raster of a 2D set: one pixel per finest cell, scaled so the long
/// side has at least `min_pixels` pixels. Row 0 is the top (largest second coordinate).
std::string render_ppm(const DyadicSet& s, int min_pixels = 256);

}  // namespace telescope
