#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "telescope/common.hpp"

namespace telescope {

/// Largest simplex dimension a complex may hold. Face enumeration is exponential
/// in this number.
inline constexpr int kMaxDimension = 15;

/// A (closed) abstract simplex: a strictly increasing list of non-negative vertex ids.
class Simplex {
 public:
  Simplex() = default;
  Simplex(std::initializer_list<int> vertices);
  explicit Simplex(std::vector<int> vertices);

  const std::vector<int>& vertices() const noexcept { return vertices_; }
  std::size_t size() const noexcept { return vertices_.size(); }
  int dim() const noexcept { return static_cast<int>(vertices_.size()) - 1; }
  bool empty() const noexcept { return vertices_.empty(); }
  int front() const { return vertices_.front(); }
  int back() const { return vertices_.back(); }

  bool contains(int vertex) const;
  /// True when every vertex of this simplex is a vertex of `other` (equality included).
  bool is_face_of(const Simplex& other) const;
  bool is_proper_face_of(const Simplex& other) const { return size() < other.size() && is_face_of(other); }

  /// The codimension-one face obtained by dropping the vertex at position `i`.
  Simplex facet(std::size_t i) const;

  auto operator<=>(const Simplex&) const = default;
  bool operator==(const Simplex&) const = default;

 private:
  struct Trusted {};
  Simplex(Trusted, std::vector<int> sorted) : vertices_(std::move(sorted)) {}
  friend class SimplicialComplex;
  friend Simplex make_sorted_simplex(std::vector<int> sorted);

  std::vector<int> vertices_;
};

/// Builds a simplex from an already strictly increasing vertex list without re-validating.
Simplex make_sorted_simplex(std::vector<int> sorted);

struct SimplexHash {
  std::size_t operator()(const Simplex& s) const noexcept;
};

std::string to_string(const Simplex& s);

/// Finite abstract simplicial complex stored by its maximal simplices.
///
/// Faces are implicit: every non-empty subset of a stored simplex is a member.
/// The default-constructed complex is the void complex (no simplices).
class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  /// Antichain-reduces `simplices`; accepts an empty list (yielding the void complex).
  static SimplicialComplex from_simplices(std::vector<Simplex> simplices);

  const std::vector<Simplex>& maximal_simplices() const noexcept { return maximal_; }
  bool empty() const noexcept { return maximal_.empty(); }
  int dim() const noexcept;
  bool contains(const Simplex& s) const;
  std::vector<int> vertices() const;

  /// faces[d] lists the d-dimensional faces in lexicographic order, for d <= max_dim
  /// (max_dim < 0 means all dimensions).
  std::vector<std::vector<Simplex>> faces_by_dimension(int max_dim = -1) const;
  std::vector<std::int64_t> f_vector() const;
  std::int64_t euler_characteristic() const;

  const std::map<int, std::string>& labels() const noexcept { return labels_; }
  void set_label(int vertex, std::string label) { labels_[vertex] = std::move(label); }

  bool operator==(const SimplicialComplex& other) const { return maximal_ == other.maximal_; }

 private:
  std::vector<Simplex> maximal_;
  std::map<int, std::string> labels_;
};

/// A chain of faces, each a proper face of its predecessor.
struct Flag {
  std::vector<Simplex> chain;
  bool operator==(const Flag&) const = default;
  auto operator<=>(const Flag&) const = default;
};

/// Builds a complex from the given simplices; throws EmptyComplex on an empty list.
SimplicialComplex build_complex(std::vector<Simplex> simplices);

struct Subdivision {
  SimplicialComplex complex;
  /// center_of[v] is the face of the original complex whose barycenter is new vertex v.
  std::vector<Simplex> center_of;
  std::unordered_map<Simplex, int, SimplexHash> vertex_of;
};

/// Barycentric subdivision. New vertices are numbered by the faces of `k` in
/// (dimension, lexicographic) order; its simplices are exactly the flags of `k`.
Subdivision barycentric_subdivision(const SimplicialComplex& k);

/// All k-flags Δ_0 ⊋ Δ_1 ⊋ … ⊋ Δ_k of faces of `complex`.
std::vector<Flag> flags(const SimplicialComplex& complex, int k);

SimplicialComplex skeleton(const SimplicialComplex& complex, int k);

/// Clique (flag) complex of a graph restricted to cliques of at most max_size vertices
/// (max_size <= 0 means no restriction beyond kMaxDimension).
SimplicialComplex clique_complex(int vertex_count, const std::vector<std::vector<int>>& adjacency,
                                 int max_size = 0);

/// One maximal simplex per line, whitespace separated ids, '#' comments.
SimplicialComplex parse_complex(std::string_view text);
std::string format_complex(const SimplicialComplex& complex);

}  // namespace telescope
