#pragma once

#include <map>
#include <set>
#include <string_view>
#include <utility>
#include <vector>

#include "telescope/simplicial.hpp"

namespace telescope {

/// Finite strict partial order on non-negative integer ids.
class Poset {
 public:
  Poset() = default;
  /// Takes the transitive closure of `relations` (pairs a ≺ b). Throws NotAPoset on a
  /// cycle or reflexive pair and UnknownElement when a pair names an undeclared id.
  Poset(std::vector<int> elements, const std::vector<std::pair<int, int>>& relations);

  const std::vector<int>& elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  bool contains(int x) const { return index_.count(x) != 0; }

  bool less(int a, int b) const;
  bool leq(int a, int b) const { return a == b || less(a, b); }
  bool comparable(int a, int b) const { return leq(a, b) || leq(b, a); }

  /// {x : x ≼ q}
  std::vector<int> down_set(int q) const;
  /// Number of steps in a longest chain whose top element is x.
  int rank(int x) const;
  /// All strict pairs of the closure, sorted.
  std::vector<std::pair<int, int>> relations() const;
  Poset restrict_to(const std::vector<int>& subset) const;

 private:
  std::size_t at(int x) const;

  std::vector<int> elements_;
  std::map<int, std::size_t> index_;
  std::vector<std::vector<bool>> less_;
  std::vector<int> rank_;
};

/// Simplices are the non-empty chains; vertex ids are the element ids.
SimplicialComplex order_complex(const Poset& p);

struct FacePoset {
  Poset poset;
  /// faces[i] is element i; numbering agrees with barycentric_subdivision.
  std::vector<Simplex> faces;
};

FacePoset face_poset(const SimplicialComplex& k);

/// Cover of a finite ground set: members[i] is the set X_i.
struct Cover {
  std::map<int, std::set<int>> members;
};

/// σ ⊂ I is present iff ⋂_{i∈σ} X_i ≠ ∅. Empty cover sets contribute nothing.
SimplicialComplex nerve(const Cover& c);

/// Complex on the faces of K (numbered as in barycentric_subdivision) whose simplices
/// are the sets of faces forming a flag.
SimplicialComplex flag_nerve(const SimplicialComplex& k);

/// Throws NotMonotone unless x ≼ y implies f(x) ≼ f(y); UnknownElement when f is not
/// total on P or lands outside Q.
void check_poset_map(const Poset& p, const Poset& q, const std::map<int, int>& f);

/// Order complex of f^{-1}(Q_{≼q}).
SimplicialComplex poset_fiber(const Poset& p, const Poset& q, const std::map<int, int>& f, int target);

/// Lines `a < b` (chains `a < b < c` allowed) or a lone `a` declaring an element.
Poset parse_poset(std::string_view text);
/// Lines `i: e1 e2 ...`.
Cover parse_cover(std::string_view text);

}  // namespace telescope
