#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "telescope/poset.hpp"
#include "telescope/simplicial.hpp"

namespace telescope {

/// A complex R, a set S of (open) faces of R, and a hard/soft label on each pair
/// (Δ′, Δ) of faces of S with Δ′ a proper face of Δ.
///
/// Faces of R are addressed by their id j, which is also the vertex id of the centre
/// v_j in the barycentric subdivision R̂. Simplices of R̂ are Simplex values over
/// those ids.
class MarkedComplex {
 public:
  /// `hard` lists the hard pairs (Δ′ id, Δ id); every other pair is soft.
  MarkedComplex(SimplicialComplex r, const std::set<int>& s_faces, const std::set<std::pair<int, int>>& hard);

  const SimplicialComplex& base() const noexcept { return r_; }
  const Subdivision& subdivision() const noexcept { return sd_; }
  const SimplicialComplex& refined() const noexcept { return sd_.complex; }
  const std::set<int>& s_faces() const noexcept { return s_faces_; }
  const Simplex& face(int j) const { return sd_.center_of.at(static_cast<std::size_t>(j)); }
  int face_id(const Simplex& face) const;
  std::size_t face_count() const noexcept { return sd_.center_of.size(); }

  bool is_hard(int sub, int sup) const;
  const std::set<std::pair<int, int>>& hard_pairs() const noexcept { return hard_; }

  /// Ids of B ordered by decreasing face dimension (the flag j₀, …, j_k). Throws
  /// NotAFlag when B is not a simplex of R̂.
  std::vector<int> flag_order(const Simplex& b) const;
  /// B ∈ Ŝ iff its open simplex lies in S, i.e. the leading face Δ_{j₀} is in S.
  bool in_s_hat(const Simplex& b) const;
  /// C(B) in flag order; empty for B ∉ Ŝ.
  std::vector<int> core(const Simplex& b) const;
  /// B′ ≽ B: B′ = B, or both in Ŝ, B′ a proper face of B and C(B′) ∩ C(B) = ∅.
  bool succeq(const Simplex& b_prime, const Simplex& b) const;
  bool succ(const Simplex& b_prime, const Simplex& b) const { return b_prime != b && succeq(b_prime, b); }

  /// All simplices of Ŝ, sorted.
  std::vector<Simplex> s_hat() const;
  /// S_B: the faces of B (B included) lying in Ŝ, sorted.
  std::vector<Simplex> s_b(const Simplex& b) const;

 private:
  SimplicialComplex r_;
  Subdivision sd_;
  std::set<int> s_faces_;
  std::set<std::pair<int, int>> hard_;
};

/// Simplices in a list, related by ≽, as a poset on their positions: a ≺ b iff
/// list[b] ≻ list[a]. Poset::rank then gives the longest chain topped by an element.
Poset succ_poset(const MarkedComplex& m, const std::vector<Simplex>& simplices);

struct Ranks {
  /// r(Ŝ); −1 when Ŝ is empty.
  int total = -1;
  /// B ↦ r(S_B) for every B ∈ Ŝ.
  std::map<Simplex, int> per_simplex;
  /// B ↦ length of a longest chain B ≻ B₁ ≻ ⋯ in Ŝ.
  std::map<Simplex, int> per_element;
};

Ranks ranks(const MarkedComplex& m);

MarkedComplex mark_all_soft(const SimplicialComplex& r, const std::set<int>& s_faces);

/// Sign vectors over '-', '0', '+' per face id of S. Pairs in S are hard iff the vectors
/// agree. Throws IncompatibleSigns unless, for Δ′ ⊂ Δ̄ both in S, a strict sign on Δ is
/// matched or relaxed to 0 on Δ′ and a 0 on Δ stays 0 on Δ′.
MarkedComplex mark_from_signs(const SimplicialComplex& r, const std::set<int>& s_faces,
                              const std::map<int, std::string>& signs);

/// Lines `hard j' j` / `soft j' j`. Ids named in any line join S.
struct MarkingSpec {
  std::set<int> s_faces;
  std::set<std::pair<int, int>> hard;
};
MarkingSpec parse_marking(std::string_view text);
/// Lines `face <id> signs <vector>`.
std::map<int, std::string> parse_signs(std::string_view text);

}  // namespace telescope
