#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "telescope/homology.hpp"
#include "telescope/marking.hpp"
#include "telescope/poset.hpp"

namespace telescope {

/// Poset on {0, …, N} with p ≻ q ⇒ p > q, and a cap m_p per element.
struct MSpec {
  Poset order;
  std::vector<int> caps;

  /// Throws InvalidParams on a cap count mismatch or negative cap, NotAPoset when the
  /// order does not respect the integer order.
  MSpec(Poset order, std::vector<int> caps);
  int n() const { return static_cast<int>(caps.size()) - 1; }
  /// min{m_1, …, m_N}; with N = 0 this is m_0.
  int m() const;
  /// min{m_0, …, m_N}.
  int m_with_zero() const;
};

/// Complex whose vertex v carries the label vertex_label[v] (a pair (p, i) or (B′ index, i)).
struct LabelledComplex {
  SimplicialComplex complex;
  std::vector<std::pair<int, int>> vertex_label;
};

/// M(m_0, …, m_N): vertices (p, i) with 0 ≤ i ≤ m_p, numbered p-major.
LabelledComplex build_m(const MSpec& spec);

/// M_B over S_B (listed by MarkedComplex::s_b): vertex (b, i) means (S_B[b], i), 0 ≤ i ≤ m.
/// Throws BNotInS when B ∉ Ŝ.
LabelledComplex build_m_b(const MarkedComplex& marked, const Simplex& b, int m);

struct ConnectivityReport {
  bool homology_ok = false;
  int degrees_checked = 0;
  BettiVector reduced;
};

/// Reduced homology vanishes (free part and torsion) in degrees 0 … m−1.
ConnectivityReport check_connectivity(const SimplicialComplex& k, int m);

enum class CollapseResult { Collapsible, Unknown };

/// Elementary collapses: one deterministic pass (highest-dimensional free face first)
/// followed by `restarts` passes picking free faces at random.
CollapseResult collapse(const SimplicialComplex& k, int restarts = 32, std::uint64_t seed = 0);

/// ε_0 < δ_0 < ε_1 < … < ε_m < δ_m < 1.
struct LadderParams {
  std::vector<Rational> epsilons;
  std::vector<Rational> deltas;

  /// Throws BadThresholds unless the interleaving holds and every value lies in (0,1).
  LadderParams(std::vector<Rational> epsilons, std::vector<Rational> deltas);
  int m() const { return static_cast<int>(epsilons.size()) - 1; }
};

/// ε_i = η^{2(m−i)+2}, δ_i = η^{2(m−i)+1}.
LadderParams geometric_ladder(int m, const Rational& eta = Rational(1, 10));

/// Σ t_j v_j over the vertices of a simplex K of R̂.
struct BaryPoint {
  Simplex k;
  std::map<int, Rational> t;

  /// Throws InvalidParams on negative coordinates, support outside K, or a sum ≠ 1.
  BaryPoint(Simplex k, std::map<int, Rational> t);
  Rational at(int j) const;
};

/// x ∈ K_B(δ, ε); with no δ the core condition is dropped (K_B(ε)). A point on the
/// boundary of K (some t_j = 0) is not in the open simplex K and so is never a member.
/// Throws FlagMismatch when B ⊄ K.
bool membership_k_b(const BaryPoint& x, const Simplex& b, const std::vector<int>& core,
                    const std::optional<Rational>& delta, const Rational& epsilon);

/// One factor K_{B_ν}(δ_{i_ν}, ε_{j_ν}) of Z_K.
struct ZIndex {
  int i = 0;
  int j = 0;
};

/// B_μ ≻ B_ν ⇒ j_μ > i_ν for all μ, ν. Throws NotAFlag unless B_0 ⊋ B_1 ⊋ … all in Ŝ,
/// InvalidParams on a length mismatch or index outside 0…m.
bool z_nonempty(const MarkedComplex& marked, const std::vector<Simplex>& flag, const std::vector<ZIndex>& seq,
                const LadderParams& ladder);

/// Explicit point of Z_K(i_0, j_0, …). Throws CriterionFails when z_nonempty is false,
/// FlagMismatch unless B_0 ⊆ K, WitnessRejected if the point fails a membership test.
BaryPoint z_witness(const MarkedComplex& marked, const std::vector<Simplex>& flag, const std::vector<ZIndex>& seq,
                    const Simplex& k, const LadderParams& ladder);

/// Membership in every factor of Z_K.
bool in_z(const MarkedComplex& marked, const BaryPoint& x, const std::vector<Simplex>& flag,
          const std::vector<ZIndex>& seq, const LadderParams& ladder);

}  // namespace telescope
