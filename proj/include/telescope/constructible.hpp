#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "telescope/boxes.hpp"
#include "telescope/mcomplex.hpp"
#include "telescope/polynomial.hpp"

namespace telescope {

enum class Relation { Zero, Positive, Negative };

/// Boolean combination of sign conditions h_i = 0, h_i > 0, h_i < 0 over a function table.
struct SignFormula {
  struct Node {
    enum class Kind { Atom, And, Or, Not };
    Kind kind = Kind::Atom;
    int function = 0;
    Relation relation = Relation::Zero;
    std::vector<Node> children;

    static Node atom(int function, Relation r);
    static Node all(std::vector<Node> children);
    static Node any(std::vector<Node> children);
    static Node negate(Node child);
  };

  int variables = 0;
  std::vector<Polynomial> functions;
  Node root;
  /// Closed constraints g ≥ 0 conjoined to every relaxation unchanged (the compactifying ball).
  std::vector<Polynomial> side_conditions;

  /// Throws InvalidParams on out-of-range atoms or mismatched variable counts.
  void validate() const;
  /// Truth value under a sign vector (entries −1, 0, 1), one per function.
  bool holds(const std::vector<int>& signs) const;
  /// Truth value at a point (side conditions included).
  bool holds_at(const std::vector<Rational>& x) const;
};

/// Positive Boolean combination of closed atoms lo ≤ h ≤ hi (either end may be open-ended).
struct ClosedFormula {
  struct Atom {
    int function = 0;
    std::optional<Rational> lo;
    std::optional<Rational> hi;
  };
  struct Node {
    enum class Kind { Atom, And, Or };
    Kind kind = Kind::Atom;
    Atom atom;
    std::vector<Node> children;
  };

  int variables = 0;
  std::vector<Polynomial> functions;
  /// An Or without children is false, an And without children true.
  Node root;

  bool holds_at(const std::vector<Rational>& x) const;
};

std::string to_string(const SignFormula& f);
std::string to_string(const ClosedFormula& f);

/// `pN: poly` lines give the table (p1 is function 0); the remaining non-comment text is
/// one s-expression such as `(and (> p1) (= p2))`. ParseError messages carry line:column.
SignFormula parse_formula(std::string_view text);

/// Sign vectors (entries −1, 0, 1) satisfying the formula, in lexicographic order of
/// (−, 0, +). Throws TooManyFunctions above 16 functions.
std::vector<std::vector<int>> sign_sets(const SignFormula& f);

/// Marks a coordinate of a sign cube on which the formula does not depend.
inline constexpr int kAnySign = 2;

/// The maximal cubes (each coordinate a sign or kAnySign) inside the satisfying sign
/// vectors, sorted. Their union is the set of sign_sets.
std::vector<std::vector<int>> sign_cubes(const SignFormula& f);

/// One closed sign condition per sign cube, with no condition on kAnySign coordinates:
/// S_δ (eps = none: equations stay h = 0) or S_{δ,ε}. Throws BadThresholds unless
/// 0 < δ < 1 and, when given, 0 < ε < δ.
ClosedFormula relax(const SignFormula& f, const Rational& delta, const std::optional<Rational>& eps);

/// Adds the side condition |x|² ≤ 1/δ.
SignFormula compactify(const SignFormula& f, const Rational& delta);

/// F₁ ∧ F₂ and F₁ ∨ F₂ over the concatenated function tables.
SignFormula conjoin(const SignFormula& a, const SignFormula& b);
SignFormula disjoin(const SignFormula& a, const SignFormula& b);

/// What happens to cells still undecided at max_depth.
enum class Policy { Outer, Inner, Strict };

std::string_view to_string(Policy p);
Policy parse_policy(std::string_view text);

/// Adaptive dyadic bisection of `box`: cells certified true are kept, certified false
/// dropped, the rest split until max_depth (≤ 24) and then settled by the policy
/// (Strict throws DepthExceeded). The result does not depend on evaluation order.
DyadicSet approximate(const ClosedFormula& c, const Box& box, int max_depth, Policy policy = Policy::Outer);

struct TelescopeOptions {
  int m = 2;
  Rational eta{1, 10};
  Box box;
  int depth = 8;
  Policy policy = Policy::Outer;
  bool compact = false;
};

struct TelescopeResult {
  DyadicSet set;
  LadderParams ladder;
  /// Some compactifying ball was not contained in the box.
  bool truncated = false;
};

/// S_{δ_0,ε_0} ∪ … ∪ S_{δ_m,ε_m} on the geometric ladder for η. Requires m ≥ 1.
TelescopeResult build_telescope(const SignFormula& f, const TelescopeOptions& options);

struct StabilizeResult {
  BettiVector betti;
  Rational eta_used;
  bool stable = false;
  std::vector<BettiVector> runs;
  bool truncated = false;
  DyadicSet last_set;
};

/// Runs the telescope for each η of the schedule (length ≥ 2) and stops at the first
/// two successive runs with equal Betti vectors; eta_used is the second of the pair.
StabilizeResult stabilize(const SignFormula& f, TelescopeOptions options, const std::vector<Rational>& eta_schedule);

/// η, η², η⁴, … of the given length.
std::vector<Rational> squaring_schedule(const Rational& eta, int length);

}  // namespace telescope
