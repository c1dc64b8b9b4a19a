#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "telescope/common.hpp"

namespace telescope {

/// Closed rational interval [lo, hi].
struct Interval {
  Rational lo;
  Rational hi;

  Interval() = default;
  Interval(Rational a, Rational b) : lo(std::move(a)), hi(std::move(b)) {}
  explicit Interval(const Rational& point) : lo(point), hi(point) {}

  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  bool operator==(const Interval&) const = default;
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
Interval operator*(const Rational& c, const Interval& a);
/// Tight enclosure of {x^e : x ∈ a}.
Interval pow(const Interval& a, unsigned e);

/// Sparse polynomial in x0 … x_{n−1} with rational coefficients.
class Polynomial {
 public:
  struct Term {
    Rational coefficient;
    std::vector<unsigned> exponents;
  };

  Polynomial() = default;
  /// Merges terms with equal exponent vectors and drops zero coefficients.
  Polynomial(int variables, std::vector<Term> terms);

  static Polynomial constant(int variables, const Rational& c);
  static Polynomial variable(int variables, int index);

  int variables() const noexcept { return variables_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  unsigned degree() const;

  /// Same polynomial over more variables (the new ones do not occur).
  Polynomial widen(int variables) const;
  /// Renames x_i to x_{offset+i} inside `variables` total variables.
  Polynomial shift(int offset, int variables) const;

  Rational evaluate(const std::vector<Rational>& x) const;
  /// Natural interval extension; inclusion-isotone and exact on degenerate boxes.
  Interval evaluate(const std::vector<Interval>& box) const;

  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial operator*(const Polynomial& other) const;

  bool operator==(const Polynomial&) const;

 private:
  int variables_ = 0;
  std::vector<Term> terms_;
};

/// Text such as `x0^2 + x1^2 - 1` or `-1/2 x0 x1 + 3`. The variable count is the largest
/// index used plus one, or `variables` when that is larger.
Polynomial parse_polynomial(std::string_view text, int variables = 0);
std::string to_string(const Polynomial& p);

}  // namespace telescope
