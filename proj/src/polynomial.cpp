#include "telescope/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace telescope {

Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }

Interval operator*(const Interval& a, const Interval& b) {
  Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

Interval operator*(const Rational& c, const Interval& a) {
  if (c >= 0) return {c * a.lo, c * a.hi};
  return {c * a.hi, c * a.lo};
}

Interval pow(const Interval& a, unsigned e) {
  if (e == 0) return Interval(Rational(1));
  Rational lo = rational_pow(a.lo, e);
  Rational hi = rational_pow(a.hi, e);
  if (e % 2 == 1) return {lo, hi};
  if (a.lo >= 0) return {lo, hi};
  if (a.hi <= 0) return {hi, lo};
  return {Rational(0), std::max(lo, hi)};
}

Polynomial::Polynomial(int variables, std::vector<Term> terms) : variables_(variables) {
  if (variables < 1) throw Error(ErrorKind::InvalidParams, "a polynomial needs at least one variable");
  std::map<std::vector<unsigned>, Rational> merged;
  for (auto& t : terms) {
    if (t.exponents.size() > static_cast<std::size_t>(variables)) {
      throw Error(ErrorKind::InvalidParams, "term uses more variables than declared");
    }
    t.exponents.resize(static_cast<std::size_t>(variables), 0);
    t.coefficient.canonicalize();
    merged[t.exponents] += t.coefficient;
  }
  for (auto& [e, c] : merged) {
    if (c != 0) terms_.push_back({c, e});
  }
}

Polynomial Polynomial::constant(int variables, const Rational& c) { return Polynomial(variables, {{c, {}}}); }

Polynomial Polynomial::variable(int variables, int index) {
  std::vector<unsigned> e(static_cast<std::size_t>(variables), 0);
  e.at(static_cast<std::size_t>(index)) = 1;
  return Polynomial(variables, {{Rational(1), e}});
}

unsigned Polynomial::degree() const {
  unsigned d = 0;
  for (const auto& t : terms_) {
    unsigned s = 0;
    for (unsigned e : t.exponents) s += e;
    d = std::max(d, s);
  }
  return d;
}

Polynomial Polynomial::widen(int variables) const { return shift(0, variables); }

Polynomial Polynomial::shift(int offset, int variables) const {
  if (offset < 0 || offset + variables_ > variables) throw Error(ErrorKind::InvalidParams, "variable shift out of range");
  std::vector<Term> out;
  for (const auto& t : terms_) {
    std::vector<unsigned> e(static_cast<std::size_t>(variables), 0);
    std::copy(t.exponents.begin(), t.exponents.end(), e.begin() + offset);
    out.push_back({t.coefficient, e});
  }
  return Polynomial(variables, std::move(out));
}

Rational Polynomial::evaluate(const std::vector<Rational>& x) const {
  if (x.size() < static_cast<std::size_t>(variables_)) throw Error(ErrorKind::InvalidParams, "too few coordinates");
  Rational sum = 0;
  for (const auto& t : terms_) {
    Rational v = t.coefficient;
    for (std::size_t i = 0; i < t.exponents.size(); ++i) {
      if (t.exponents[i]) v *= rational_pow(x[i], t.exponents[i]);
    }
    sum += v;
  }
  return sum;
}

Interval Polynomial::evaluate(const std::vector<Interval>& box) const {
  if (box.size() < static_cast<std::size_t>(variables_)) throw Error(ErrorKind::InvalidParams, "too few coordinates");
  Interval sum(Rational(0));
  for (const auto& t : terms_) {
    Interval v(t.coefficient);
    for (std::size_t i = 0; i < t.exponents.size(); ++i) {
      if (t.exponents[i]) v = v * pow(box[i], t.exponents[i]);
    }
    sum = sum + v;
  }
  return sum;
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  const int n = std::max(variables_, other.variables_);
  auto terms = widen(n).terms_;
  for (const auto& t : other.widen(n).terms_) terms.push_back(t);
  return Polynomial(n, std::move(terms));
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
  const int n = std::max(variables_, other.variables_);
  auto terms = widen(n).terms_;
  for (auto t : other.widen(n).terms_) {
    t.coefficient = -t.coefficient;
    terms.push_back(std::move(t));
  }
  return Polynomial(n, std::move(terms));
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  const int n = std::max(variables_, other.variables_);
  std::vector<Term> out;
  for (const auto& a : widen(n).terms_) {
    for (const auto& b : other.widen(n).terms_) {
      std::vector<unsigned> e(static_cast<std::size_t>(n));
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = a.exponents[i] + b.exponents[i];
      out.push_back({a.coefficient * b.coefficient, e});
    }
  }
  return Polynomial(n, std::move(out));
}

bool Polynomial::operator==(const Polynomial& other) const {
  const int n = std::max(variables_, other.variables_);
  const auto a = widen(n).terms_;
  const auto b = other.widen(n).terms_;
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].coefficient != b[i].coefficient || a[i].exponents != b[i].exponents) return false;
  }
  return true;
}

namespace {

struct PolyParser {
  std::string_view s;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::ParseError, what + " at column " + std::to_string(pos + 1) + " in '" + std::string(s) + "'");
  }
  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool at_end() {
    skip();
    return pos >= s.size();
  }
  std::string digits() {
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    return std::string(s.substr(start, pos - start));
  }
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, int variables) {
  PolyParser p{text};
  std::vector<std::pair<Rational, std::map<int, unsigned>>> raw;
  int max_var = -1;
  bool first = true;
  while (!p.at_end()) {
    Rational sign = 1;
    if (text[p.pos] == '+' || text[p.pos] == '-') {
      if (text[p.pos] == '-') sign = -1;
      ++p.pos;
    } else if (!first) {
      p.fail("expected '+' or '-'");
    }
    first = false;
    p.skip();
    Rational coef = 1;
    bool have_factor = false;
    if (p.pos < text.size() && std::isdigit(static_cast<unsigned char>(text[p.pos]))) {
      std::string num = p.digits();
      std::string den = "1";
      if (p.pos < text.size() && text[p.pos] == '/') {
        ++p.pos;
        den = p.digits();
        if (den.empty()) p.fail("missing denominator");
      }
      coef = parse_rational(num + "/" + den);
      have_factor = true;
    }
    std::map<int, unsigned> mono;
    while (true) {
      p.skip();
      if (p.pos < text.size() && text[p.pos] == '*') {
        ++p.pos;
        p.skip();
      }
      if (p.pos >= text.size() || text[p.pos] != 'x') break;
      ++p.pos;
      std::string idx = p.digits();
      if (idx.empty()) p.fail("expected variable index after 'x'");
      int v = std::stoi(idx);
      unsigned e = 1;
      if (p.pos < text.size() && text[p.pos] == '^') {
        ++p.pos;
        std::string ex = p.digits();
        if (ex.empty()) p.fail("expected exponent after '^'");
        e = static_cast<unsigned>(std::stoul(ex));
      }
      mono[v] += e;
      max_var = std::max(max_var, v);
      have_factor = true;
    }
    if (!have_factor) p.fail("expected a term");
    raw.emplace_back(sign * coef, std::move(mono));
  }
  if (raw.empty()) p.fail("empty polynomial");
  const int n = std::max({variables, max_var + 1, 1});
  std::vector<Polynomial::Term> terms;
  for (auto& [c, mono] : raw) {
    std::vector<unsigned> e(static_cast<std::size_t>(n), 0);
    for (auto [v, k] : mono) e[static_cast<std::size_t>(v)] = k;
    terms.push_back({c, e});
  }
  return Polynomial(n, std::move(terms));
}

std::string to_string(const Polynomial& p) {
  if (p.terms().empty()) return "0";
  std::string out;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    Rational c = it->coefficient;
    if (!first) out += c < 0 ? " - " : " + ";
    else if (c < 0) out += "-";
    first = false;
    Rational a = abs(c);
    bool constant = std::all_of(it->exponents.begin(), it->exponents.end(), [](unsigned e) { return e == 0; });
    std::string mono;
    for (std::size_t i = 0; i < it->exponents.size(); ++i) {
      if (!it->exponents[i]) continue;
      if (!mono.empty()) mono += ' ';
      mono += "x" + std::to_string(i);
      if (it->exponents[i] > 1) mono += "^" + std::to_string(it->exponents[i]);
    }
    if (constant) out += to_string(a);
    else if (a == 1) out += mono;
    else out += to_string(a) + " " + mono;
  }
  return out;
}

}  // namespace telescope
