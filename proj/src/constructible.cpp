#include "telescope/constructible.hpp"

#include <algorithm>
#include <cctype>
#include <future>
#include <map>
#include <set>
#include <sstream>

namespace telescope {

using SNode = SignFormula::Node;
using CNode = ClosedFormula::Node;

SNode SNode::atom(int function, Relation r) {
  SNode n;
  n.kind = Kind::Atom;
  n.function = function;
  n.relation = r;
  return n;
}

SNode SNode::all(std::vector<SNode> children) {
  SNode n;
  n.kind = Kind::And;
  n.children = std::move(children);
  return n;
}

SNode SNode::any(std::vector<SNode> children) {
  SNode n;
  n.kind = Kind::Or;
  n.children = std::move(children);
  return n;
}

SNode SNode::negate(SNode child) {
  SNode n;
  n.kind = Kind::Not;
  n.children.push_back(std::move(child));
  return n;
}

namespace {

void validate_node(const SNode& n, std::size_t functions) {
  switch (n.kind) {
    case SNode::Kind::Atom:
      if (n.function < 0 || static_cast<std::size_t>(n.function) >= functions) {
        throw Error(ErrorKind::InvalidParams, "atom refers to function " + std::to_string(n.function + 1) + " outside the table");
      }
      return;
    case SNode::Kind::Not:
      if (n.children.size() != 1) throw Error(ErrorKind::InvalidParams, "'not' takes exactly one operand");
      break;
    default:
      if (n.children.empty()) throw Error(ErrorKind::InvalidParams, "'and'/'or' need at least one operand");
  }
  for (const auto& c : n.children) validate_node(c, functions);
}

bool holds_node(const SNode& n, const std::vector<int>& signs) {
  switch (n.kind) {
    case SNode::Kind::Atom: {
      int s = signs[static_cast<std::size_t>(n.function)];
      switch (n.relation) {
        case Relation::Zero: return s == 0;
        case Relation::Positive: return s > 0;
        case Relation::Negative: return s < 0;
      }
      return false;
    }
    case SNode::Kind::And:
      return std::all_of(n.children.begin(), n.children.end(), [&](const SNode& c) { return holds_node(c, signs); });
    case SNode::Kind::Or:
      return std::any_of(n.children.begin(), n.children.end(), [&](const SNode& c) { return holds_node(c, signs); });
    case SNode::Kind::Not:
      return !holds_node(n.children[0], signs);
  }
  return false;
}

int sign_of(const Rational& q) { return sgn(q); }

}  // namespace

void SignFormula::validate() const {
  if (variables < 1) throw Error(ErrorKind::InvalidParams, "formula needs at least one variable");
  for (const auto& p : functions) {
    if (p.variables() != variables) throw Error(ErrorKind::InvalidParams, "function table has mixed variable counts");
  }
  for (const auto& p : side_conditions) {
    if (p.variables() != variables) throw Error(ErrorKind::InvalidParams, "side condition has the wrong variable count");
  }
  validate_node(root, functions.size());
}

bool SignFormula::holds(const std::vector<int>& signs) const {
  if (signs.size() != functions.size()) throw Error(ErrorKind::InvalidParams, "sign vector length differs from the table");
  return holds_node(root, signs);
}

bool SignFormula::holds_at(const std::vector<Rational>& x) const {
  for (const auto& g : side_conditions) {
    if (g.evaluate(x) < 0) return false;
  }
  std::vector<int> signs;
  for (const auto& h : functions) signs.push_back(sign_of(h.evaluate(x)));
  return holds_node(root, signs);
}

namespace {

bool closed_holds(const CNode& n, const std::vector<Rational>& values) {
  switch (n.kind) {
    case CNode::Kind::Atom: {
      const Rational& v = values[static_cast<std::size_t>(n.atom.function)];
      return (!n.atom.lo || *n.atom.lo <= v) && (!n.atom.hi || v <= *n.atom.hi);
    }
    case CNode::Kind::And:
      return std::all_of(n.children.begin(), n.children.end(), [&](const CNode& c) { return closed_holds(c, values); });
    case CNode::Kind::Or:
      return std::any_of(n.children.begin(), n.children.end(), [&](const CNode& c) { return closed_holds(c, values); });
  }
  return false;
}

}  // namespace

bool ClosedFormula::holds_at(const std::vector<Rational>& x) const {
  std::vector<Rational> values;
  for (const auto& h : functions) values.push_back(h.evaluate(x));
  return closed_holds(root, values);
}

namespace {

void print(const SNode& n, std::string& out) {
  switch (n.kind) {
    case SNode::Kind::Atom: {
      const char* rel = n.relation == Relation::Zero ? "=" : n.relation == Relation::Positive ? ">" : "<";
      out += std::string("(") + rel + " p" + std::to_string(n.function + 1) + ")";
      return;
    }
    case SNode::Kind::And: out += "(and"; break;
    case SNode::Kind::Or: out += "(or"; break;
    case SNode::Kind::Not: out += "(not"; break;
  }
  for (const auto& c : n.children) {
    out += ' ';
    print(c, out);
  }
  out += ')';
}

void print(const CNode& n, std::string& out) {
  switch (n.kind) {
    case CNode::Kind::Atom: {
      const auto& a = n.atom;
      std::string h = "p" + std::to_string(a.function + 1);
      if (a.lo && a.hi) out += "(" + to_string(*a.lo) + " <= " + h + " <= " + to_string(*a.hi) + ")";
      else if (a.lo) out += "(" + h + " >= " + to_string(*a.lo) + ")";
      else if (a.hi) out += "(" + h + " <= " + to_string(*a.hi) + ")";
      else out += "true";
      return;
    }
    case CNode::Kind::And: out += "(and"; break;
    case CNode::Kind::Or: out += "(or"; break;
  }
  for (const auto& c : n.children) {
    out += ' ';
    print(c, out);
  }
  out += ')';
}

std::string table_text(const std::vector<Polynomial>& functions) {
  std::string out;
  for (std::size_t i = 0; i < functions.size(); ++i) {
    out += "p" + std::to_string(i + 1) + ": " + to_string(functions[i]) + "\n";
  }
  return out;
}

}  // namespace

std::string to_string(const SignFormula& f) {
  std::string out = table_text(f.functions);
  for (const auto& g : f.side_conditions) out += "# side: " + to_string(g) + " >= 0\n";
  print(f.root, out);
  return out + "\n";
}

std::string to_string(const ClosedFormula& f) {
  std::string out = table_text(f.functions);
  print(f.root, out);
  return out + "\n";
}

namespace {

struct Token {
  std::string text;
  int line;
  int column;
};

class FormulaParser {
 public:
  explicit FormulaParser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  SNode parse_all() {
    if (tokens_.empty()) throw Error(ErrorKind::ParseError, "no formula given");
    SNode n = parse_form();
    if (pos_ < tokens_.size()) fail(tokens_[pos_], "unexpected text after the formula");
    return n;
  }

  int max_function = -1;
  std::vector<std::pair<int, Token>> references;

 private:
  [[noreturn]] void fail(const Token& t, const std::string& what) {
    throw Error(ErrorKind::ParseError, std::to_string(t.line) + ":" + std::to_string(t.column) + ": " + what);
  }

  const Token& next(const char* expecting) {
    if (pos_ >= tokens_.size()) {
      const Token& last = tokens_.back();
      fail(last, std::string("unexpected end of formula, expected ") + expecting);
    }
    return tokens_[pos_++];
  }

  SNode parse_form() {
    const Token& open = next("'('");
    if (open.text != "(") fail(open, "expected '(' but found '" + open.text + "'");
    const Token& head = next("an operator");
    SNode n;
    if (head.text == "and" || head.text == "or" || head.text == "not") {
      std::vector<SNode> children;
      while (pos_ < tokens_.size() && tokens_[pos_].text != ")") children.push_back(parse_form());
      const Token& close = next("')'");
      (void)close;
      if (children.empty()) fail(head, "'" + head.text + "' needs an operand");
      if (head.text == "not") {
        if (children.size() != 1) fail(head, "'not' takes exactly one operand");
        return SNode::negate(std::move(children[0]));
      }
      return head.text == "and" ? SNode::all(std::move(children)) : SNode::any(std::move(children));
    }
    Relation rel;
    if (head.text == "=") rel = Relation::Zero;
    else if (head.text == ">") rel = Relation::Positive;
    else if (head.text == "<") rel = Relation::Negative;
    else fail(head, "unknown operator '" + head.text + "'");
    const Token& ref = next("a function name");
    if (ref.text.size() < 2 || ref.text[0] != 'p' ||
        !std::all_of(ref.text.begin() + 1, ref.text.end(), [](unsigned char c) { return std::isdigit(c); })) {
      fail(ref, "expected a function name like p1, found '" + ref.text + "'");
    }
    int index = std::stoi(ref.text.substr(1)) - 1;
    if (index < 0) fail(ref, "functions are numbered from p1");
    references.emplace_back(index, ref);
    max_function = std::max(max_function, index);
    const Token& close = next("')'");
    if (close.text != ")") fail(close, "expected ')' after the atom");
    return SNode::atom(index, rel);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

}  // namespace

SignFormula parse_formula(std::string_view text) {
  std::map<int, std::pair<std::string, int>> table;  // index -> (poly text, line)
  std::vector<Token> tokens;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::string t = trim(line);
    if (t.empty()) continue;
    if (t[0] == 'p') {
      auto colon = t.find(':');
      std::string name = trim(std::string_view(t).substr(1, colon == std::string::npos ? 0 : colon - 1));
      if (colon != std::string::npos && !name.empty() &&
          std::all_of(name.begin(), name.end(), [](unsigned char c) { return std::isdigit(c); })) {
        int index = std::stoi(name) - 1;
        if (index < 0 || table.count(index)) {
          throw Error(ErrorKind::ParseError, std::to_string(line_no) + ":1: bad or repeated function p" + name);
        }
        table[index] = {t.substr(colon + 1), line_no};
        continue;
      }
    }
    for (std::size_t i = 0; i < line.size();) {
      unsigned char c = static_cast<unsigned char>(line[i]);
      if (std::isspace(c)) {
        ++i;
      } else if (c == '(' || c == ')') {
        tokens.push_back({std::string(1, static_cast<char>(c)), line_no, static_cast<int>(i + 1)});
        ++i;
      } else {
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) && line[j] != '(' && line[j] != ')') ++j;
        tokens.push_back({line.substr(i, j - i), line_no, static_cast<int>(i + 1)});
        i = j;
      }
    }
  }
  int depth = 0;
  for (const auto& t : tokens) {
    depth += t.text == "(" ? 1 : t.text == ")" ? -1 : 0;
    if (depth < 0) {
      throw Error(ErrorKind::ParseError, std::to_string(t.line) + ":" + std::to_string(t.column) + ": unbalanced ')'");
    }
  }
  if (depth > 0) throw Error(ErrorKind::ParseError, "unbalanced parentheses: " + std::to_string(depth) + " '(' not closed");

  FormulaParser parser(std::move(tokens));
  SignFormula f;
  f.root = parser.parse_all();
  for (const auto& [index, tok] : parser.references) {
    if (!table.count(index)) {
      throw Error(ErrorKind::ParseError, std::to_string(tok.line) + ":" + std::to_string(tok.column) + ": p" +
                                             std::to_string(index + 1) + " is not defined");
    }
  }
  int count = table.empty() ? 0 : table.rbegin()->first + 1;
  if (static_cast<int>(table.size()) != count) {
    throw Error(ErrorKind::ParseError, "function table must define p1 … p" + std::to_string(count) + " without gaps");
  }
  std::vector<Polynomial> raw;
  int variables = 1;
  for (const auto& [index, entry] : table) {
    try {
      raw.push_back(parse_polynomial(entry.first));
    } catch (const Error& e) {
      throw Error(ErrorKind::ParseError, "line " + std::to_string(entry.second) + ": " + e.what());
    }
    variables = std::max(variables, raw.back().variables());
  }
  f.variables = variables;
  for (auto& p : raw) f.functions.push_back(p.widen(variables));
  f.validate();
  return f;
}

std::vector<std::vector<int>> sign_sets(const SignFormula& f) {
  const std::size_t s = f.functions.size();
  if (s > 16) throw Error(ErrorKind::TooManyFunctions, std::to_string(s) + " functions; at most 16 are enumerated");
  std::vector<std::vector<int>> out;
  std::vector<int> signs(s, -1);
  while (true) {
    if (holds_node(f.root, signs)) out.push_back(signs);
    std::size_t i = s;
    while (i > 0 && signs[i - 1] == 1) signs[--i] = -1;
    if (i == 0) break;
    ++signs[i - 1];
  }
  return out;
}

std::vector<std::vector<int>> sign_cubes(const SignFormula& f) {
  std::set<std::vector<int>> level;
  for (auto& v : sign_sets(f)) level.insert(std::move(v));
  std::vector<std::vector<int>> primes;
  while (!level.empty()) {
    std::set<std::vector<int>> next, merged;
    for (const auto& c : level) {
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] != -1) continue;
        auto z = c, p = c;
        z[i] = 0;
        p[i] = 1;
        if (!level.count(z) || !level.count(p)) continue;
        merged.insert(c);
        merged.insert(z);
        merged.insert(p);
        auto star = c;
        star[i] = kAnySign;
        next.insert(std::move(star));
      }
    }
    for (const auto& c : level) {
      if (!merged.count(c)) primes.push_back(c);
    }
    level = std::move(next);
  }
  std::sort(primes.begin(), primes.end());
  return primes;
}

ClosedFormula relax(const SignFormula& f, const Rational& delta, const std::optional<Rational>& eps) {
  if (!(0 < delta && delta < 1)) throw Error(ErrorKind::BadThresholds, "need 0 < delta < 1");
  if (eps && !(0 < *eps && *eps < delta)) throw Error(ErrorKind::BadThresholds, "need 0 < eps < delta");
  ClosedFormula c;
  c.variables = f.variables;
  c.functions = f.functions;
  CNode any;
  any.kind = CNode::Kind::Or;
  for (const auto& signs : sign_cubes(f)) {
    CNode all;
    all.kind = CNode::Kind::And;
    for (std::size_t i = 0; i < signs.size(); ++i) {
      if (signs[i] == kAnySign) continue;
      CNode a;
      a.atom.function = static_cast<int>(i);
      if (signs[i] > 0) {
        a.atom.lo = delta;
      } else if (signs[i] < 0) {
        a.atom.hi = Rational(-delta);
      } else if (eps) {
        a.atom.lo = Rational(-*eps);
        a.atom.hi = *eps;
      } else {
        a.atom.lo = Rational(0);
        a.atom.hi = Rational(0);
      }
      all.children.push_back(std::move(a));
    }
    any.children.push_back(std::move(all));
  }
  if (f.side_conditions.empty()) {
    c.root = std::move(any);
    return c;
  }
  CNode top;
  top.kind = CNode::Kind::And;
  top.children.push_back(std::move(any));
  for (const auto& g : f.side_conditions) {
    CNode a;
    a.atom.function = static_cast<int>(c.functions.size());
    a.atom.lo = Rational(0);
    c.functions.push_back(g);
    top.children.push_back(std::move(a));
  }
  c.root = std::move(top);
  return c;
}

SignFormula compactify(const SignFormula& f, const Rational& delta) {
  if (!(delta > 0)) throw Error(ErrorKind::BadThresholds, "need delta > 0");
  SignFormula out = f;
  Polynomial ball = Polynomial::constant(f.variables, Rational(1) / delta);
  for (int i = 0; i < f.variables; ++i) {
    auto x = Polynomial::variable(f.variables, i);
    ball = ball - x * x;
  }
  out.side_conditions.push_back(std::move(ball));
  return out;
}

namespace {

void shift_atoms(SNode& n, int offset) {
  if (n.kind == SNode::Kind::Atom) n.function += offset;
  for (auto& c : n.children) shift_atoms(c, offset);
}

SignFormula combine(const SignFormula& a, const SignFormula& b, bool conjunction) {
  SignFormula out;
  out.variables = std::max(a.variables, b.variables);
  for (const auto& p : a.functions) out.functions.push_back(p.widen(out.variables));
  for (const auto& p : b.functions) out.functions.push_back(p.widen(out.variables));
  for (const auto& p : a.side_conditions) out.side_conditions.push_back(p.widen(out.variables));
  for (const auto& p : b.side_conditions) out.side_conditions.push_back(p.widen(out.variables));
  SNode right = b.root;
  shift_atoms(right, static_cast<int>(a.functions.size()));
  std::vector<SNode> parts{a.root, std::move(right)};
  out.root = conjunction ? SNode::all(std::move(parts)) : SNode::any(std::move(parts));
  return out;
}

}  // namespace

SignFormula conjoin(const SignFormula& a, const SignFormula& b) { return combine(a, b, true); }
SignFormula disjoin(const SignFormula& a, const SignFormula& b) { return combine(a, b, false); }

std::string_view to_string(Policy p) {
  switch (p) {
    case Policy::Outer: return "outer";
    case Policy::Inner: return "inner";
    case Policy::Strict: return "strict";
  }
  return "?";
}

Policy parse_policy(std::string_view text) {
  if (text == "outer") return Policy::Outer;
  if (text == "inner") return Policy::Inner;
  if (text == "strict") return Policy::Strict;
  throw Error(ErrorKind::InvalidParams, "policy must be outer, inner or strict");
}

namespace {

enum class Tri { False, Unknown, True };

Tri kleene(const CNode& n, const std::vector<Interval>& values) {
  switch (n.kind) {
    case CNode::Kind::Atom: {
      const Interval& v = values[static_cast<std::size_t>(n.atom.function)];
      const auto& lo = n.atom.lo;
      const auto& hi = n.atom.hi;
      if ((lo && v.hi < *lo) || (hi && v.lo > *hi)) return Tri::False;
      if ((!lo || v.lo >= *lo) && (!hi || v.hi <= *hi)) return Tri::True;
      return Tri::Unknown;
    }
    case CNode::Kind::And: {
      Tri r = Tri::True;
      for (const auto& c : n.children) {
        Tri t = kleene(c, values);
        if (t == Tri::False) return Tri::False;
        if (t == Tri::Unknown) r = Tri::Unknown;
      }
      return r;
    }
    case CNode::Kind::Or: {
      Tri r = Tri::False;
      for (const auto& c : n.children) {
        Tri t = kleene(c, values);
        if (t == Tri::True) return Tri::True;
        if (t == Tri::Unknown) r = Tri::Unknown;
      }
      return r;
    }
  }
  return Tri::Unknown;
}

}  // namespace

DyadicSet approximate(const ClosedFormula& c, const Box& box, int max_depth, Policy policy) {
  if (max_depth < 0 || max_depth > 24) throw Error(ErrorKind::InvalidParams, "depth must lie in 0..24");
  if (box.dim() != c.variables) throw Error(ErrorKind::InvalidParams, "box dimension differs from the formula");
  for (int i = 0; i < box.dim(); ++i) {
    if (!(box.lo[static_cast<std::size_t>(i)] < box.hi[static_cast<std::size_t>(i)])) {
      throw Error(ErrorKind::InvalidParams, "bounding box must have positive width on every axis");
    }
  }
  const DyadicSet grid(box, {});
  auto classify = [&](const DyadicCell& cell) {
    auto iv = grid.cell_box(cell).intervals();
    std::vector<Interval> values;
    values.reserve(c.functions.size());
    for (const auto& h : c.functions) values.push_back(h.evaluate(iv));
    return kleene(c.root, values);
  };

  std::vector<DyadicCell> kept;
  std::vector<DyadicCell> frontier{DyadicCell{0, std::vector<std::int64_t>(static_cast<std::size_t>(box.dim()), 0)}};
  const unsigned threads = worker_threads();
  for (int level = 0; !frontier.empty(); ++level) {
    std::vector<Tri> verdict(frontier.size());
    auto work = [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) verdict[i] = classify(frontier[i]);
    };
    if (threads > 1 && frontier.size() >= 64) {
      std::vector<std::future<void>> jobs;
      const std::size_t chunk = (frontier.size() + threads - 1) / threads;
      for (std::size_t b = 0; b < frontier.size(); b += chunk) {
        jobs.push_back(std::async(std::launch::async, work, b, std::min(frontier.size(), b + chunk)));
      }
      for (auto& j : jobs) j.get();
    } else {
      work(0, frontier.size());
    }
    std::vector<DyadicCell> next;
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      if (verdict[i] == Tri::True) {
        kept.push_back(std::move(frontier[i]));
      } else if (verdict[i] == Tri::Unknown) {
        if (level < max_depth) {
          for (auto& child : frontier[i].children()) next.push_back(std::move(child));
        } else if (policy == Policy::Outer) {
          kept.push_back(std::move(frontier[i]));
        } else if (policy == Policy::Strict) {
          throw Error(ErrorKind::DepthExceeded, "cells remain undecided at depth " + std::to_string(max_depth));
        }
      }
    }
    frontier = std::move(next);
  }
  return DyadicSet(box, std::move(kept));
}

TelescopeResult build_telescope(const SignFormula& f, const TelescopeOptions& options) {
  if (options.m < 1) throw Error(ErrorKind::InvalidParams, "telescope needs m >= 1");
  TelescopeResult out{DyadicSet(options.box, {}), geometric_ladder(options.m, options.eta), false};
  for (int i = 0; i <= options.m; ++i) {
    const Rational& delta = out.ladder.deltas[static_cast<std::size_t>(i)];
    const Rational& eps = out.ladder.epsilons[static_cast<std::size_t>(i)];
    SignFormula level = f;
    if (options.compact) {
      level = compactify(f, delta);
      const Rational r2 = Rational(1) / delta;
      for (int a = 0; a < options.box.dim(); ++a) {
        const Rational& lo = options.box.lo[static_cast<std::size_t>(a)];
        const Rational& hi = options.box.hi[static_cast<std::size_t>(a)];
        if (lo >= 0 || lo * lo < r2 || hi <= 0 || hi * hi < r2) out.truncated = true;
      }
    }
    out.set = out.set.unite(approximate(relax(level, delta, eps), options.box, options.depth, options.policy));
  }
  return out;
}

std::vector<Rational> squaring_schedule(const Rational& eta, int length) {
  std::vector<Rational> out;
  Rational e = eta;
  for (int i = 0; i < length; ++i) {
    out.push_back(e);
    e = e * e;
  }
  return out;
}

StabilizeResult stabilize(const SignFormula& f, TelescopeOptions options, const std::vector<Rational>& eta_schedule) {
  if (eta_schedule.size() < 2) throw Error(ErrorKind::InvalidParams, "stabilization needs at least two values of eta");
  StabilizeResult out;
  for (const auto& eta : eta_schedule) {
    options.eta = eta;
    auto t = build_telescope(f, options);
    out.truncated = out.truncated || t.truncated;
    out.runs.push_back(box_homology(t.set.boxes(), options.box.dim() - 1));
    out.eta_used = eta;
    out.betti = out.runs.back();
    out.last_set = std::move(t.set);
    if (out.runs.size() >= 2 && out.runs[out.runs.size() - 2] == out.runs.back()) {
      out.stable = true;
      break;
    }
  }
  return out;
}

}  // namespace telescope
