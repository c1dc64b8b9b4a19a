#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "telescope/acceptance.hpp"
#include "telescope/bounds.hpp"
#include "telescope/constructible.hpp"
#include "telescope/fibred.hpp"
#include "telescope/homology.hpp"
#include "telescope/mcomplex.hpp"
#include "telescope/poset.hpp"

using nlohmann::json;
using namespace telescope;

namespace {

constexpr int kComputationError = 1;
constexpr int kUsageError = 2;

// Bad input files are reported as usage errors, failures inside a computation as 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << data;
}

json integer_json(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

json torsion_json(const BettiVector& b) {
  json out = json::array();
  for (const auto& t : b.torsion) {
    json row = json::array();
    for (const auto& z : t) row.push_back(integer_json(z));
    out.push_back(row);
  }
  return out;
}

void print_text(const json& j, const std::string& prefix = "") {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = prefix + it.key();
    if (it->is_object()) {
      print_text(*it, key + ".");
    } else if (it->is_string()) {
      std::cout << key << ": " << it->get<std::string>() << "\n";
    } else {
      std::cout << key << ": " << it->dump() << "\n";
    }
  }
}

void emit(const json& j, const std::string& mode) {
  if (mode == "text") {
    print_text(j);
  } else {
    std::cout << j.dump(2) << "\n";
  }
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw UsageError("expected a comma separated list of integers, got '" + text + "'");
    }
  }
  if (out.empty()) throw UsageError("empty integer list");
  return out;
}

const char* kQuadrantFile =
    "# closed first quadrant x0 >= 0, x1 >= 0\n"
    "p1: x0\n"
    "p2: x1\n"
    "(or (and (> p1) (> p2))\n"
    "    (and (> p1) (= p2))\n"
    "    (and (= p1) (> p2))\n"
    "    (and (= p1) (= p2)))\n";

const char* kPuncturedDiskFile =
    "# open unit disk without the origin\n"
    "p1: x0^2 + x1^2 - 1\n"
    "p2: x0^2 + x1^2\n"
    "(and (< p1) (> p2))\n";

const char* kTwoIntervalsFile =
    "# 1 < |x0| < 3\n"
    "p1: x0^2 - 1\n"
    "p2: 9 - x0^2\n"
    "(and (> p1) (> p2))\n";

const char* kM22File =
    "# M(2,2): 1 above 0, use with --caps 2,2\n"
    "0 < 1\n";

const char* kTwoBoxesFile =
    "# two boxes in R^2 whose x-shadows overlap\n"
    "0,2x0,1\n"
    "1,3x2,3\n";

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tscope: telescopes, M complexes and Betti bounds"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string output;
  std::uint64_t seed = 0;
  app.add_option("--output", output, "json or text")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--seed", seed, "seed for randomized procedures");

  auto* hom = app.add_subcommand("homology", "integral homology of a simplicial complex file");
  std::string complex_file;
  int max_degree = -1;
  hom->add_option("complex", complex_file, "one maximal simplex per line")->required();
  hom->add_option("--max-degree", max_degree, "highest degree computed");

  auto* mc = app.add_subcommand("mcomplex", "build M(m_0, ..., m_N) from a poset and caps");
  std::string poset_file, caps_text;
  int connectivity = -1;
  bool want_collapse = false;
  std::string emit_complex;
  mc->add_option("--poset", poset_file, "lines 'a < b'")->required();
  mc->add_option("--caps", caps_text, "m_0,...,m_N")->required();
  mc->add_option("--check-connectivity", connectivity, "check reduced homology below degree m");
  mc->add_flag("--collapse", want_collapse, "try elementary collapses");
  mc->add_option("--emit-complex", emit_complex, "write the maximal simplices");

  auto* tel = app.add_subcommand("telescope", "homology of the telescope of a sign-condition formula");
  std::string formula_file, eta_text = "1/10", box_text, policy_text = "outer", emit_boxes, emit_image;
  int m = 2, depth = 8, runs = 2;
  bool compact = false;
  tel->add_option("--formula", formula_file, "formula file")->required();
  tel->add_option("--m", m, "ladder length");
  tel->add_option("--eta", eta_text, "first ladder base");
  tel->add_option("--box", box_text, "bounding box lo,hi x ...")->required();
  tel->add_option("--depth", depth, "bisection depth");
  tel->add_option("--policy", policy_text, "outer, inner or strict")->check(CLI::IsMember({"outer", "inner", "strict"}));
  tel->add_option("--runs", runs, "length of the squaring schedule eta, eta^2, ...");
  tel->add_flag("--compact", compact, "intersect each level with the ball |x|^2 <= 1/delta");
  tel->add_option("--emit-boxes", emit_boxes, "write the final box set");
  tel->add_option("--emit-image", emit_image, "write a PPM image (2D only)");

  auto* fib = app.add_subcommand("fibred", "fibred-power bound on the Betti numbers of a projection");
  std::string boxes_file;
  int fib_n = 1, fib_k = 0;
  fib->add_option("--boxes", boxes_file, "box file")->required();
  fib->add_option("--n", fib_n, "dimension of the base");
  fib->add_option("--k", fib_k, "homological degree");

  auto* bnd = app.add_subcommand("bounds", "evaluate a Betti bound formula");
  std::string variant;
  BoundParams bp;
  std::string c_text = "1", c_prime_text = "1";
  long ell = -1, alpha = 0, beta = 0;
  bnd->add_option("--variant", variant,
                  "equations, nonstrict, mixed, degree_k, projection, pfaffian_total, pfaffian_degree_k, "
                  "pfaffian_projection, telescope_count, fibred_count")
      ->required()
      ->check(CLI::IsMember({"equations", "i", "nonstrict", "ii", "mixed", "iii", "degree_k", "projection",
                             "pfaffian_total", "pfaffian_degree_k", "pfaffian_projection", "telescope_count",
                             "fibred_count"}));
  bnd->add_option("--n", bp.n);
  bnd->add_option("--r", bp.r);
  bnd->add_option("--k", bp.k);
  bnd->add_option("--s", bp.s);
  bnd->add_option("--d", bp.d);
  bnd->add_option("--p", bp.p);
  bnd->add_option("--c", c_text, "O-constant, a positive integer");
  bnd->add_option("--c-prime", c_prime_text, "elimination exponent constant");
  bnd->add_option("--ell", ell, "Pfaffian chain order");
  bnd->add_option("--alpha", alpha, "Pfaffian chain degree");
  bnd->add_option("--beta", beta, "Pfaffian function degree");

  auto* suite = app.add_subcommand("suite", "run the acceptance criteria");
  std::vector<int> only;
  suite->add_option("--only", only, "criterion ids");

  auto* ex = app.add_subcommand("examples", "write the example inputs");
  std::string dir = ".";
  ex->add_option("--dir", dir, "target directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    json out;
    if (hom->parsed()) {
      auto k = parse_complex(read_file(complex_file));
      auto b = betti(k, max_degree);
      out["betti"] = b.free_ranks;
      out["torsion"] = torsion_json(b);
      out["euler"] = k.euler_characteristic();
    } else if (mc->parsed()) {
      auto parsed = parse_poset(read_file(poset_file));
      auto caps = parse_int_list(caps_text);
      std::vector<int> elements;
      for (int p = 0; p < static_cast<int>(caps.size()); ++p) elements.push_back(p);
      for (int x : parsed.elements()) {
        if (x >= static_cast<int>(caps.size())) throw UsageError("poset element " + std::to_string(x) + " has no cap");
      }
      MSpec spec(Poset(elements, parsed.relations()), caps);
      auto built = build_m(spec);
      auto b = betti(built.complex);
      out["f_vector"] = built.complex.f_vector();
      out["betti"] = b.free_ranks;
      out["torsion"] = torsion_json(b);
      out["m"] = spec.m();
      out["connectivity_ok"] = nullptr;
      out["collapsible"] = nullptr;
      if (connectivity >= 0) out["connectivity_ok"] = check_connectivity(built.complex, connectivity).homology_ok;
      if (want_collapse) out["collapsible"] = collapse(built.complex, 32, seed) == CollapseResult::Collapsible;
      if (!emit_complex.empty()) write_file(emit_complex, format_complex(built.complex));
    } else if (tel->parsed()) {
      TelescopeOptions o;
      o.m = m;
      o.depth = depth;
      o.policy = parse_policy(policy_text);
      o.compact = compact;
      o.box = parse_box(box_text);
      auto formula = parse_formula(read_file(formula_file));
      if (runs < 2) throw UsageError("--runs must be at least 2");
      auto s = stabilize(formula, o, squaring_schedule(parse_rational(eta_text), runs));
      out["betti"] = s.betti.free_ranks;
      out["torsion"] = torsion_json(s.betti);
      out["components"] = box_components(s.last_set.boxes());
      out["eta_used"] = to_string(s.eta_used);
      out["stable"] = s.stable;
      out["truncated"] = s.truncated;
      json history = json::array();
      for (const auto& r : s.runs) history.push_back(r.free_ranks);
      out["runs"] = history;
      if (!emit_boxes.empty()) write_file(emit_boxes, format_boxes(s.last_set.boxes()));
      if (!emit_image.empty()) write_file(emit_image, render_ppm(s.last_set));
    } else if (fib->parsed()) {
      auto res = check_inequality(parse_boxes(read_file(boxes_file)), fib_n, fib_k);
      out["lhs"] = res.lhs;
      out["rhs"] = res.rhs;
      out["holds"] = res.holds;
      json table = json::array();
      for (const auto& e : res.table) table.push_back({e.p, e.q, e.betti});
      out["table"] = table;
    } else if (bnd->parsed()) {
      try {
        bp.c = Integer(c_text);
        bp.c_prime = Integer(c_prime_text);
      } catch (const std::invalid_argument&) {
        throw UsageError("--c and --c-prime take integers");
      }
      if (ell >= 0) bp.pfaffian = PfaffianParams{ell, alpha, beta};
      Integer value;
      std::string formula;
      if (variant == "degree_k") {
        value = gv_bound_k(bp);
        formula = "(c nu s d)^n, nu = min{k+1, n-k, s}";
        out["nu"] = nu(bp.n, bp.k, bp.s);
      } else if (variant == "projection") {
        auto pb = projection_bound(bp);
        value = pb.value;
        formula = "sum_{p=0}^{k} (c (p+1)(k+1) s d)^(n+(p+1)r)";
        json terms = json::array();
        for (const auto& t : pb.terms) terms.push_back(t.get_str());
        out["terms"] = terms;
        out["elimination"] = pb.elimination.get_str();
      } else if (variant == "telescope_count") {
        value = telescope_polynomial_count(bp.k, bp.s);
        formula = "4(k+1)s";
      } else if (variant == "fibred_count") {
        value = fibred_polynomial_count(bp.p, bp.k, bp.s);
        formula = "4(p+1)(k+1)s";
      } else if (variant.rfind("pfaffian_", 0) == 0) {
        auto v = parse_pfaffian_variant(variant.substr(9));
        if (!bp.pfaffian) throw UsageError("Pfaffian variants need --ell, --alpha and --beta");
        value = pfaffian_bound(v, bp);
        formula = pfaffian_formula(v);
      } else {
        auto v = parse_classical_variant(variant);
        value = classical_bound(v, bp);
        formula = classical_formula(v);
      }
      out["value"] = value.get_str();
      out["formula"] = formula;
      out["constants_note"] = std::string(kConstantsNote);
    } else if (suite->parsed()) {
      auto results = run_acceptance(seed, only);
      bool all = true;
      json rows = json::array();
      for (const auto& r : results) {
        all = all && r.passed;
        if (output == "json") {
          rows.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail},
                          {"budget_seconds", r.budget_seconds}});
        } else {
          std::cout << format_result(r) << "\n";
        }
      }
      if (output == "json") emit({{"criteria", rows}, {"passed", all}, {"seed", seed}}, output);
      return all ? EXIT_SUCCESS : kComputationError;
    } else if (ex->parsed()) {
      std::filesystem::create_directories(dir);
      const std::vector<std::pair<std::string, const char*>> files{{"quadrant.txt", kQuadrantFile},
                                                                   {"punctured_disk.txt", kPuncturedDiskFile},
                                                                   {"two_intervals.txt", kTwoIntervalsFile},
                                                                   {"m22.poset", kM22File},
                                                                   {"two_boxes.txt", kTwoBoxesFile}};
      json written = json::array();
      for (const auto& [name, text] : files) {
        auto path = (std::filesystem::path(dir) / name).string();
        write_file(path, text);
        written.push_back(path);
      }
      out["files"] = written;
    }
    emit(out, output.empty() ? "json" : output);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::ParseError ? kUsageError : kComputationError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kComputationError;
  }
  return EXIT_SUCCESS;
}
