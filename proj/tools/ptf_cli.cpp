// ptf: construct, measure and certify polynomial threshold functions.
//
// Exit codes:
//   0  success (check: Feasible; search: result matches the known answer)
//   1  malformed input or invalid parameters
//   2  size cap or budget exceeded (check cap, inconclusive search)
//   3  check: Infeasible
//   4  search: result differs from the known answer
//
// JSON reports leave out wall times so repeated runs are byte-identical.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "ptf/ptf.hpp"

namespace {

using namespace ptf;
using nlohmann::json;

enum Exit : int { kOk = 0, kBadInput = 1, kCap = 2, kInfeasible = 3, kDiscrepancy = 4 };

struct Common {
  std::string out;
  std::string format = "text";
  unsigned threads = 1;
  std::string budget;
};

SearchBudget parse_budget(const std::string& spec) {
  SearchBudget b;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("budget entry '" + item + "' is not key=value");
    const std::string key = item.substr(0, eq);
    const std::uint64_t v = std::stoull(item.substr(eq + 1));
    if (key == "tables") {
      b.max_tables = v;
    } else if (key == "classes") {
      b.max_classes = v;
    } else if (key == "lp") {
      b.max_lp_calls = v;
    } else {
      throw std::invalid_argument("unknown budget key '" + key + "' (tables, classes, lp)");
    }
  }
  return b;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

// Writes the main report to --out when given, else stdout.
void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
  } else {
    spit(c.out, text);
  }
}

int cmd_construct(const Common& c, const std::string& family_tag, int n, int d) {
  const Family fam = parse_family(family_tag);
  if (fam == Family::HsfN2 && d < 0) d = 2;
  if (fam == Family::Hsf52) {
    if (n < 0) n = 5;
    if (d < 0) d = 2;
  }
  if (n < 0 || d < 0) throw std::invalid_argument("construct " + family_tag + " needs n and d");
  const ConstructionRecipe recipe = make_recipe(fam, n, d);
  const BooleanFunction f = rebuild(recipe);
  const std::uint64_t count = dichromatic_count(f);
  std::uint64_t closed = 0;
  switch (fam) {
    case Family::GlExtremal: closed = gl_extremal_count(n, d); break;
    case Family::Hsf52: closed = 51; break;
    case Family::HsfN2: closed = hsf_n_2_count(n); break;
    case Family::HsfGeneral: closed = hsf_general_count(n, d); break;
  }
  const bool hsf = fam != Family::GlExtremal;
  std::string cert_text;
  bool cert_ok = true;
  if (hsf) {
    const PtfCertificate cert = recipe_certificate(recipe);
    cert_ok = verify_primal(f, d, cert);
    cert_text = certificate_text(FeasibilityResult{cert});
  }
  if (!c.out.empty()) {
    spit(c.out + ".tt", to_truth_table_text(f));
    spit(c.out + ".recipe.json", to_json(recipe).dump(2) + "\n");
    if (hsf) spit(c.out + ".cert", cert_text);
  }
  if (c.format == "json") {
    json j{{"family", family_tag}, {"n", n}, {"d", d}, {"table", to_hex(f)}, {"dichromatic", count},
           {"closed_form", closed}, {"recipe", to_json(recipe)}};
    if (hsf) j["certificate_verified"] = cert_ok;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << family_tag << " n=" << n << " d=" << d << "\n";
    std::cout << "table " << to_hex(f) << "\n";
    std::cout << "D=" << count << " (closed form " << closed << ")\n";
    if (hsf) std::cout << "degree-" << d << " certificate " << (cert_ok ? "verified" : "FAILED") << "\n";
    if (!c.out.empty()) std::cout << "wrote " << c.out << ".tt, " << c.out << ".recipe.json" << (hsf ? ", " + c.out + ".cert" : "") << "\n";
  }
  return count == closed && cert_ok ? kOk : kDiscrepancy;
}

int cmd_sensitivity(const Common& c, const std::string& in) {
  const BooleanFunction f = parse_truth_table_text(slurp(in));
  const std::uint64_t count = dichromatic_count(f);
  const mpq_class as = average_sensitivity(f);
  if (c.format == "json") {
    emit(c, json{{"n", f.num_vars()}, {"dichromatic", count}, {"average_sensitivity", exact_text(as)},
                 {"average_sensitivity_decimal", decimal_text(as)}}
                .dump(2) +
                "\n");
  } else {
    std::ostringstream os;
    os << "n=" << f.num_vars() << "\nD=" << count << "\nAS=" << exact_text(as) << " = " << decimal_text(as) << "\n";
    emit(c, os.str());
  }
  return kOk;
}

int cmd_check(const Common& c, const std::string& in, int d) {
  const BooleanFunction f = parse_truth_table_text(slurp(in));
  FeasibilityResult r;
  try {
    r = ptf_feasibility(f, d);
  } catch (const SizeCapExceeded& e) {
    std::cerr << "ptf check: " << e.what() << "\n";
    return kCap;
  }
  const bool feasible = is_feasible(r);
  const bool verified = feasible ? verify_primal(f, d, std::get<PtfCertificate>(r))
                                 : verify_farkas(f, d, std::get<InfeasibilityCertificate>(r));
  if (!verified) throw std::logic_error("certificate failed verification");
  const std::string cert = certificate_text(r);
  if (!c.out.empty()) spit(c.out, cert);
  if (c.format == "json") {
    std::cout << json{{"n", f.num_vars()}, {"d", d}, {"result", feasible ? "Feasible" : "Infeasible"},
                      {"certificate", cert}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << (feasible ? "Feasible" : "Infeasible") << " n=" << f.num_vars() << " d=" << d << "\n";
    if (c.out.empty()) std::cout << cert;
  }
  return feasible ? kOk : kInfeasible;
}

// Known answers for exhaustive cells: the unique (5,2) class, nothing elsewhere.
bool matches_claim(const SearchOutcome& o) {
  if (o.n == 5 && o.d == 2) return matches_uniqueness_claim(o);
  if (is_refuted_cell(o.n, o.d)) return o.verdict == Verdict::HsfClassesFound;
  return o.verdict == Verdict::NoHsfFound;
}

void write_witnesses(const std::string& prefix, const SearchOutcome& o) {
  int k = 0;
  for (const auto& r : o.representatives) {
    const std::string base = prefix + ".class" + std::to_string(k++);
    spit(base + ".tt", to_truth_table_text(r.function));
    spit(base + ".cert", certificate_text(FeasibilityResult{r.certificate}));
  }
}

int cmd_search(const Common& c, const std::string& which) {
  SearchOptions opt;
  opt.threads = c.threads;
  opt.budget = parse_budget(c.budget);
  if (which == "6-2") {
    const SixTwoResult r = search_6_2(build_hsf_5_2(), opt);
    const SixTwoBounds b = six_two_bounds();
    json j = to_json(r.outcome, false);
    j["orbit_size"] = r.orbit_size;
    j["pairs_at_forced_count"] = r.pairs_at_122;
    j["reduced_classes"] = r.reduced;
    j["certificates_verified"] = r.certificates_verified;
    j["bounds"] = {{"restriction_bound", exact_text(b.restriction_bound)},
                   {"forced_count", b.forced_count},
                   {"extremal_count", b.extremal_6_2},
                   {"mean_restriction_count", exact_text(b.mean_restriction_count)}};
    if (!c.out.empty()) {
      spit(c.out, j.dump(2) + "\n");
      int k = 0;
      for (const auto& [f, lambda] : r.reduced_certificates) {
        const std::string base = c.out + ".class" + std::to_string(k++);
        spit(base + ".tt", to_truth_table_text(f));
        spit(base + ".cert", certificate_text(FeasibilityResult{lambda}));
      }
    }
    if (c.format == "json") {
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "bound replay: D <= " << exact_text(b.restriction_bound) << " = "
                << decimal_text(b.restriction_bound) << ", D* = " << b.extremal_6_2 << ", forced D = " << b.forced_count
                << "\n";
      std::cout << "orbit of f_{5,2}: " << r.orbit_size << ", pairs: " << r.pairs << ", at D=" << b.forced_count
                << ": " << r.pairs_at_122 << ", classes: " << r.reduced
                << ", verified certificates: " << r.certificates_verified << "\n";
      std::cout << outcome_text(r.outcome);
    }
    if (r.outcome.verdict == Verdict::Inconclusive) return kCap;
    return r.outcome.verdict == Verdict::NoHsfFound ? kOk : kDiscrepancy;
  }
  int n = 0;
  int d = 0;
  if (which == "5-2") {
    n = 5;
    d = 2;
  } else if (which.rfind("exhaustive-", 0) == 0) {
    char dash = 0;
    std::istringstream is(which.substr(11));
    if (!(is >> n >> dash >> d) || dash != '-' || !is.eof()) {
      throw std::invalid_argument("expected exhaustive-<n>-<d>, got '" + which + "'");
    }
  } else {
    throw std::invalid_argument("unknown search case '" + which + "' (5-2, 6-2, exhaustive-<n>-<d>)");
  }
  // 2^64 tables at n = 6: default to a 2^32 slice unless a budget is given.
  if (n == 6 && opt.budget.max_tables == SearchBudget{}.max_tables) opt.budget.max_tables = std::uint64_t{1} << 32;
  const SearchOutcome o = bounded_search(n, d, opt);
  if (!c.out.empty()) {
    spit(c.out, to_json(o, false).dump(2) + "\n");
    write_witnesses(c.out, o);
  }
  if (c.format == "json") {
    std::cout << to_json(o, false).dump(2) << "\n";
  } else {
    std::cout << outcome_text(o);
  }
  if (o.verdict == Verdict::Inconclusive) return kCap;
  return matches_claim(o) ? kOk : kDiscrepancy;
}

int cmd_table(const Common& c, int n_max) {
  TableOptions opt;
  opt.threads = c.threads;
  const auto cells = status_table(n_max, opt);
  if (c.format == "json") {
    emit(c, to_json(cells).dump(2) + "\n");
  } else {
    emit(c, table_text(cells, n_max));
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polynomial threshold functions: constructions, sensitivity, exact PTF checks and searches"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", common.out, "Output path (prefix for construct)");
    sub->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--threads", common.threads, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--budget", common.budget, "Search caps, e.g. tables=1000000,classes=100,lp=50");
  };

  std::string family;
  int n = -1;
  int d = -1;
  auto* construct = app.add_subcommand("construct", "Build a construction; write table, recipe and certificate");
  construct->add_option("family", family, "gl-extremal | hsf-5-2 | hsf-n-2 | hsf-general")->required();
  construct->add_option("n", n, "Variables");
  construct->add_option("d", d, "Degree");
  add_common(construct);

  std::string input;
  auto* sensitivity = app.add_subcommand("sensitivity", "Dichromatic count and average sensitivity of a table");
  sensitivity->add_option("file", input, "Truth-table file")->required();
  add_common(sensitivity);

  int degree = 0;
  auto* check = app.add_subcommand("check", "Exact degree-d PTF test with certificate");
  check->add_option("file", input, "Truth-table file")->required();
  check->add_option("d", degree, "Degree")->required();
  add_common(check);

  std::string which;
  auto* search = app.add_subcommand("search", "Run a hypersensitive-function search");
  search->add_option("case", which, "5-2 | 6-2 | exhaustive-<n>-<d>")->required();
  add_common(search);

  int n_max = 12;
  auto* table = app.add_subcommand("table", "Status grid for n <= n_max");
  table->add_option("n_max", n_max, "Largest n")->check(CLI::Range(1, 14));
  add_common(table);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kBadInput;
  }

  try {
    if (*construct) return cmd_construct(common, family, n, d);
    if (*sensitivity) return cmd_sensitivity(common, input);
    if (*check) return cmd_check(common, input, degree);
    if (*search) return cmd_search(common, which);
    if (*table) return cmd_table(common, n_max);
  } catch (const SizeCapExceeded& e) {
    std::cerr << "ptf: " << e.what() << "\n";
    return kCap;
  } catch (const std::exception& e) {
    std::cerr << "ptf: " << e.what() << "\n";
    return kBadInput;
  }
  return kBadInput;
}
