// stringy: command-line front end for scenario verification, p-adic
// integration and catalog point counts.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "stringy/count.hpp"
#include "stringy/errors.hpp"
#include "stringy/padic.hpp"
#include "stringy/rational.hpp"
#include "stringy/report.hpp"
#include "stringy/scenario.hpp"

namespace fs = std::filesystem;
using namespace stringy;

namespace {

constexpr int kAgree = 0;
constexpr int kDisagree = 1;
constexpr int kInputError = 2;

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

mpq_class rational_arg(const std::string& text, const char* what) {
  const auto r = parse_rational(text);
  if (!r) throw ValidationError(std::string(what) + ": '" + text + "' is not an exact rational");
  return *r;
}

mpz_class integer_arg(const std::string& text, const char* what) {
  const mpq_class r = rational_arg(text, what);
  if (r.get_den() != 1) throw ValidationError(std::string(what) + ": '" + text + "' is not an integer");
  return r.get_num();
}

std::vector<fs::path> scenario_files(const std::vector<std::string>& scenarios,
                                     const std::string& corpus) {
  std::vector<fs::path> files(scenarios.begin(), scenarios.end());
  if (!corpus.empty()) {
    if (!fs::is_directory(corpus)) throw ValidationError("no corpus directory " + corpus);
    std::vector<fs::path> found;
    for (const auto& e : fs::directory_iterator(corpus)) {
      if (e.is_regular_file() && e.path().extension() == ".json") found.push_back(e.path());
    }
    std::sort(found.begin(), found.end());
    files.insert(files.end(), found.begin(), found.end());
  }
  if (files.empty()) throw ValidationError("no scenario given (--scenario or --corpus)");
  return files;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + out_path);
  out << text;
}

struct ScenarioArgs {
  std::vector<std::string> scenarios;
  std::string corpus;
  std::string format = "table";
  std::string out;
};

void add_scenario_args(CLI::App* cmd, ScenarioArgs& a, bool allow_corpus) {
  cmd->add_option("--scenario", a.scenarios, "Scenario JSON file (repeatable)");
  if (allow_corpus) cmd->add_option("--corpus", a.corpus, "Directory of scenario files");
  cmd->add_option("--format", a.format, "Output format")
      ->check(CLI::IsMember({"table", "json"}));
  cmd->add_option("--out", a.out, "Write the report to this file");
}

int run_compute_cmd(const ScenarioArgs& a) {
  std::vector<Report> reports;
  for (const auto& f : scenario_files(a.scenarios, a.corpus)) {
    reports.push_back(run_compute(load_scenario(f)));
  }
  if (a.format == "json") {
    emit(render_json(reports, utc_timestamp()), a.out);
  } else {
    std::string text;
    for (const auto& r : reports) text += render_table(r);
    emit(text, a.out);
  }
  return kAgree;
}

int run_verify_cmd(const ScenarioArgs& a, const std::string& qs_text,
                   const std::string& roots_text) {
  std::vector<mpz_class> qs;
  for (const auto& s : split(qs_text)) qs.push_back(integer_arg(s, "--q"));
  std::vector<mpq_class> roots;
  for (const auto& s : split(roots_text)) roots.push_back(rational_arg(s, "--root"));

  std::vector<Report> reports;
  for (const auto& f : scenario_files(a.scenarios, a.corpus)) {
    const Scenario s = load_scenario(f);
    reports.push_back(run_verify(s, verification_points(s, qs, roots)));
  }
  if (a.format == "json") {
    emit(render_json(reports, utc_timestamp()), a.out);
  } else {
    std::string text;
    for (const auto& r : reports) text += render_table(r);
    emit(text, a.out);
  }
  const bool ok = std::all_of(reports.begin(), reports.end(),
                              [](const Report& r) { return r.agree(); });
  return ok ? kAgree : kDisagree;
}

int run_hodge_cmd(const ScenarioArgs& a) {
  int status = kAgree;
  std::string text;
  for (const auto& f : scenario_files(a.scenarios, a.corpus)) {
    const Report r = run_compute(load_scenario(f));
    text += "scenario " + r.scenario + "\n";
    for (const auto& s : r.resolutions) {
      text += "  " + s.name + ":";
      if (!s.hodge) {
        text += " no stringy Hodge numbers, E_st is " + s.polynomiality() + "\n";
        continue;
      }
      std::int64_t top = 0;
      for (const auto& [ij, h] : s.hodge->numbers) top = std::max({top, ij.first, ij.second});
      text += "\n";
      for (std::int64_t i = top; i >= 0; --i) {
        text += "    ";
        for (std::int64_t j = 0; j <= top; ++j) {
          const std::string h = s.hodge->at(i, j).get_str();
          text += std::string(h.size() < 4 ? 4 - h.size() : 0, ' ') + h;
        }
        text += "\n";
      }
    }
  }
  emit(text, a.out);
  return status;
}

struct IntegrateArgs {
  std::string exps;
  long r = 1;
  std::string q;
  std::string root;
  std::string domain = "m";
  int n = -1;
  long oracle = 0;
};

int run_integrate_cmd(const IntegrateArgs& a) {
  MonomialForm f;
  f.r = a.r;
  for (const auto& s : split(a.exps)) f.exponents.push_back(rational_arg(s, "--exp"));
  f.dimension = a.n < 0 ? static_cast<int>(f.exponents.size()) : a.n;
  const Domain domain = a.domain == "R" ? Domain::Integers : Domain::MaximalIdeal;

  const Convergence c = convergence_check(f);
  if (!c.converges) {
    std::cout << "diverges(" << *c.diverges_at << "): k/r = "
              << format_rational(f.scaled_exponents()[*c.diverges_at]) << " <= -1\n";
    return kAgree;
  }

  const mpz_class q = integer_arg(a.q, "--q");
  std::int64_t d = 1;
  for (const auto& k : f.scaled_exponents()) d = lcm64(d, denominator64(k));
  LocalField field = LocalField::radical(q);
  if (!a.root.empty()) {
    field = LocalField::with_root(q, d, rational_arg(a.root, "--root"));
  } else if (d == 1) {
    field = LocalField::rational(q);
  }

  const PAdicValue v = monomial_integral_cell(f, field, domain);
  std::cout << "integral  = " << v.to_string() << "\n";
  std::cout << "symbolic  = " << v.symbolic_string() << "  (u*v = q)\n";
  if (a.oracle > 0) {
    const OracleResult o = enumeration_oracle(f, field, a.oracle, domain);
    std::cout << "oracle    : cutoff " << a.oracle << ", tail ~ " << o.tail.to_double()
              << ", brackets " << (o.brackets(v.value) ? "yes" : "NO") << "\n";
    return o.brackets(v.value) ? kAgree : kDisagree;
  }
  return kAgree;
}

int run_count_cmd(const std::string& scheme_text, const std::string& q_text, bool brute) {
  const CountScheme s = parse_scheme(scheme_text);
  const mpz_class q = integer_arg(q_text, "--q");
  const mpz_class n = count_points(s, q);
  std::cout << s.to_string() << "\n";
  std::cout << "N(q)      = " << s.count().to_string() << "\n";
  std::cout << "E         = " << e_polynomial_of(s).to_string() << "\n";
  std::cout << "N(" << q.get_str() << ")" << std::string(q.get_str().size() < 5 ? 5 - q.get_str().size() : 0, ' ')
            << "= " << n.get_str() << "\n";
  if (!brute) return kAgree;
  if (!q.fits_uint_p()) throw FieldTooLarge("q too large for brute force");
  const mpz_class b = brute_force_count(s, static_cast<unsigned>(q.get_ui()));
  std::cout << "brute     = " << b.get_str() << (b == n ? "" : "  MISMATCH") << "\n";
  return b == n ? kAgree : kDisagree;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stringy E-functions, p-adic integrals and point counts"};
  app.require_subcommand(1);

  ScenarioArgs compute_args;
  auto* compute = app.add_subcommand("compute", "E_st, polynomiality and Hodge tables");
  add_scenario_args(compute, compute_args, true);

  ScenarioArgs verify_args;
  std::string verify_qs;
  std::string verify_roots;
  auto* verify = app.add_subcommand("verify", "Check resolution independence at finite fields");
  add_scenario_args(verify, verify_args, true);
  verify->add_option("--q", verify_qs, "Comma-separated q values");
  verify->add_option("--root", verify_roots, "Comma-separated roots q^(1/d), one per q");

  ScenarioArgs hodge_args;
  auto* hodge = app.add_subcommand("hodge", "Print stringy Hodge diamonds");
  add_scenario_args(hodge, hodge_args, true);

  IntegrateArgs integrate_args;
  auto* integrate = app.add_subcommand("integrate", "p-adic integral of a monomial form");
  integrate->add_option("--exp", integrate_args.exps, "Comma-separated exponents k_i")->required();
  integrate->add_option("--r", integrate_args.r, "Form index r")->check(CLI::PositiveNumber);
  integrate->add_option("--q", integrate_args.q, "Residue field size")->required();
  integrate->add_option("--root", integrate_args.root, "Exact root q^(1/d)");
  integrate->add_option("--domain", integrate_args.domain, "m (maximal ideal) or R (integers)")
      ->check(CLI::IsMember({"m", "R"}));
  integrate->add_option("--n", integrate_args.n, "Ambient dimension (default: number of exponents)");
  integrate->add_option("--oracle", integrate_args.oracle,
                        "Also run the valuation-profile oracle with this cutoff");

  std::string count_scheme;
  std::string count_q;
  bool count_brute = false;
  auto* count = app.add_subcommand("count", "Point count of a catalog scheme");
  count->add_option("--scheme", count_scheme, "Scheme expression")->required();
  count->add_option("--q", count_q, "Field size")->required();
  count->add_flag("--brute", count_brute, "Also enumerate points (prime q <= 13)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (*compute) return run_compute_cmd(compute_args);
    if (*verify) return run_verify_cmd(verify_args, verify_qs, verify_roots);
    if (*hodge) return run_hodge_cmd(hodge_args);
    if (*integrate) return run_integrate_cmd(integrate_args);
    if (*count) return run_count_cmd(count_scheme, count_q, count_brute);
  } catch (const std::exception& e) {
    std::cerr << "stringy: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
