// Acceptance gate: one PASS/FAIL line per criterion.
//
//   acceptance          run every criterion
//   acceptance N        run criterion N only

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "oracles.hpp"
#include "stringy/count.hpp"
#include "stringy/errors.hpp"
#include "stringy/padic.hpp"
#include "stringy/rational.hpp"
#include "stringy/report.hpp"
#include "stringy/scenario.hpp"
#include "stringy/stringy_e.hpp"

namespace fs = std::filesystem;
using namespace stringy;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> failures;
  std::string summary;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      failures.push_back(what);
    }
  }
};

MonomialForm form(std::vector<mpq_class> k, int n) {
  MonomialForm f;
  f.exponents = std::move(k);
  f.dimension = n;
  return f;
}

std::map<SubsetMask, mpz_class> counts_at(const BlowupData& b, const mpz_class& q) {
  std::map<SubsetMask, mpz_class> out;
  for (const auto& [j, p] : b.counts) out[j] = p(q);
  return out;
}

// C1: E_st of A^n through Bl_0(A^n) is (uv)^n.
Outcome blowup_invariance() {
  Outcome o;
  for (unsigned n = 2; n <= 6; ++n) {
    const StringyE e = stringy_E(blowup_strata(n).resolution);
    const PolynomialVerdict v = is_polynomial(e.value, 1);
    o.require(v.kind == Polynomiality::Polynomial && *v.poly == EPoly::w_power(n),
              "n=" + std::to_string(n) + ": E_st = " + e.value.to_string());
  }
  o.summary = "E_st(Bl_0 A^n) = (uv)^n for n = 2..6";
  return o;
}

// C2: global integral on Bl_0(A^n) is 1; N_st(q) = q^n.
Outcome change_of_variables() {
  Outcome o;
  for (unsigned n = 2; n <= 6; ++n) {
    const BlowupData b = blowup_strata(n);
    for (long q : {2, 3, 5, 7}) {
      const auto counts = counts_at(b, q);
      const PAdicValue v = global_integral(form({n - 1}, static_cast<int>(n)), LocalField::rational(q), counts);
      const StringyPointCount nst = stringy_point_count(b.resolution, counts, q);
      const std::string at = "n=" + std::to_string(n) + " q=" + std::to_string(q);
      o.require(v.is_rational() && v.rational() == 1, at + ": integral " + v.to_string());
      o.require(nst.count == pow_integer(mpz_class(q), n), at + ": N_st " + nst.count.get_str());
    }
  }
  o.summary = "global_integral = 1 and N_st = q^n, n = 2..6, q = 2,3,5,7";
  return o;
}

// C3: gauge_integral(N/q^n) with brute-force N equals the Haar volume of
// the scheme's R-points, computed independently from the cell integrals.
Outcome gauge_forms() {
  Outcome o;
  int checked = 0;
  for (const auto& s : catalog()) {
    if (!s.has_gauge_form()) continue;
    const int n = static_cast<int>(s.dimension());
    for (unsigned q : {2u, 3u, 5u}) {
      const LocalField field = LocalField::rational(q);
      const mpz_class brute = brute_force_count(s, q);
      const PAdicValue g = gauge_integral(field, brute, n);
      // A^n(R) = R^n; T^n(R) = (R minus m)^n with dx/x of absolute value 1.
      RadicalNumber volume(1);
      for (int i = 0; i < n; ++i) {
        const RadicalNumber r_cell = monomial_integral_cell(form({0}, 1), field, Domain::Integers).value;
        const RadicalNumber m_cell = monomial_integral_cell(form({0}, 1), field).value;
        volume *= s.kind() == CountScheme::Kind::Torus ? r_cell - m_cell : r_cell;
      }
      o.require(g.value == volume && brute == count_points(s, q),
                s.to_string() + " q=" + std::to_string(q) + ": " + g.to_string() + " vs " + volume.to_string());
      ++checked;
    }
  }
  o.require(checked > 0, "no gauge-form schemes in the catalog");
  o.summary = std::to_string(checked) + " (scheme, q) pairs with N from brute force";
  return o;
}

// C4: closed form inside [partial, partial + tail], tail < 2^-60.
Outcome monomial_integrals() {
  Outcome o;
  const std::vector<mpq_class> ks{mpq_class(-3, 4), mpq_class(-1, 2), 0, mpq_class(1, 2), 1, 2, mpq_class(7, 3)};
  const RadicalNumber bound = RadicalNumber(2).pow(-60);
  int points = 0;
  int bracketed = 0;
  int tight = 0;
  for (const auto& k : ks) {
    for (long q : {2, 3, 5, 9, 27}) {
      const LocalField field = LocalField::radical(q);
      const MonomialForm f = form({k}, 1);
      const RadicalNumber exact = monomial_integral_cell(f, field).value;
      const OracleResult r = enumeration_oracle(f, field, 64);
      const std::string at = "k=" + format_rational(k) + " q=" + std::to_string(q);
      ++points;
      const bool in = r.brackets(exact);
      const bool small = r.tail < bound;
      bracketed += in ? 1 : 0;
      tight += small ? 1 : 0;
      o.require(in, at + ": not bracketed");
      std::ostringstream tail;
      tail << r.tail.to_double();
      o.require(small, at + ": tail " + tail.str() + " >= 2^-60");
    }
  }
  o.summary = std::to_string(bracketed) + "/" + std::to_string(points) + " bracketed, " +
              std::to_string(tight) + "/" + std::to_string(points) + " with tail < 2^-60 at cutoff 64";
  return o;
}

// C5: k <= -1 always diverges, never a number.
Outcome divergence() {
  Outcome o;
  int checked = 0;
  for (const mpq_class& k : {mpq_class(-1), mpq_class(-3, 2), mpq_class(-2), mpq_class(-5)}) {
    for (std::int64_t r : {1, 2, 3}) {
      for (std::size_t pos : {0u, 1u}) {
        MonomialForm f;
        f.r = r;
        f.exponents = {mpq_class(r), mpq_class(r)};
        f.exponents[pos] = k * r;
        f.dimension = 2;
        const std::string at = "k=" + format_rational(k) + " r=" + std::to_string(r) + " i=" + std::to_string(pos);
        const Convergence c = convergence_check(f);
        o.require(!c.converges && c.diverges_at && *c.diverges_at == pos, at + ": convergence_check");
        for (long q : {2, 3, 9}) {
          bool cell = false;
          bool orc = false;
          try {
            (void)monomial_integral_cell(f, LocalField::radical(q));
          } catch (const Divergent& e) {
            cell = e.index() == pos;
          }
          try {
            (void)enumeration_oracle(f, LocalField::radical(q));
          } catch (const Divergent& e) {
            orc = e.index() == pos;
          }
          o.require(cell && orc, at + " q=" + std::to_string(q) + ": no Divergent");
          ++checked;
        }
      }
    }
  }
  o.summary = std::to_string(checked) + " divergent inputs rejected";
  return o;
}

// C6: open_from_closed ∘ closed_from_open = id.
Outcome mobius_roundtrip() {
  Outcome o;
  oracle::Rng rng(20240601);
  for (int i = 0; i < 200; ++i) {
    const auto width = static_cast<std::size_t>(oracle::uniform(rng, 0, 10));
    const StratumTable t = oracle::random_table(rng, Flavor::Open, width, 40);
    const StratumTable closed = closed_from_open(t);
    o.require(open_from_closed(closed) == t, "table " + std::to_string(i) + " does not round-trip");
    if (width <= 6) {
      o.require(closed == oracle::brute_transform(t, Flavor::Closed, false),
                "table " + std::to_string(i) + " differs from the full-lattice sum");
    }
  }
  o.summary = "200 random tables, up to 10 divisors";
  return o;
}

// C7: specialize(e_polynomial_of(s), q) = brute_force_count(s, q).
Outcome tate_bridge() {
  Outcome o;
  int checked = 0;
  for (const auto& s : catalog()) {
    for (unsigned q : {2u, 3u, 5u}) {
      const mpq_class lhs = specialize(e_polynomial_of(s), q);
      const mpz_class rhs = brute_force_count(s, q);
      o.require(lhs == rhs, s.to_string() + " q=" + std::to_string(q) + ": " + format_rational(lhs) +
                                " vs " + rhs.get_str());
      ++checked;
    }
  }
  o.summary = std::to_string(checked) + " (scheme, q) pairs";
  return o;
}

// C8: crepant resolution of the A_1 cone.
Outcome crepant() {
  Outcome o;
  const Scenario s = load_scenario(fs::path(STRINGY_CORPUS_DIR) / "a1_cone.json");
  const Report r = run_compute(s);
  for (std::size_t i = 0; i < s.resolutions.size(); ++i) {
    const ResolutionData& res = s.resolutions[i];
    EPoly e_y;
    for (const auto& [j, e] : res.strata.entries()) e_y += e;
    const ResolutionSummary& sum = r.resolutions[i];
    bool crepant_divisors = true;
    for (const auto& d : res.divisors) crepant_divisors = crepant_divisors && d.discrepancy == 0;
    if (crepant_divisors) {
      o.require(sum.verdict.poly && *sum.verdict.poly == e_y, res.name + ": E_st != E(Y)");
    }
    o.require(sum.hodge.has_value(), res.name + ": no Hodge table");
    if (sum.hodge) {
      o.require(!sum.hodge->has_negative, res.name + ": negative Hodge number");
      for (const auto& [ij, h] : sum.hodge->numbers) o.require(h >= 0, res.name + ": negative entry");
    }
  }
  o.require(r.resolutions.size() >= 1, "no resolutions");
  if (r.resolutions.size() >= 1) o.summary = "E_st = " + r.resolutions[0].e_st_string();
  return o;
}

// C9: the 1/3(1,1) point.
Outcome fractional() {
  Outcome o;
  const Scenario s = load_scenario(fs::path(STRINGY_CORPUS_DIR) / "third_quotient.json");
  const EPoly expected = EPoly::w_power(2, 3) + EPoly::w_power(4, 3) + EPoly::w_power(2);
  const oracle::UPoly expected_t{0, 0, 1, 0, 1, 0, 1};
  for (const auto& res : s.resolutions) {
    const StringyE e = stringy_E(res);
    const PolynomialVerdict g1 = is_polynomial(e.value, 1);
    const PolynomialVerdict g3 = is_polynomial(e.value.with_den(lcm64(e.value.den(), 3)), 3);
    o.require(g1.kind != Polynomiality::Polynomial, res.name + ": polynomial at granularity 1");
    bool threw = false;
    try {
      (void)stringy_hodge_numbers(e);
    } catch (const NotPolynomial& ex) {
      threw = ex.finest_granularity() == 3;
    }
    o.require(threw, res.name + ": hodge numbers did not raise NotPolynomial(3)");
    o.require(g3.kind == Polynomiality::Polynomial && g3.poly && *g3.poly == expected,
              res.name + ": E_st = " + e.value.to_string());
    const auto t = oracle::stringy_univariate(to_open(res), 3);
    o.require(t && *t == expected_t, res.name + ": univariate expansion in t = w^(1/3) differs");
  }
  o.summary = "E_st = w^(2/3) + w^(4/3) + w^2 on " + std::to_string(s.resolutions.size()) + " resolutions";
  return o;
}

std::string strip_timestamp(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::string out;
  while (std::getline(in, line)) {
    if (line.find("\"generated_at\"") != std::string::npos) continue;
    out += line + "\n";
  }
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// C10: two CLI verify runs over the corpus agree modulo the timestamp.
Outcome determinism() {
  Outcome o;
#ifdef STRINGY_CLI_PATH
  const fs::path dir = fs::temp_directory_path() / ("stringy_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  std::vector<std::string> reports;
  for (int run = 0; run < 2; ++run) {
    const fs::path out = dir / ("report" + std::to_string(run) + ".json");
    const std::string cmd = std::string("\"") + STRINGY_CLI_PATH + "\" verify --corpus \"" +
                            STRINGY_CORPUS_DIR + "\" --format json --out \"" + out.string() + "\"";
    const int status = std::system(cmd.c_str());
    o.require(status == 0, "run " + std::to_string(run) + " exited with status " + std::to_string(status));
    reports.push_back(slurp(out));
  }
  fs::remove_all(dir);
  o.require(!reports[0].empty(), "empty report");
  o.require(strip_timestamp(reports[0]) == strip_timestamp(reports[1]), "reports differ");
  o.summary = std::to_string(reports[0].size()) + " byte report, identical modulo generated_at";
#else
  o.require(false, "built without the stringy CLI");
#endif
  return o;
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "blow-up invariance", blowup_invariance},
      {2, "change of variables on Bl_0(A^n)", change_of_variables},
      {3, "gauge-form integral", gauge_forms},
      {4, "monomial integral vs enumeration", monomial_integrals},
      {5, "divergence for k <= -1", divergence},
      {6, "Mobius round-trip", mobius_roundtrip},
      {7, "Tate bridge", tate_bridge},
      {8, "crepant A_1 cone", crepant},
      {9, "fractional 1/3(1,1)", fractional},
      {10, "determinism of verify reports", determinism},
  };
  int only = 0;
  if (argc > 1 && std::string(argv[1]) != "all") only = std::atoi(argv[1]);

  int failed = 0;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.failures.push_back(std::string("exception: ") + e.what());
    }
    std::cout << "C" << c.id << " " << (o.pass ? "PASS" : "FAIL") << "  " << c.name;
    if (!o.summary.empty()) std::cout << ": " << o.summary;
    std::cout << "\n";
    for (const auto& f : o.failures) std::cout << "    " << f << "\n";
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
