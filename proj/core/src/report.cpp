#include "stringy/report.hpp"

#include <chrono>
#include <ctime>
#include <sstream>

#include "json.hpp"
#include "stringy/errors.hpp"
#include "stringy/rational.hpp"

namespace stringy {

using nlohmann::json;

std::string ResolutionSummary::polynomiality() const {
  if (verdict.kind == Polynomiality::NotPolynomial) return "not polynomial";
  if (verdict.finest_granularity == 1) return "polynomial";
  return "polynomial at granularity " + std::to_string(verdict.finest_granularity) + " only";
}

std::string ResolutionSummary::e_st_string() const {
  if (verdict.poly) return verdict.poly->reduced().to_string();
  return e_st.value.cancelled().to_string();
}

bool PointCheck::padic_matches() const {
  return !padic || padic->value == RadicalNumber(n_st.integral);
}

bool Report::agree() const {
  for (const auto& p : pairs) {
    if (!p.agreement.equal) return false;
  }
  for (const auto& q : per_q) {
    if (!q.counts_agree) return false;
  }
  for (const auto& p : points) {
    if (!p.specialized_matches() || !p.padic_matches()) return false;
  }
  return true;
}

namespace {

ResolutionSummary summarize(const ResolutionData& r) {
  ResolutionSummary out;
  out.name = r.name;
  out.e_st = stringy_E(r);
  out.verdict = is_polynomial(out.e_st.value, out.e_st.value.den());
  if (out.verdict.kind != Polynomiality::NotPolynomial && out.verdict.finest_granularity == 1) {
    out.hodge = stringy_hodge_numbers(out.e_st);
  }
  return out;
}

/// root^(d / sub) is the sub-th root of q when root is the d-th root.
std::optional<mpq_class> root_for(const std::optional<mpq_class>& root, std::int64_t d,
                                  std::int64_t sub) {
  if (sub == 1 || !root) return std::nullopt;
  return pow_rational(*root, d / sub);
}

}  // namespace

Report run_compute(const Scenario& s) {
  Report rep;
  rep.kind = "compute";
  rep.scenario = s.name;
  rep.input_hash = s.input_hash;
  rep.dimension = s.dimension;
  rep.denominator = s.denominator;
  for (const auto& r : s.resolutions) rep.resolutions.push_back(summarize(r));
  return rep;
}

std::vector<EvaluationPoint> verification_points(const Scenario& s,
                                                 const std::vector<mpz_class>& qs,
                                                 const std::vector<mpq_class>& roots) {
  if (!roots.empty() && roots.size() != qs.size()) {
    throw ValidationError("give one root per q (" + std::to_string(qs.size()) + " q values, " +
                          std::to_string(roots.size()) + " roots)");
  }
  std::vector<EvaluationPoint> points;
  if (!qs.empty()) {
    for (std::size_t i = 0; i < qs.size(); ++i) {
      EvaluationPoint p{qs[i], std::nullopt};
      if (!roots.empty()) p.root = roots[i];
      points.push_back(std::move(p));
    }
  } else if (!s.evaluate_at.empty()) {
    points = s.evaluate_at;
  } else {
    for (int q : {2, 3, 5, 7}) points.push_back({mpz_class(q), std::nullopt});
  }
  const std::int64_t d = s.denominator;
  for (auto& p : points) {
    if (p.q < 2) throw ValidationError("q must be at least 2");
    if (d == 1) {
      p.root.reset();
      continue;
    }
    if (!p.root) {
      for (const auto& e : s.evaluate_at) {
        if (e.q == p.q && e.root) p.root = e.root;
      }
    }
    if (!p.root) {
      throw MissingRoot(s.name + ": q = " + p.q.get_str() + " needs --root with root^" +
                        std::to_string(d) + " = q");
    }
    if (*p.root <= 0 || pow_rational(*p.root, d) != mpq_class(p.q)) {
      throw InvalidRoot(s.name + ": " + format_rational(*p.root) + "^" + std::to_string(d) +
                        " != " + p.q.get_str());
    }
  }
  return points;
}

Report run_verify(const Scenario& s, const std::vector<EvaluationPoint>& points) {
  Report rep = run_compute(s);
  rep.kind = "verify";
  for (std::size_t i = 0; i < s.resolutions.size(); ++i) {
    for (std::size_t j = i + 1; j < s.resolutions.size(); ++j) {
      rep.pairs.push_back({i, j, resolutions_agree(s.resolutions[i], s.resolutions[j])});
    }
  }
  const std::int64_t d = s.denominator;
  for (const auto& pt : points) {
    QVerdict qv{pt.q, pt.root, true};
    std::optional<mpq_class> first_count;
    for (std::size_t i = 0; i < s.resolutions.size(); ++i) {
      const ResolutionData& r = s.resolutions[i];
      const std::int64_t dr = context_denominator(r);
      PointCheck pc;
      pc.resolution = i;
      pc.q = pt.q;
      pc.root = pt.root;

      std::map<SubsetMask, mpz_class> counts;
      if (i < s.counts.size() && s.counts[i]) {
        const CountTable& table = *s.counts[i];
        bool catalog = !table.empty();
        for (const auto& [mask, spec] : table) {
          catalog = catalog && spec.from_catalog();
          try {
            counts[mask] = spec.at(pt.q);
          } catch (const MissingCount&) {
            throw MissingCount(mask, r.name + ": no count for stratum " +
                                         subset_name(mask, r.divisors) + " at q = " +
                                         pt.q.get_str());
          }
        }
        pc.source = catalog ? CountSource::Catalog : CountSource::Explicit;
      } else {
        pc.source = CountSource::Strata;
        for (const auto& [mask, e] : r.strata.entries()) {
          const mpq_class n = specialize(e, mpq_class(pt.q), root_for(pt.root, d, e.den()));
          if (n.get_den() != 1) {
            throw ValidationError(r.name + ": stratum " + subset_name(mask, r.divisors) +
                                  " gives a non-integral count at q = " + pt.q.get_str());
          }
          counts[mask] = n.get_num();
        }
      }

      const auto root_r = root_for(pt.root, d, dr);
      pc.n_st = stringy_point_count(r, counts, mpq_class(pt.q), root_r);
      try {
        pc.specialized = specialize(rep.resolutions[i].e_st.value, mpq_class(pt.q), root_r);
      } catch (const NonTateTerm& e) {
        pc.note = e.what();
      }
      if (pc.source == CountSource::Catalog) {
        if (!prime_power_decomposition(pt.q)) {
          pc.note = "p-adic cross-check skipped: q is not a prime power";
        } else {
          MonomialForm form;
          form.dimension = r.dimension;
          for (const auto& div : r.divisors) form.exponents.push_back(div.discrepancy);
          const LocalField field = dr == 1 ? LocalField::rational(pt.q)
                                           : LocalField::with_root(pt.q, dr, *root_r);
          pc.padic = global_integral(form, field, counts);
        }
      }
      if (!first_count) {
        first_count = pc.n_st.count;
      } else if (*first_count != pc.n_st.count) {
        qv.counts_agree = false;
      }
      rep.points.push_back(std::move(pc));
    }
    rep.per_q.push_back(std::move(qv));
  }
  return rep;
}

namespace {

const char* source_name(CountSource s) {
  switch (s) {
    case CountSource::Catalog:
      return "catalog";
    case CountSource::Explicit:
      return "explicit";
    case CountSource::Strata:
      return "strata";
  }
  return "?";
}

json hodge_json(const StringyHodgeTable& t) {
  json out = json::array();
  for (const auto& [ij, h] : t.numbers) out.push_back({ij.first, ij.second, h.get_str()});
  return out;
}

json report_json(const Report& r) {
  json out;
  out["kind"] = r.kind;
  out["scenario"] = r.scenario;
  out["input_sha256"] = r.input_hash;
  out["dimension"] = r.dimension;
  out["denominator"] = r.denominator;
  out["agree"] = r.agree();
  json res = json::array();
  for (const auto& s : r.resolutions) {
    json j;
    j["name"] = s.name;
    j["e_st"] = s.e_st_string();
    j["e_st_fraction"] = s.e_st.value.to_string();
    j["polynomiality"] = s.polynomiality();
    j["finest_granularity"] = s.verdict.finest_granularity;
    if (s.hodge) {
      j["hodge"] = hodge_json(*s.hodge);
      j["hodge_has_negative"] = s.hodge->has_negative;
    } else {
      j["hodge"] = nullptr;
    }
    res.push_back(j);
  }
  out["resolutions"] = res;
  if (r.kind == "verify") {
    json pairs = json::array();
    for (const auto& p : r.pairs) {
      pairs.push_back({{"first", r.resolutions[p.first].name},
                       {"second", r.resolutions[p.second].name},
                       {"equal", p.agreement.equal},
                       {"certificate", p.agreement.certificate}});
    }
    out["pairs"] = pairs;
    json points = json::array();
    for (const auto& p : r.points) {
      json j;
      j["resolution"] = r.resolutions[p.resolution].name;
      j["q"] = p.q.get_str();
      j["root"] = p.root ? json(format_rational(*p.root)) : json(nullptr);
      j["count_source"] = source_name(p.source);
      j["n_st"] = format_rational(p.n_st.count);
      j["integral"] = format_rational(p.n_st.integral);
      j["e_st_at_q"] = p.specialized ? json(format_rational(*p.specialized)) : json(nullptr);
      j["e_st_matches"] = p.specialized_matches();
      j["padic_integral"] = p.padic ? json(p.padic->to_string()) : json(nullptr);
      j["padic_matches"] = p.padic_matches();
      if (!p.note.empty()) j["note"] = p.note;
      points.push_back(j);
    }
    out["points"] = points;
    json per_q = json::array();
    for (const auto& q : r.per_q) {
      per_q.push_back({{"q", q.q.get_str()},
                       {"root", q.root ? json(format_rational(*q.root)) : json(nullptr)},
                       {"counts_agree", q.counts_agree}});
    }
    out["per_q"] = per_q;
  }
  return out;
}

}  // namespace

std::string render_json(const std::vector<Report>& reports, const std::string& generated_at) {
  json doc;
  doc["generated_at"] = generated_at;
  doc["reports"] = json::array();
  for (const auto& r : reports) doc["reports"].push_back(report_json(r));
  return doc.dump(2) + "\n";
}

std::string render_table(const Report& r) {
  std::ostringstream out;
  out << "scenario " << r.scenario << "  (n = " << r.dimension << ", d = " << r.denominator
      << ", sha256 " << r.input_hash.substr(0, 16) << ")\n";
  for (const auto& s : r.resolutions) {
    out << "  " << s.name << "\n";
    out << "    E_st          = " << s.e_st_string() << "\n";
    out << "    polynomiality : " << s.polynomiality() << "\n";
    if (s.hodge) {
      out << "    hodge         :";
      for (const auto& [ij, h] : s.hodge->numbers) {
        out << " h^{" << ij.first << "," << ij.second << "}=" << h.get_str();
      }
      out << (s.hodge->has_negative ? "  (negative entries)" : "") << "\n";
    }
  }
  if (r.kind != "verify") return out.str();
  for (const auto& p : r.pairs) {
    out << "  " << (p.agreement.equal ? "AGREE    " : "DISAGREE ")
        << r.resolutions[p.first].name << " vs " << r.resolutions[p.second].name << ": "
        << p.agreement.certificate << "\n";
  }
  for (const auto& p : r.points) {
    out << "  q=" << p.q.get_str();
    if (p.root) out << " s=" << format_rational(*p.root);
    out << "  " << r.resolutions[p.resolution].name << ": N_st=" << format_rational(p.n_st.count)
        << " integral=" << format_rational(p.n_st.integral) << " [" << source_name(p.source)
        << "]";
    if (p.specialized) {
      out << " E_st(q)=" << format_rational(*p.specialized)
          << (p.specialized_matches() ? "" : " MISMATCH");
    }
    if (p.padic) {
      out << " p-adic=" << p.padic->to_string() << (p.padic_matches() ? "" : " MISMATCH");
    }
    if (!p.note.empty()) out << " (" << p.note << ")";
    out << "\n";
  }
  out << "  verdict: " << (r.agree() ? "all agree" : "DISAGREEMENT") << "\n";
  return out.str();
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace stringy
