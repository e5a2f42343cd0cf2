#include "stringy/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <openssl/evp.h>

#include "json.hpp"
#include "stringy/errors.hpp"
#include "stringy/rational.hpp"

namespace stringy {

using nlohmann::json;
using nlohmann::ordered_json;

mpz_class CountSpec::at(const mpz_class& q) const {
  if (scheme) return count_points(*scheme, q);
  if (poly) return (*poly)(q);
  auto it = values.find(q);
  if (it == values.end()) {
    throw MissingCount(0, "no count given at q = " + q.get_str());
  }
  return it->second;
}

namespace {

[[noreturn]] void schema(const std::string& where, const std::string& why) {
  throw ParseError(0, where + ": " + why);
}

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) schema(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) schema(where, std::string("missing field '") + key + "'");
  return *it;
}

std::string as_string(const json& j, const std::string& where) {
  if (!j.is_string()) schema(where, "expected a string");
  return j.get<std::string>();
}

mpz_class as_integer(const json& j, const std::string& where) {
  if (j.is_number_integer()) {
    return j.is_number_unsigned() ? mpz_class(std::to_string(j.get<std::uint64_t>()))
                                  : mpz_class(std::to_string(j.get<std::int64_t>()));
  }
  if (j.is_string()) {
    const auto r = parse_rational(j.get<std::string>());
    if (r && r->get_den() == 1) return r->get_num();
  }
  schema(where, "expected an integer");
}

mpq_class as_rational(const json& j, const std::string& where) {
  if (j.is_number_integer()) return mpq_class(as_integer(j, where));
  if (j.is_string()) {
    if (auto r = parse_rational(j.get<std::string>())) return *r;
  }
  schema(where, "expected an exact rational such as \"-1/3\"");
}

std::int64_t as_int64(const json& j, const std::string& where) {
  if (!j.is_number_integer()) schema(where, "expected an integer");
  return j.get<std::int64_t>();
}

std::size_t line_of(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

SubsetMask parse_subset(const json& j, const std::vector<Divisor>& divisors,
                        const std::string& where) {
  if (!j.is_array()) schema(where, "subset must be an array of divisor labels");
  SubsetMask mask = 0;
  for (const auto& item : j) {
    const std::string label = as_string(item, where);
    std::size_t k = 0;
    while (k < divisors.size() && divisors[k].label != label) ++k;
    if (k == divisors.size()) schema(where, "unknown divisor label '" + label + "'");
    if ((mask >> k) & 1u) schema(where, "label '" + label + "' repeated");
    mask |= SubsetMask{1} << k;
  }
  return mask;
}

ordered_json subset_json(SubsetMask mask, const std::vector<Divisor>& divisors) {
  ordered_json out = ordered_json::array();
  for (std::size_t k = 0; k < divisors.size(); ++k) {
    if ((mask >> k) & 1u) out.push_back(divisors[k].label);
  }
  return out;
}

ordered_json integer_json(const mpz_class& z) {
  if (z.fits_slong_p()) return ordered_json(z.get_si());
  return ordered_json(z.get_str());
}

ResolutionData parse_resolution(const json& j, int dimension, const std::string& where) {
  ResolutionData r;
  r.name = as_string(field(j, "name", where), where + ".name");
  r.dimension = dimension;
  const std::string here = where + " '" + r.name + "'";

  const json& divs = field(j, "divisors", here);
  if (!divs.is_array()) schema(here, "divisors must be an array");
  for (const auto& d : divs) {
    Divisor div;
    div.label = as_string(field(d, "label", here), here + ".label");
    div.discrepancy = as_rational(field(d, "discrepancy", here), here + ".discrepancy");
    r.divisors.push_back(std::move(div));
  }
  if (r.divisors.size() > kMaxDivisors) schema(here, "too many divisors");

  const json& strata = field(j, "strata", here);
  const std::string flavor = as_string(field(strata, "flavor", here), here + ".flavor");
  Flavor f;
  if (flavor == "open") {
    f = Flavor::Open;
  } else if (flavor == "closed") {
    f = Flavor::Closed;
  } else {
    schema(here, "flavor must be \"open\" or \"closed\"");
  }
  std::int64_t den = 1;
  if (strata.contains("denominator")) {
    den = as_int64(strata["denominator"], here + ".strata.denominator");
    if (den < 1) schema(here, "strata denominator must be positive");
  }
  r.strata = StratumTable(f, r.divisors.size());
  const json& entries = field(strata, "entries", here + ".strata");
  if (!entries.is_array()) schema(here, "strata entries must be an array");
  std::set<SubsetMask> seen;
  for (const auto& e : entries) {
    const SubsetMask mask = parse_subset(field(e, "subset", here), r.divisors, here);
    if (!seen.insert(mask).second) {
      schema(here, "stratum " + subset_name(mask, r.divisors) + " listed twice");
    }
    const json& terms = field(e, "E", here);
    if (!terms.is_array()) schema(here, "E must be an array of [i, j, coeff]");
    EPoly p(den);
    for (const auto& t : terms) {
      if (!t.is_array() || t.size() != 3) schema(here, "E terms are [i, j, coeff]");
      const std::int64_t u = as_int64(t[0], here + ".E");
      const std::int64_t v = as_int64(t[1], here + ".E");
      if (u < 0 || v < 0) schema(here, "E exponents must be non-negative");
      p += EPoly::monomial(u, v, as_integer(t[2], here + ".E"), den);
    }
    r.strata.set(mask, std::move(p));
  }
  validate_resolution(r);
  return to_open(std::move(r));
}

CountTable parse_counts(const json& j, const ResolutionData& r, const std::string& where) {
  CountTable out;
  const json& entries = field(j, "entries", where);
  if (!entries.is_array()) schema(where, "counts entries must be an array");
  for (const auto& e : entries) {
    const SubsetMask mask = parse_subset(field(e, "subset", where), r.divisors, where);
    CountSpec spec;
    int sources = 0;
    if (e.contains("scheme")) {
      ++sources;
      spec.scheme = parse_scheme(as_string(e["scheme"], where + ".scheme"));
    }
    if (e.contains("poly")) {
      ++sources;
      if (!e["poly"].is_array()) schema(where, "poly must be an array of coefficients");
      std::vector<mpz_class> c;
      for (const auto& x : e["poly"]) c.push_back(as_integer(x, where + ".poly"));
      spec.poly = CountPoly(std::move(c));
    }
    if (e.contains("values")) {
      ++sources;
      if (!e["values"].is_object()) schema(where, "values must map q to a count");
      for (const auto& [k, v] : e["values"].items()) {
        const auto q = parse_rational(k);
        if (!q || q->get_den() != 1 || *q < 2) schema(where, "values keys must be integers q >= 2");
        spec.values[q->get_num()] = as_integer(v, where + ".values");
      }
    }
    if (sources != 1) schema(where, "each count needs exactly one of scheme, poly, values");
    if (!out.emplace(mask, std::move(spec)).second) {
      schema(where, "count for " + subset_name(mask, r.divisors) + " listed twice");
    }
  }
  return out;
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(line_of(text, e.byte), e.what());
  }
  Scenario s;
  s.input_hash = sha256_hex(text);
  s.name = as_string(field(doc, "name", "scenario"), "scenario.name");
  const std::int64_t dim = as_int64(field(doc, "dimension", "scenario"), "scenario.dimension");
  if (dim < 0 || dim > 64) schema("scenario", "dimension must lie in [0, 64]");
  s.dimension = static_cast<int>(dim);

  const json& res = field(doc, "resolutions", "scenario");
  if (!res.is_array() || res.empty()) schema("scenario", "resolutions must be a non-empty array");
  for (std::size_t i = 0; i < res.size(); ++i) {
    const std::string where = "resolutions[" + std::to_string(i) + "]";
    ResolutionData r = parse_resolution(res[i], s.dimension, where);
    if (res[i].contains("counts")) {
      s.counts.emplace_back(parse_counts(res[i]["counts"], r, where + ".counts"));
    } else {
      s.counts.emplace_back(std::nullopt);
    }
    s.resolutions.push_back(std::move(r));
  }

  std::int64_t d = 1;
  for (const auto& r : s.resolutions) d = lcm64(d, context_denominator(r));
  s.denominator = d;
  if (doc.contains("denominator")) {
    const std::int64_t declared = as_int64(doc["denominator"], "scenario.denominator");
    if (declared < 1 || declared % d != 0) {
      throw ValidationError(s.name + ": declared denominator " + std::to_string(declared) +
                            " is not a multiple of " + std::to_string(d));
    }
    s.denominator = declared;
    s.denominator_declared = true;
  }

  if (doc.contains("evaluate_at")) {
    const json& ev = doc["evaluate_at"];
    if (!ev.is_array()) schema("scenario", "evaluate_at must be an array");
    for (const auto& p : ev) {
      EvaluationPoint pt;
      pt.q = as_integer(field(p, "q", "evaluate_at"), "evaluate_at.q");
      if (pt.q < 2) schema("evaluate_at", "q must be at least 2");
      if (p.contains("root")) pt.root = as_rational(p["root"], "evaluate_at.root");
      s.evaluate_at.push_back(std::move(pt));
    }
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string save_scenario(const Scenario& s) {
  ordered_json doc;
  doc["name"] = s.name;
  doc["dimension"] = s.dimension;
  if (s.denominator_declared) doc["denominator"] = s.denominator;
  doc["resolutions"] = ordered_json::array();
  for (std::size_t i = 0; i < s.resolutions.size(); ++i) {
    const ResolutionData r = to_open(s.resolutions[i]);
    ordered_json jr;
    jr["name"] = r.name;
    jr["divisors"] = ordered_json::array();
    for (const auto& d : r.divisors) {
      jr["divisors"].push_back({{"label", d.label}, {"discrepancy", format_rational(d.discrepancy)}});
    }
    std::int64_t den = 1;
    for (const auto& [j, e] : r.strata.entries()) den = lcm64(den, e.den());
    ordered_json strata;
    strata["flavor"] = "open";
    strata["denominator"] = den;
    strata["entries"] = ordered_json::array();
    for (const auto& [j, e] : r.strata.entries()) {
      ordered_json terms = ordered_json::array();
      const EPoly lifted = e.with_den(den);
      for (const auto& [x, c] : lifted.terms()) {
        terms.push_back({x.u, x.v, integer_json(c)});
      }
      strata["entries"].push_back({{"subset", subset_json(j, r.divisors)}, {"E", terms}});
    }
    jr["strata"] = strata;
    if (i < s.counts.size() && s.counts[i]) {
      ordered_json entries = ordered_json::array();
      for (const auto& [j, spec] : *s.counts[i]) {
        ordered_json e;
        e["subset"] = subset_json(j, r.divisors);
        if (spec.scheme) {
          e["scheme"] = spec.scheme->to_string();
        } else if (spec.poly) {
          ordered_json c = ordered_json::array();
          for (const auto& x : spec.poly->coefficients()) c.push_back(integer_json(x));
          e["poly"] = c;
        } else {
          ordered_json v = ordered_json::object();
          for (const auto& [q, n] : spec.values) v[q.get_str()] = integer_json(n);
          e["values"] = v;
        }
        entries.push_back(e);
      }
      jr["counts"] = {{"entries", entries}};
    }
    doc["resolutions"].push_back(jr);
  }
  if (!s.evaluate_at.empty()) {
    ordered_json ev = ordered_json::array();
    for (const auto& p : s.evaluate_at) {
      ordered_json jp;
      jp["q"] = integer_json(p.q);
      if (p.root) jp["root"] = format_rational(*p.root);
      ev.push_back(jp);
    }
    doc["evaluate_at"] = ev;
  }
  return doc.dump(2) + "\n";
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xf];
  }
  return out;
}

}  // namespace stringy
