#include "stringy/stringy_e.hpp"

#include <vector>

#include "stringy/errors.hpp"
#include "stringy/rational.hpp"

namespace stringy {

mpz_class StringyHodgeTable::at(std::int64_t i, std::int64_t j) const {
  auto it = numbers.find({i, j});
  return it == numbers.end() ? mpz_class(0) : it->second;
}

StringyE stringy_E(const ResolutionData& r) {
  validate_resolution(r);
  const ResolutionData open = to_open(r);
  const std::int64_t d = context_denominator(open);

  // Non-crepant divisors carry a factor ((uv)^{a+1} - 1) in the denominator.
  std::vector<std::size_t> non_crepant;
  std::vector<std::int64_t> exps;
  std::vector<EPoly> factors;
  for (std::size_t k = 0; k < open.divisors.size(); ++k) {
    const mpq_class& a = open.divisors[k].discrepancy;
    if (a == 0) continue;
    const mpq_class scaled = (a + 1) * d;
    non_crepant.push_back(k);
    exps.push_back(to_int64(scaled.get_num()));
    factors.push_back(EPoly::w_power_minus_one(exps.back(), d));
  }
  const EPoly w_minus_one = EPoly::w_power_minus_one(d, d);

  EPoly numer(d);
  for (const auto& [j, e] : open.strata.entries()) {
    EPoly term = e.with_den(d);
    for (std::size_t idx = 0; idx < non_crepant.size(); ++idx) {
      term *= ((j >> non_crepant[idx]) & 1u) ? w_minus_one : factors[idx];
    }
    numer += term;
  }
  return StringyE{RatFunc(std::move(numer), std::move(exps)), r.dimension, d};
}

StringyHodgeTable stringy_hodge_numbers(const StringyE& e) {
  const PolynomialVerdict v = is_polynomial(e.value, 1);
  if (v.kind != Polynomiality::Polynomial) {
    const std::string why =
        v.kind == Polynomiality::FinerOnly
            ? "E_st is a polynomial only in u^(1/" +
                  std::to_string(v.finest_granularity) + "), v^(1/" +
                  std::to_string(v.finest_granularity) + ")"
            : "E_st is not a polynomial";
    throw NotPolynomial(v.finest_granularity, why);
  }
  const EPoly p = v.poly->reduced();
  StringyHodgeTable table;
  for (const auto& [exp, c] : p.terms()) {
    const mpz_class h = ((exp.u + exp.v) % 2 == 0) ? c : mpz_class(-c);
    if (h < 0) table.has_negative = true;
    table.numbers.emplace(std::make_pair(exp.u, exp.v), h);
  }
  return table;
}

StringyPointCount stringy_point_count(const ResolutionData& r,
                                      const std::map<SubsetMask, mpz_class>& counts,
                                      const mpq_class& q,
                                      const std::optional<mpq_class>& root) {
  validate_resolution(r);
  const ResolutionData open = to_open(r);
  const std::int64_t d = context_denominator(open);
  mpq_class s = q;
  if (d > 1) {
    if (!root) {
      throw MissingRoot(r.name + ": discrepancies in (1/" + std::to_string(d) +
                        ")Z need an exact root s with s^" + std::to_string(d) + " = q");
    }
    if (*root <= 0 || pow_rational(*root, d) != q) {
      throw InvalidRoot(r.name + ": " + format_rational(*root) + "^" +
                        std::to_string(d) + " != " + format_rational(q));
    }
    s = *root;
  }
  for (const auto& [j, e] : open.strata.entries()) {
    if (!counts.count(j)) {
      throw MissingCount(j, r.name + ": no point count for stratum " +
                                subset_name(j, open.divisors));
    }
  }

  std::vector<mpq_class> factor(open.divisors.size());
  for (std::size_t k = 0; k < open.divisors.size(); ++k) {
    const mpq_class scaled = (open.divisors[k].discrepancy + 1) * d;
    const mpq_class denom = pow_rational(s, to_int64(scaled.get_num())) - 1;
    if (denom == 0) {
      throw PoleAtPoint(r.name + ": q^(a+1) - 1 vanishes for divisor " +
                        open.divisors[k].label);
    }
    factor[k] = (q - 1) / denom;
  }

  const SubsetMask limit =
      open.divisors.empty() ? 1 : (SubsetMask{1} << open.divisors.size());
  StringyPointCount out;
  for (const auto& [j, n] : counts) {
    if (j >= limit) {
      throw ValidationError(r.name + ": count given for an unknown stratum");
    }
    mpq_class term = n;
    for (std::size_t k = 0; k < open.divisors.size(); ++k) {
      if ((j >> k) & 1u) term *= factor[k];
    }
    out.count += term;
  }
  out.integral = out.count / pow_rational(q, r.dimension);
  return out;
}

Agreement resolutions_agree(const ResolutionData& r1, const ResolutionData& r2) {
  if (r1.dimension != r2.dimension) {
    throw DimensionMismatch("resolutions '" + r1.name + "' and '" + r2.name +
                            "' have dimensions " + std::to_string(r1.dimension) +
                            " and " + std::to_string(r2.dimension));
  }
  const StringyE e1 = stringy_E(r1);
  const StringyE e2 = stringy_E(r2);
  Agreement a;
  a.difference = cross_difference(e1.value, e2.value);
  a.equal = a.difference.is_zero();
  if (a.equal) {
    a.certificate = "cross-multiplied difference vanishes";
  } else {
    const auto& [exp, c] = *a.difference.terms().begin();
    a.first_difference = exp;
    a.certificate = "difference has term " +
                    EPoly::monomial(exp.u, exp.v, c, a.difference.den()).to_string();
  }
  return a;
}

}  // namespace stringy
