#include "stringy/padic.hpp"

#include <numeric>

#include "stringy/errors.hpp"
#include "stringy/rational.hpp"

namespace stringy {

namespace {

mpz_class require_prime_power(const mpz_class& q, mpz_class& p, unsigned& m) {
  const auto pp = prime_power_decomposition(q);
  if (!pp) throw InvalidField("q = " + q.get_str() + " is not a prime power");
  p = pp->first;
  m = pp->second;
  return q;
}

std::int64_t exponent_den(const std::vector<mpq_class>& kappa) {
  std::int64_t d = 1;
  for (const auto& k : kappa) d = lcm64(d, denominator64(k));
  return d;
}

void require_convergence(const MonomialForm& f) {
  const Convergence c = convergence_check(f);
  if (!c.converges) {
    const std::size_t i = *c.diverges_at;
    throw Divergent(i, "integral diverges: k_" + std::to_string(i) + "/r = " +
                           format_rational(f.scaled_exponents()[i]) + " <= -1");
  }
}

/// numerator * (uv)^{e/den}, e >= 0
RatFunc times_w(const RatFunc& f, std::int64_t e, std::int64_t den) {
  if (e == 0) return f;
  return f * RatFunc(EPoly::w_power(e, den));
}

}  // namespace

LocalField LocalField::rational(const mpz_class& q) {
  LocalField f;
  f.q_ = require_prime_power(q, f.p_, f.m_);
  return f;
}

LocalField LocalField::with_root(const mpz_class& q, std::int64_t d, const mpq_class& s) {
  LocalField f;
  f.q_ = require_prime_power(q, f.p_, f.m_);
  if (d < 1) throw InvalidRoot("root degree must be positive");
  if (s <= 0 || pow_rational(s, d) != mpq_class(q)) {
    throw InvalidRoot(format_rational(s) + "^" + std::to_string(d) + " != " + q.get_str());
  }
  f.mode_ = Mode::Root;
  f.d_ = d;
  f.s_ = s;
  return f;
}

LocalField LocalField::radical(const mpz_class& q) {
  LocalField f;
  f.q_ = require_prime_power(q, f.p_, f.m_);
  f.mode_ = Mode::Radical;
  return f;
}

RadicalNumber LocalField::q_power(const mpq_class& e) const {
  if (e.get_den() == 1) {
    return RadicalNumber(pow_rational(mpq_class(q_), to_int64(e.get_num())));
  }
  switch (mode_) {
    case Mode::Rational:
      throw MissingRoot("q^(" + format_rational(e) + ") needs an exact root of q = " +
                        q_.get_str());
    case Mode::Root: {
      const mpq_class scaled = e * d_;
      if (scaled.get_den() != 1) {
        throw MissingRoot("q^(" + format_rational(e) + ") is not a power of q^(1/" +
                          std::to_string(d_) + ")");
      }
      return RadicalNumber(pow_rational(*s_, to_int64(scaled.get_num())));
    }
    case Mode::Radical:
      return RadicalNumber::prime_power(p_, e * m_);
  }
  return {};
}

std::vector<mpq_class> MonomialForm::scaled_exponents() const {
  if (r < 1) throw ValidationError("form index r must be positive");
  if (static_cast<int>(exponents.size()) > dimension) {
    throw ValidationError("more exponents than coordinates");
  }
  std::vector<mpq_class> out(static_cast<std::size_t>(dimension), mpq_class(0));
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    out[i] = exponents[i] / mpq_class(r);
  }
  return out;
}

Convergence convergence_check(const MonomialForm& f) {
  const auto kappa = f.scaled_exponents();
  for (std::size_t i = 0; i < kappa.size(); ++i) {
    if (kappa[i] <= -1) return {false, i};
  }
  return {};
}

std::string PAdicValue::symbolic_string() const {
  const std::string base = "(" + symbolic.to_string() + ")";
  if (w_shift == 0) return base;
  const std::int64_t den = symbolic.den();
  const std::int64_t g = std::gcd(w_shift, den);
  if (den / g == 1 && w_shift / g == 1) return base + " / (u*v)";
  const std::string e = den / g == 1 ? std::to_string(w_shift / g)
                                     : "(" + std::to_string(w_shift / g) + "/" +
                                           std::to_string(den / g) + ")";
  return base + " / (u*v)^" + e;
}

PAdicValue operator+(const PAdicValue& a, const PAdicValue& b) {
  const std::int64_t den = lcm64(a.symbolic.den(), b.symbolic.den());
  const std::int64_t sa = a.w_shift * (den / a.symbolic.den());
  const std::int64_t sb = b.w_shift * (den / b.symbolic.den());
  const std::int64_t shift = std::max(sa, sb);
  PAdicValue out;
  out.symbolic = times_w(a.symbolic.with_den(den), shift - sa, den) +
                 times_w(b.symbolic.with_den(den), shift - sb, den);
  out.w_shift = shift;
  out.value = a.value + b.value;
  out.formal = a.formal || b.formal;
  return out;
}

PAdicValue operator*(const mpz_class& c, const PAdicValue& a) {
  PAdicValue out = a;
  out.symbolic = a.symbolic * RatFunc(EPoly::constant(c, a.symbolic.den()));
  out.value = a.value * RadicalNumber(mpq_class(c));
  return out;
}

mpq_class substitute(const PAdicValue& v, const mpq_class& q,
                     const std::optional<mpq_class>& root) {
  const std::int64_t den = v.symbolic.den();
  const mpq_class s = den == 1 ? q : (root ? *root : mpq_class(0));
  const mpq_class numer = specialize(v.symbolic, q, root);
  if (den > 1 && !root) {
    throw MissingRoot("substitute: needs q^(1/" + std::to_string(den) + ")");
  }
  return numer / pow_rational(s, v.w_shift);
}

PAdicValue monomial_integral_cell(const MonomialForm& f, const LocalField& field,
                                  Domain domain) {
  require_convergence(f);
  const auto kappa = f.scaled_exponents();
  const std::int64_t den = exponent_den(kappa);
  const RadicalNumber q(mpq_class(field.q()));
  const RadicalNumber one(mpq_class(1));

  PAdicValue out;
  out.symbolic = RatFunc(EPoly::constant(1, den));
  out.value = one;
  for (const auto& k : kappa) {
    const RadicalNumber x = field.q_power(k + 1);
    out.symbolic *= RatFunc::discrepancy_factor(k, den);
    if (domain == Domain::MaximalIdeal) {
      out.value *= (q - one) / (q * (x - one));
      out.w_shift += den;
    } else {
      out.value *= (q - one) * field.q_power(k) / (x - one);
      const std::int64_t e = to_int64(mpq_class(k * den).get_num());
      if (e > 0) {
        out.symbolic = times_w(out.symbolic, e, den);
      } else {
        out.w_shift -= e;
      }
    }
  }
  return out;
}

PAdicValue local_fiber_integral(const MonomialForm& f, const LocalField& field,
                                SubsetMask incident) {
  require_convergence(f);
  const auto kappa = f.scaled_exponents();
  if (f.exponents.size() < 64 && (incident >> f.exponents.size()) != 0) {
    throw ValidationError("incident set refers to coordinates without an exponent");
  }
  const std::int64_t den = exponent_den(kappa);
  const RadicalNumber q(mpq_class(field.q()));
  const RadicalNumber one(mpq_class(1));

  PAdicValue out;
  out.symbolic = RatFunc(EPoly::constant(1, den));
  out.w_shift = static_cast<std::int64_t>(f.dimension) * den;
  out.value = q.pow(-f.dimension);
  for (std::size_t j = 0; j < f.exponents.size(); ++j) {
    if (((incident >> j) & 1u) == 0) continue;
    out.symbolic *= RatFunc::discrepancy_factor(kappa[j], den);
    out.value *= (q - one) / (field.q_power(kappa[j] + 1) - one);
  }
  return out;
}

PAdicValue global_integral(const MonomialForm& f, const LocalField& field,
                           const std::map<SubsetMask, mpz_class>& counts) {
  require_convergence(f);
  if (!counts.count(0)) {
    throw MissingCount(0, "global_integral: no count for the open stratum {}");
  }
  std::optional<PAdicValue> total;
  for (const auto& [j, n] : counts) {
    PAdicValue term = n * local_fiber_integral(f, field, j);
    total = total ? *total + term : term;
  }
  return *total;
}

PAdicValue gauge_integral(const LocalField& field, const mpz_class& count,
                          int dimension) {
  PAdicValue out;
  out.symbolic = RatFunc(EPoly::constant(count));
  out.w_shift = dimension;
  out.value = RadicalNumber(mpq_class(count) / pow_rational(mpq_class(field.q()), dimension));
  out.formal = true;
  return out;
}

bool OracleResult::brackets(const RadicalNumber& x) const {
  return partial <= x && x <= partial + tail;
}

OracleResult enumeration_oracle(const MonomialForm& f, const LocalField& field,
                                std::int64_t cutoff, Domain domain) {
  if (cutoff < 1) throw std::invalid_argument("oracle cutoff must be at least 1");
  require_convergence(f);
  const auto kappa = f.scaled_exponents();
  const mpq_class shell = 1 - mpq_class(1, 1) / mpq_class(field.q());
  const RadicalNumber one(mpq_class(1));

  RadicalNumber partial = one;
  RadicalNumber full = one;
  for (const auto& k : kappa) {
    // Shell {v(x) = v} has measure (1 - 1/q) q^{-v}; the integrand is q^{-vκ}.
    const RadicalNumber step = field.q_power(-(k + 1));
    RadicalNumber sum = domain == Domain::Integers ? RadicalNumber(shell) : RadicalNumber();
    RadicalNumber power = one;
    for (std::int64_t v = 1; v <= cutoff; ++v) {
      power *= step;
      sum += RadicalNumber(shell) * power;
    }
    const RadicalNumber rest = RadicalNumber(shell) * power * step / (one - step);
    partial *= sum;
    full *= sum + rest;
  }
  return {partial, full - partial};
}

}  // namespace stringy
