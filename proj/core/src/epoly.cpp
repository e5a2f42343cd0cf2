#include "stringy/epoly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "stringy/errors.hpp"
#include "stringy/rational.hpp"

namespace stringy {

namespace {

std::string exponent_text(std::int64_t num, std::int64_t den) {
  const std::int64_t g = std::gcd(num, den);
  num /= g;
  den /= g;
  if (den == 1) return std::to_string(num);
  return "(" + std::to_string(num) + "/" + std::to_string(den) + ")";
}

std::string monomial_text(const Exponent& e, std::int64_t den) {
  std::string out;
  auto append = [&](char var, std::int64_t num) {
    if (num == 0) return;
    if (!out.empty()) out += '*';
    out += var;
    if (num != den) out += "^" + exponent_text(num, den);
  };
  append('u', e.u);
  append('v', e.v);
  return out;
}

}  // namespace

EPoly::EPoly(std::int64_t den) : den_(den) {
  if (den <= 0) throw std::invalid_argument("EPoly denominator must be positive");
}

EPoly::EPoly(std::int64_t den, TermMap terms) : EPoly(den) {
  for (auto& [e, c] : terms) add_term(e, c);
}

EPoly EPoly::constant(const mpz_class& c, std::int64_t den) {
  return monomial(0, 0, c, den);
}

EPoly EPoly::monomial(std::int64_t u_num, std::int64_t v_num,
                      const mpz_class& c, std::int64_t den) {
  EPoly p(den);
  p.add_term({u_num, v_num}, c);
  return p;
}

EPoly EPoly::w_power(std::int64_t e_num, std::int64_t den) {
  return monomial(e_num, e_num, 1, den);
}

EPoly EPoly::w_power_minus_one(std::int64_t e_num, std::int64_t den) {
  EPoly p = w_power(e_num, den);
  p.add_term({0, 0}, -1);
  return p;
}

EPoly EPoly::from_w_coefficients(const std::vector<mpz_class>& coeffs) {
  EPoly p(1);
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    const auto e = static_cast<std::int64_t>(k);
    p.add_term({e, e}, coeffs[k]);
  }
  return p;
}

void EPoly::add_term(const Exponent& e, const mpz_class& c) {
  if (e.u < 0 || e.v < 0) {
    throw std::invalid_argument("EPoly exponents must be non-negative");
  }
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

bool EPoly::is_balanced() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const auto& t) { return t.first.u == t.first.v; });
}

mpz_class EPoly::coeff(std::int64_t u_num, std::int64_t v_num) const {
  auto it = terms_.find({u_num, v_num});
  return it == terms_.end() ? mpz_class(0) : it->second;
}

std::int64_t EPoly::max_exponent() const {
  std::int64_t m = -1;
  for (const auto& [e, c] : terms_) m = std::max({m, e.u, e.v});
  return m;
}

EPoly EPoly::with_den(std::int64_t new_den) const {
  if (new_den <= 0 || new_den % den_ != 0) {
    throw std::invalid_argument("with_den: " + std::to_string(new_den) +
                                " is not a multiple of " + std::to_string(den_));
  }
  const std::int64_t f = new_den / den_;
  EPoly out(new_den);
  for (const auto& [e, c] : terms_) out.terms_.emplace(Exponent{e.u * f, e.v * f}, c);
  return out;
}

std::int64_t EPoly::granularity() const {
  std::int64_t g = den_;
  for (const auto& [e, c] : terms_) g = std::gcd(g, std::gcd(e.u, e.v));
  return den_ / g;
}

EPoly EPoly::reduced() const {
  const std::int64_t target = granularity();
  const std::int64_t f = den_ / target;
  EPoly out(target);
  for (const auto& [e, c] : terms_) out.terms_.emplace(Exponent{e.u / f, e.v / f}, c);
  return out;
}

EPoly EPoly::operator-() const {
  EPoly out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

EPoly& EPoly::operator+=(const EPoly& rhs) {
  if (rhs.den_ != den_) {
    const std::int64_t d = lcm64(den_, rhs.den_);
    *this = with_den(d);
    return *this += rhs.with_den(d);
  }
  for (const auto& [e, c] : rhs.terms_) add_term(e, c);
  return *this;
}

EPoly& EPoly::operator-=(const EPoly& rhs) {
  if (rhs.den_ != den_) {
    const std::int64_t d = lcm64(den_, rhs.den_);
    *this = with_den(d);
    return *this -= rhs.with_den(d);
  }
  for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
  return *this;
}

EPoly operator*(const EPoly& a, const EPoly& b) {
  if (a.den_ != b.den_) {
    const std::int64_t d = lcm64(a.den_, b.den_);
    return a.with_den(d) * b.with_den(d);
  }
  EPoly out(a.den_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      out.add_term({ea.u + eb.u, ea.v + eb.v}, ca * cb);
    }
  }
  return out;
}

EPoly& EPoly::operator*=(const EPoly& rhs) {
  *this = *this * rhs;
  return *this;
}

EPoly& EPoly::operator*=(const mpz_class& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, coeff] : terms_) coeff *= c;
  return *this;
}

EPoly EPoly::pow(unsigned k) const {
  EPoly result = constant(1, den_);
  EPoly base = *this;
  while (k) {
    if (k & 1u) result *= base;
    k >>= 1u;
    if (k) base *= base;
  }
  return result;
}

bool operator==(const EPoly& a, const EPoly& b) {
  if (a.den_ == b.den_) return a.terms_ == b.terms_;
  const std::int64_t d = lcm64(a.den_, b.den_);
  return a.with_den(d).terms_ == b.with_den(d).terms_;
}

std::string EPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<Exponent, mpz_class>> ordered(terms_.begin(), terms_.end());
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto& x, const auto& y) {
    const auto dx = x.first.u + x.first.v;
    const auto dy = y.first.u + y.first.v;
    if (dx != dy) return dx > dy;
    return x.first.u > y.first.u;
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : ordered) {
    const std::string mono = monomial_text(e, den_);
    mpz_class mag = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (mono.empty()) {
      os << mag.get_str();
    } else {
      if (mag != 1) os << mag.get_str() << '*';
      os << mono;
    }
  }
  return os.str();
}

BalancedPoly::BalancedPoly(EPoly p) : poly_(std::move(p)) {
  if (!poly_.is_balanced()) {
    throw std::invalid_argument("BalancedPoly requires equal u and v exponents: " +
                                poly_.to_string());
  }
}

std::vector<mpz_class> BalancedPoly::t_coefficients() const {
  const std::int64_t top = poly_.max_exponent();
  std::vector<mpz_class> out(static_cast<std::size_t>(std::max<std::int64_t>(top + 1, 0)));
  for (const auto& [e, c] : poly_.terms()) out[static_cast<std::size_t>(e.u)] = c;
  return out;
}

SectorQuotient sector_divide(const EPoly& numer, const BalancedPoly& denom) {
  if (denom.poly().is_zero()) throw std::invalid_argument("sector_divide by zero");
  const std::int64_t d = lcm64(numer.den(), denom.den());
  const EPoly n = numer.with_den(d);
  const BalancedPoly b(denom.poly().with_den(d));

  // Sparse divisor in t = w^{1/d}.
  std::vector<std::pair<std::int64_t, mpz_class>> divisor;
  for (const auto& [e, c] : b.poly().terms()) divisor.emplace_back(e.u, c);
  const auto [top_deg, top_coeff] = divisor.back();

  // charge -> (t-degree -> coefficient)
  std::map<std::int64_t, std::map<std::int64_t, mpz_class>> sectors;
  for (const auto& [e, c] : n.terms()) {
    sectors[e.charge()][std::min(e.u, e.v)] += c;
  }

  auto to_exponent = [](std::int64_t charge, std::int64_t t_deg) {
    return Exponent{t_deg + std::max<std::int64_t>(charge, 0),
                    t_deg + std::max<std::int64_t>(-charge, 0)};
  };

  EPoly quotient(d);
  for (auto& [charge, rem] : sectors) {
    while (!rem.empty()) {
      auto lead = std::prev(rem.end());
      const std::int64_t deg = lead->first;
      if (deg < top_deg) break;
      if (!mpz_divisible_p(lead->second.get_mpz_t(), top_coeff.get_mpz_t())) break;
      const mpz_class factor = lead->second / top_coeff;
      const std::int64_t shift = deg - top_deg;
      quotient += EPoly::monomial(to_exponent(charge, shift).u,
                                  to_exponent(charge, shift).v, factor, d);
      for (const auto& [dd, dc] : divisor) {
        auto& slot = rem[dd + shift];
        slot -= factor * dc;
        if (slot == 0) rem.erase(dd + shift);
      }
    }
    if (!rem.empty()) {
      EPoly remainder(d);
      for (const auto& [deg, c] : rem) {
        const Exponent e = to_exponent(charge, deg);
        remainder += EPoly::monomial(e.u, e.v, c, d);
      }
      return NotDivisible{charge, std::move(remainder)};
    }
  }
  return quotient;
}

EPoly poincare_dual(const EPoly& f, std::int64_t n) {
  const std::int64_t top = n * f.den();
  EPoly::TermMap out;
  for (const auto& [e, c] : f.terms()) {
    if (e.u > top || e.v > top) {
      throw ExponentOverflow("poincare_dual: term " +
                             EPoly::monomial(e.u, e.v, c, f.den()).to_string() +
                             " exceeds degree " + std::to_string(n));
    }
    out.emplace(Exponent{top - e.u, top - e.v}, c);
  }
  return EPoly(f.den(), std::move(out));
}

mpq_class specialize(const EPoly& f, const mpq_class& q,
                     const std::optional<mpq_class>& root) {
  const EPoly g = f.reduced();
  mpq_class s = q;
  if (g.den() > 1) {
    if (!root) {
      throw MissingRoot("specialize: exponents in (1/" + std::to_string(g.den()) +
                        ")Z need an exact root s with s^" + std::to_string(f.den()) +
                        " = q");
    }
    if (*root <= 0 || pow_rational(*root, f.den()) != q) {
      throw InvalidRoot("specialize: " + format_rational(*root) + "^" +
                        std::to_string(f.den()) + " != " + format_rational(q));
    }
    s = pow_rational(*root, f.den() / g.den());
  }
  std::optional<mpq_class> sqrt_s;
  mpq_class total = 0;
  for (const auto& [e, c] : g.terms()) {
    const std::int64_t sum = e.u + e.v;
    mpq_class term = pow_rational(s, sum / 2);
    if (sum % 2 != 0) {
      if (!sqrt_s) sqrt_s = exact_sqrt(s);
      if (!sqrt_s) {
        throw NonTateTerm("specialize: term " +
                          EPoly::monomial(e.u, e.v, c, g.den()).to_string() +
                          " needs sqrt(" + format_rational(s) + ")");
      }
      term *= *sqrt_s;
    }
    total += term * c;
  }
  return total;
}

}  // namespace stringy
