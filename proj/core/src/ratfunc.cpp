#include "stringy/ratfunc.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "stringy/errors.hpp"
#include "stringy/rational.hpp"

namespace stringy {

namespace {

std::map<std::int64_t, int> multiset(const std::vector<std::int64_t>& xs) {
  std::map<std::int64_t, int> m;
  for (auto x : xs) ++m[x];
  return m;
}

EPoly product_of(const std::vector<std::int64_t>& exps, std::int64_t den) {
  EPoly p = EPoly::constant(1, den);
  for (auto e : exps) p *= EPoly::w_power_minus_one(e, den);
  return p;
}

/// Brings both operands to a common denominator d.
std::pair<RatFunc, RatFunc> aligned(const RatFunc& a, const RatFunc& b) {
  const std::int64_t d = lcm64(a.den(), b.den());
  return {a.with_den(d), b.with_den(d)};
}

}  // namespace

RatFunc::RatFunc(EPoly numer) : numer_(std::move(numer)) {}

RatFunc::RatFunc(EPoly numer, std::vector<std::int64_t> denom_exponents)
    : numer_(std::move(numer)), denom_(std::move(denom_exponents)) {
  for (auto e : denom_) {
    if (e <= 0) throw std::invalid_argument("RatFunc factor exponents must be positive");
  }
  std::sort(denom_.begin(), denom_.end());
}

RatFunc RatFunc::discrepancy_factor(const mpq_class& a, std::int64_t den) {
  if (a <= -1) throw std::invalid_argument("discrepancy_factor needs a > -1");
  if (a == 0) return RatFunc(EPoly::constant(1, den));
  const mpq_class scaled = (a + 1) * den;
  if (scaled.get_den() != 1) {
    throw std::invalid_argument("discrepancy " + format_rational(a) +
                                " is not in (1/" + std::to_string(den) + ")Z");
  }
  return RatFunc(EPoly::w_power_minus_one(den, den), {to_int64(scaled.get_num())});
}

EPoly RatFunc::denominator_product() const { return product_of(denom_, den()); }

RatFunc RatFunc::with_den(std::int64_t new_den) const {
  if (new_den == den()) return *this;
  const std::int64_t f = new_den / den();
  std::vector<std::int64_t> exps = denom_;
  for (auto& e : exps) e *= f;
  return RatFunc(numer_.with_den(new_den), std::move(exps));
}

RatFunc RatFunc::cancelled() const {
  EPoly n = numer_;
  std::vector<std::int64_t> kept;
  for (auto e : denom_) {
    auto r = sector_divide(n, BalancedPoly(EPoly::w_power_minus_one(e, den())));
    if (auto* q = std::get_if<EPoly>(&r)) {
      n = std::move(*q);
    } else {
      kept.push_back(e);
    }
  }
  return RatFunc(std::move(n), std::move(kept));
}

RatFunc RatFunc::operator-() const { return RatFunc(-numer_, denom_); }

RatFunc operator+(const RatFunc& lhs, const RatFunc& rhs) {
  auto [a, b] = aligned(lhs, rhs);
  const auto ma = multiset(a.denom_);
  const auto mb = multiset(b.denom_);
  std::vector<std::int64_t> common;
  std::vector<std::int64_t> extra_a;  // factors a lacks
  std::vector<std::int64_t> extra_b;
  std::map<std::int64_t, int> all = ma;
  for (const auto& [e, k] : mb) all[e] = std::max(all[e], k);
  for (const auto& [e, k] : all) {
    const int ka = ma.count(e) ? ma.at(e) : 0;
    const int kb = mb.count(e) ? mb.at(e) : 0;
    for (int i = 0; i < k; ++i) common.push_back(e);
    for (int i = ka; i < k; ++i) extra_a.push_back(e);
    for (int i = kb; i < k; ++i) extra_b.push_back(e);
  }
  EPoly numer = a.numer_ * product_of(extra_a, a.den()) +
                b.numer_ * product_of(extra_b, a.den());
  return RatFunc(std::move(numer), std::move(common));
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& lhs, const RatFunc& rhs) {
  auto [a, b] = aligned(lhs, rhs);
  std::vector<std::int64_t> exps = a.denom_;
  exps.insert(exps.end(), b.denom_.begin(), b.denom_.end());
  return RatFunc(a.numer_ * b.numer_, std::move(exps));
}

EPoly cross_difference(const RatFunc& lhs, const RatFunc& rhs) {
  auto [a, b] = aligned(lhs, rhs);
  return a.numer_ * b.denominator_product() - b.numer_ * a.denominator_product();
}

std::string RatFunc::to_string() const {
  if (denom_.empty()) return numer_.to_string();
  std::string out = "(" + numer_.to_string() + ") / (";
  bool first = true;
  for (auto e : denom_) {
    if (!first) out += "*";
    first = false;
    out += "(" + EPoly::w_power_minus_one(e, den()).to_string() + ")";
  }
  return out + ")";
}

PolynomialVerdict is_polynomial(const RatFunc& f, std::int64_t g) {
  if (g <= 0 || f.den() % g != 0) {
    throw std::invalid_argument("is_polynomial: granularity " + std::to_string(g) +
                                " does not divide " + std::to_string(f.den()));
  }
  EPoly n = f.numer();
  for (auto e : f.denom_exponents()) {
    auto r = sector_divide(n, BalancedPoly(EPoly::w_power_minus_one(e, f.den())));
    if (std::holds_alternative<NotDivisible>(r)) return {};
    n = std::get<EPoly>(std::move(r));
  }
  PolynomialVerdict v;
  v.finest_granularity = n.granularity();
  v.kind = g % v.finest_granularity == 0 ? Polynomiality::Polynomial
                                          : Polynomiality::FinerOnly;
  v.poly = std::move(n);
  return v;
}

mpq_class specialize(const RatFunc& f, const mpq_class& q,
                     const std::optional<mpq_class>& root) {
  const mpq_class numer = specialize(f.numer(), q, root);
  mpq_class denom = 1;
  for (auto e : f.denom_exponents()) {
    const mpq_class factor =
        specialize(EPoly::w_power_minus_one(e, f.den()), q, root);
    if (factor == 0) {
      throw PoleAtPoint("specialize: factor " +
                        EPoly::w_power_minus_one(e, f.den()).to_string() +
                        " vanishes at q = " + format_rational(q));
    }
    denom *= factor;
  }
  return numer / denom;
}

const char* to_string(Polynomiality p) {
  switch (p) {
    case Polynomiality::Polynomial:
      return "polynomial";
    case Polynomiality::FinerOnly:
      return "finer granularity only";
    case Polynomiality::NotPolynomial:
      return "not polynomial";
  }
  return "?";
}

}  // namespace stringy
