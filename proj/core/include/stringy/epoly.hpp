#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

namespace stringy {

/// Exponent numerators of a monomial u^{u/d} v^{v/d}.
struct Exponent {
  std::int64_t u = 0;
  std::int64_t v = 0;

  std::int64_t charge() const noexcept { return u - v; }
  auto operator<=>(const Exponent&) const = default;
};

/// Sparse polynomial in u^{1/d}, v^{1/d} with integer coefficients.
///
/// Exponents are stored as integer numerators over the context denominator
/// d, so u^{i/d} v^{j/d} is the key {i, j}. Zero coefficients are never
/// stored. Binary operations between values with different denominators
/// lift both operands to the lcm first.
class EPoly {
 public:
  using TermMap = std::map<Exponent, mpz_class>;

  EPoly() = default;
  explicit EPoly(std::int64_t den);
  EPoly(std::int64_t den, TermMap terms);

  static EPoly constant(const mpz_class& c, std::int64_t den = 1);
  static EPoly monomial(std::int64_t u_num, std::int64_t v_num,
                        const mpz_class& c, std::int64_t den = 1);
  /// (uv)^{e/d}
  static EPoly w_power(std::int64_t e_num, std::int64_t den = 1);
  /// (uv)^{e/d} - 1
  static EPoly w_power_minus_one(std::int64_t e_num, std::int64_t den = 1);
  /// sum_k coeffs[k] (uv)^k
  static EPoly from_w_coefficients(const std::vector<mpz_class>& coeffs);

  std::int64_t den() const noexcept { return den_; }
  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  /// Every term has equal u and v exponents.
  bool is_balanced() const;
  mpz_class coeff(std::int64_t u_num, std::int64_t v_num) const;
  /// Largest exponent numerator in either variable; -1 for zero.
  std::int64_t max_exponent() const;

  /// Re-expresses over new_den, which must be a positive multiple of den().
  EPoly with_den(std::int64_t new_den) const;
  /// Smallest denominator that represents the same polynomial.
  EPoly reduced() const;
  /// Granularity g (a divisor of the reduced denominator) such that every
  /// exponent lies in (1/g)Z.
  std::int64_t granularity() const;

  EPoly operator-() const;
  EPoly& operator+=(const EPoly& rhs);
  EPoly& operator-=(const EPoly& rhs);
  EPoly& operator*=(const EPoly& rhs);
  EPoly& operator*=(const mpz_class& c);
  friend EPoly operator+(EPoly a, const EPoly& b) { return a += b; }
  friend EPoly operator-(EPoly a, const EPoly& b) { return a -= b; }
  friend EPoly operator*(const EPoly& a, const EPoly& b);
  friend EPoly operator*(EPoly a, const mpz_class& c) { return a *= c; }
  friend EPoly operator*(const mpz_class& c, EPoly a) { return a *= c; }

  EPoly pow(unsigned k) const;

  /// Equal as polynomials, regardless of the stored denominator.
  friend bool operator==(const EPoly& a, const EPoly& b);

  /// Canonical text, terms in decreasing total degree, e.g.
  /// "u^2*v^2 - u^(2/3)*v^(2/3) + 1".
  std::string to_string() const;

 private:
  void add_term(const Exponent& e, const mpz_class& c);

  std::int64_t den_ = 1;
  TermMap terms_;
};

/// An EPoly that is a polynomial in w = uv.
class BalancedPoly {
 public:
  /// Throws std::invalid_argument when p is not balanced.
  explicit BalancedPoly(EPoly p);

  const EPoly& poly() const noexcept { return poly_; }
  std::int64_t den() const noexcept { return poly_.den(); }
  /// Dense coefficients in t = w^{1/d}, lowest degree first.
  std::vector<mpz_class> t_coefficients() const;

 private:
  EPoly poly_;
};

/// Failure of exact division in one charge sector.
struct NotDivisible {
  std::int64_t charge = 0;
  /// Remainder of the failing sector, as an EPoly.
  EPoly remainder;
};

using SectorQuotient = std::variant<EPoly, NotDivisible>;

/// Exact division of numer by a polynomial in uv, sector by sector.
///
/// numer splits into charge sectors c = i - j, each of the form
/// u^c P_c(w) (or v^{-c} P_c(w)). Every P_c is divided by denom in Z[t],
/// t = w^{1/d}; the quotient is returned only if all remainders vanish.
SectorQuotient sector_divide(const EPoly& numer, const BalancedPoly& denom);

/// (uv)^n f(1/u, 1/v). Throws ExponentOverflow if an exponent exceeds n.
EPoly poincare_dual(const EPoly& f, std::int64_t n);

/// Substitutes (uv)^{1/d} = s, i.e. u = v = q^{1/2} with s^d = q.
///
/// A term u^{i/d} v^{j/d} becomes s^{(i+j)/2}; odd i+j needs an exact
/// rational sqrt(s), otherwise NonTateTerm is thrown. When d > 1 the root
/// is mandatory (MissingRoot) and must satisfy root^d = q (InvalidRoot).
mpq_class specialize(const EPoly& f, const mpq_class& q,
                     const std::optional<mpq_class>& root = std::nullopt);

}  // namespace stringy
