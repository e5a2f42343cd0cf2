#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace stringy {

/// q = p^m with p prime, or nullopt.
std::optional<std::pair<mpz_class, unsigned>> prime_power_decomposition(
    const mpz_class& q);

/// Exact real number in Q(θ), θ = p^{1/L} > 0 for a prime p.
///
/// Stored as coefficients of 1, θ, ..., θ^{L-1}. x^L - p is Eisenstein at
/// p, so the representation is unique and every non-zero value is
/// invertible. Values are kept at the smallest L that represents them;
/// rationals have L = 1. Mixing two different primes throws
/// std::domain_error.
class RadicalNumber {
 public:
  RadicalNumber() = default;
  RadicalNumber(const mpq_class& x);  // NOLINT(google-explicit-constructor)
  RadicalNumber(long x) : RadicalNumber(mpq_class(x)) {}  // NOLINT

  /// p^e for a prime p and rational e.
  static RadicalNumber prime_power(const mpz_class& p, const mpq_class& e);

  const mpz_class& prime() const noexcept { return prime_; }
  std::int64_t degree() const noexcept { return static_cast<std::int64_t>(coeffs_.size()); }
  const std::vector<mpq_class>& coefficients() const noexcept { return coeffs_; }

  bool is_rational() const noexcept { return coeffs_.size() == 1; }
  /// Throws std::domain_error when irrational.
  mpq_class rational() const;

  /// -1, 0 or +1, decided exactly by bisection on θ.
  int sign() const;
  double to_double() const;

  RadicalNumber operator-() const;
  RadicalNumber inverse() const;
  friend RadicalNumber operator+(const RadicalNumber& a, const RadicalNumber& b);
  friend RadicalNumber operator-(const RadicalNumber& a, const RadicalNumber& b);
  friend RadicalNumber operator*(const RadicalNumber& a, const RadicalNumber& b);
  friend RadicalNumber operator/(const RadicalNumber& a, const RadicalNumber& b);
  RadicalNumber& operator+=(const RadicalNumber& b) { return *this = *this + b; }
  RadicalNumber& operator-=(const RadicalNumber& b) { return *this = *this - b; }
  RadicalNumber& operator*=(const RadicalNumber& b) { return *this = *this * b; }
  RadicalNumber& operator/=(const RadicalNumber& b) { return *this = *this / b; }

  RadicalNumber pow(std::int64_t e) const;

  friend bool operator==(const RadicalNumber& a, const RadicalNumber& b);
  friend std::strong_ordering operator<=>(const RadicalNumber& a,
                                          const RadicalNumber& b);

  /// "p/q" for rationals, else e.g. "1/2 + 3/4*3^(1/2)".
  std::string to_string() const;

 private:
  RadicalNumber(mpz_class prime, std::vector<mpq_class> coeffs);
  RadicalNumber lifted(std::int64_t degree) const;
  void normalize();
  static std::pair<RadicalNumber, RadicalNumber> aligned(const RadicalNumber& a,
                                                         const RadicalNumber& b);

  mpz_class prime_ = 0;
  std::vector<mpq_class> coeffs_{mpq_class(0)};
};

}  // namespace stringy
