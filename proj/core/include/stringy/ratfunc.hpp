#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "stringy/epoly.hpp"

namespace stringy {

/// numer / prod_k ((uv)^{e_k/d} - 1), with the factor list kept unexpanded.
///
/// Factors are stored as their exponent numerators e_k > 0 over the
/// numerator's denominator d. Equality is decided by cross-multiplication.
class RatFunc {
 public:
  RatFunc() = default;
  /// A polynomial (empty factor list).
  RatFunc(EPoly numer);  // NOLINT(google-explicit-constructor)
  RatFunc(EPoly numer, std::vector<std::int64_t> denom_exponents);

  /// (uv - 1) / ((uv)^{a+1} - 1) over denominator den; the constant 1 when
  /// a = 0. Requires a > -1 and den * (a + 1) integral.
  static RatFunc discrepancy_factor(const mpq_class& a, std::int64_t den);

  std::int64_t den() const noexcept { return numer_.den(); }
  const EPoly& numer() const noexcept { return numer_; }
  const std::vector<std::int64_t>& denom_exponents() const noexcept {
    return denom_;
  }
  bool is_polynomial_form() const noexcept { return denom_.empty(); }

  /// Expanded product of the denominator factors.
  EPoly denominator_product() const;
  RatFunc with_den(std::int64_t new_den) const;

  /// Removes every denominator factor that divides the numerator exactly.
  RatFunc cancelled() const;

  RatFunc operator-() const;
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  RatFunc& operator+=(const RatFunc& rhs) { return *this = *this + rhs; }
  RatFunc& operator*=(const RatFunc& rhs) { return *this = *this * rhs; }

  /// Numerator of a - b over the product of both factor lists; zero iff
  /// a == b.
  friend EPoly cross_difference(const RatFunc& a, const RatFunc& b);
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return cross_difference(a, b).is_zero();
  }

  std::string to_string() const;

 private:
  EPoly numer_;
  std::vector<std::int64_t> denom_;
};

enum class Polynomiality {
  /// Polynomial with every exponent in (1/g)Z for the requested g.
  Polynomial,
  /// Polynomial, but only at a granularity finer than the one requested.
  FinerOnly,
  NotPolynomial,
};

struct PolynomialVerdict {
  Polynomiality kind = Polynomiality::NotPolynomial;
  /// The quotient, present unless kind is NotPolynomial.
  std::optional<EPoly> poly;
  /// Smallest g with the quotient in Z[u^{1/g}, v^{1/g}]; 0 if none.
  std::int64_t finest_granularity = 0;
};

/// Decides whether f lies in Z[u^{1/g}, v^{1/g}]. g must divide f.den().
PolynomialVerdict is_polynomial(const RatFunc& f, std::int64_t g);

/// Exact value at (uv)^{1/d} = root (see the EPoly overload).
/// Throws PoleAtPoint if a denominator factor vanishes.
mpq_class specialize(const RatFunc& f, const mpq_class& q,
                     const std::optional<mpq_class>& root = std::nullopt);

const char* to_string(Polynomiality p);

}  // namespace stringy
