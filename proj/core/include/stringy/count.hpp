#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "stringy/epoly.hpp"
#include "stringy/strata.hpp"

namespace stringy {

/// Dense integer polynomial in q.
class CountPoly {
 public:
  CountPoly() = default;
  explicit CountPoly(std::vector<mpz_class> coeffs);
  static CountPoly constant(const mpz_class& c);
  /// q^k
  static CountPoly q_power(unsigned k);
  /// 1 + q + ... + q^k
  static CountPoly geometric(unsigned k);

  const std::vector<mpz_class>& coefficients() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  mpz_class operator()(const mpz_class& q) const;

  friend CountPoly operator+(const CountPoly& a, const CountPoly& b);
  friend CountPoly operator-(const CountPoly& a, const CountPoly& b);
  friend CountPoly operator*(const CountPoly& a, const CountPoly& b);
  CountPoly pow(unsigned k) const;
  friend bool operator==(const CountPoly& a, const CountPoly& b) = default;

  /// q ↦ uv.
  EPoly to_epoly() const;
  /// "q^2 + q + 1"
  std::string to_string() const;

 private:
  void trim();
  std::vector<mpz_class> coeffs_;
};

/// Catalog scheme as an expression tree with its count polynomial.
class CountScheme {
 public:
  enum class Kind {
    Affine,
    Projective,
    Torus,
    Point,
    Product,
    DisjointUnion,
    Complement,
    BlowupOriginAffine,
  };

  static CountScheme affine(unsigned n);
  static CountScheme projective(unsigned n);
  static CountScheme torus(unsigned n);
  static CountScheme point();
  static CountScheme product(CountScheme a, CountScheme b);
  static CountScheme disjoint_union(CountScheme a, CountScheme b);
  /// ambient minus a closed piece; the embedding is the caller's claim.
  /// Throws NegativeCount if the difference is negative at q = 2.
  static CountScheme complement(CountScheme ambient, CountScheme closed);
  static CountScheme blowup_origin_affine(unsigned n);

  Kind kind() const noexcept { return kind_; }
  unsigned n() const noexcept { return n_; }
  const std::vector<CountScheme>& children() const noexcept { return children_; }
  const CountPoly& count() const noexcept { return count_; }
  /// Dimension of the scheme (of the ambient for complements).
  unsigned dimension() const noexcept { return dimension_; }
  /// Affine spaces and tori carry the gauge forms dx and dx/x.
  bool has_gauge_form() const noexcept;

  /// Round-trips through parse_scheme.
  std::string to_string() const;

 private:
  CountScheme() = default;
  Kind kind_ = Kind::Point;
  unsigned n_ = 0;
  unsigned dimension_ = 0;
  std::vector<CountScheme> children_;
  CountPoly count_;
};

/// Parses "product(affine(1),torus(1))" and the like; whitespace is ignored.
/// Throws ParseError (line 0) on malformed text.
CountScheme parse_scheme(std::string_view text);

/// N(q) for q >= 2.
mpz_class count_points(const CountScheme& s, const mpz_class& q);

/// Exhaustive enumeration over F_q, q prime.
///
/// Throws FieldTooLarge for q > 13, InvalidField for non-prime q and
/// Unenumerable for complements whose closed piece has no coordinate
/// embedding into the ambient, or when the point set is too large.
mpz_class brute_force_count(const CountScheme& s, unsigned q);

/// Every catalog constructor is Tate-type: N(q) with q ↦ uv.
EPoly e_polynomial_of(const CountScheme& s);

struct BlowupData {
  ResolutionData resolution;
  std::map<SubsetMask, CountPoly> counts;
};

/// Bl_0(A^n) → A^n: one exceptional divisor with a = n - 1; open strata
/// {∅: (uv)^n - 1, {E}: 1 + ... + (uv)^{n-1}} and the matching counts.
BlowupData blowup_strata(unsigned n);

/// Identity resolution of A^n: no divisors, E = (uv)^n.
ResolutionData affine_identity(unsigned n);

/// Schemes exercised by the catalog checks.
std::vector<CountScheme> catalog();

}  // namespace stringy
