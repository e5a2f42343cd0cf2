#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include <gmpxx.h>

#include "stringy/ratfunc.hpp"
#include "stringy/strata.hpp"

namespace stringy {

/// E_st(X; u, v) as an uncancelled fraction.
///
/// The denominator factors are exactly (uv)^{a_j+1} - 1 for the divisors
/// with a_j != 0, in the context denominator d.
struct StringyE {
  RatFunc value;
  int dimension = 0;
  std::int64_t context_den = 1;
};

/// (i, j) -> h^{i,j}_st. Entries may be negative; the flag records it.
struct StringyHodgeTable {
  std::map<std::pair<std::int64_t, std::int64_t>, mpz_class> numbers;
  bool has_negative = false;

  mpz_class at(std::int64_t i, std::int64_t j) const;
};

/// Sum over J of E(D_J°) * prod_{j in J} (uv - 1) / ((uv)^{a_j+1} - 1).
/// Validates r; accepts either stratum flavor.
StringyE stringy_E(const ResolutionData& r);

/// Reads h^{i,j}_st = (-1)^{i+j} coeff(u^i v^j). Throws NotPolynomial when
/// E_st is not in Z[u, v].
StringyHodgeTable stringy_hodge_numbers(const StringyE& e);

struct StringyPointCount {
  /// N_st(q) = sum_J |D_J°(F_q)| prod (q - 1) / (q^{a_j+1} - 1)
  mpq_class count;
  /// N_st(q) / q^n, the value of the p-adic integral.
  mpq_class integral;
};

/// counts maps each stratum J to |D_J°(F_q)|. Every non-empty stratum of
/// r must have a count (MissingCount). With fractional discrepancies the
/// root s = q^{1/d} is mandatory (MissingRoot).
StringyPointCount stringy_point_count(const ResolutionData& r,
                                      const std::map<SubsetMask, mpz_class>& counts,
                                      const mpq_class& q,
                                      const std::optional<mpq_class>& root = std::nullopt);

struct Agreement {
  bool equal = false;
  /// Numerator of E_st(r1) - E_st(r2) over the joint denominator.
  EPoly difference;
  /// Smallest monomial of the difference, when non-zero.
  std::optional<Exponent> first_difference;
  std::string certificate;
};

/// Exact comparison of the two stringy E-functions. Throws
/// DimensionMismatch when the resolutions have different dimensions.
Agreement resolutions_agree(const ResolutionData& r1, const ResolutionData& r2);

}  // namespace stringy
