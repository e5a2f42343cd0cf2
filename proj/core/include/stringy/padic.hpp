#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "stringy/radical.hpp"
#include "stringy/ratfunc.hpp"
#include "stringy/strata.hpp"

namespace stringy {

/// Residue data of a local field: q = p^m, plus how fractional powers of
/// q are realized.
class LocalField {
 public:
  enum class Mode {
    /// Only integral powers of q.
    Rational,
    /// Powers in (1/d)Z through the exact root s = q^{1/d}.
    Root,
    /// Any rational power, as an exact element of Q(p^{1/L}).
    Radical,
  };

  /// Throws InvalidField unless q is a prime power.
  static LocalField rational(const mpz_class& q);
  /// Also throws InvalidRoot unless s > 0 and s^d = q.
  static LocalField with_root(const mpz_class& q, std::int64_t d, const mpq_class& s);
  static LocalField radical(const mpz_class& q);

  const mpz_class& q() const noexcept { return q_; }
  const mpz_class& prime() const noexcept { return p_; }
  unsigned prime_exponent() const noexcept { return m_; }
  Mode mode() const noexcept { return mode_; }
  std::int64_t root_den() const noexcept { return d_; }
  const std::optional<mpq_class>& root() const noexcept { return s_; }

  /// q^e. Throws MissingRoot when the mode cannot represent it.
  RadicalNumber q_power(const mpq_class& e) const;

 private:
  LocalField() = default;
  mpz_class q_;
  mpz_class p_;
  unsigned m_ = 1;
  Mode mode_ = Mode::Rational;
  std::int64_t d_ = 1;
  std::optional<mpq_class> s_;
};

/// Integration over m^n (the open polydisc) or R^n.
enum class Domain { MaximalIdeal, Integers };

/// ω = prod x_i^{k_i} (dx_1 ∧ ... ∧ dx_n)^{⊗r}; coordinates beyond
/// exponents.size() carry no pole or zero.
struct MonomialForm {
  std::int64_t r = 1;
  std::vector<mpq_class> exponents;
  int dimension = 0;

  /// k_i / r, padded with zeros up to the dimension.
  std::vector<mpq_class> scaled_exponents() const;
};

struct Convergence {
  bool converges = true;
  /// First index with k_i / r <= -1.
  std::optional<std::size_t> diverges_at;
};

/// Converges iff k_i / r > -1 for every i.
Convergence convergence_check(const MonomialForm& f);

/// Exact value of a p-adic integral.
///
/// symbolic is a function of w = q (over its own denominator D); the value
/// equals symbolic(w) / w^{w_shift / D}. value is computed directly from q.
struct PAdicValue {
  RatFunc symbolic;
  std::int64_t w_shift = 0;
  RadicalNumber value;
  /// Set by gauge_integral: plain arithmetic N / q^n with no geometric claim.
  bool formal = false;

  bool is_rational() const { return value.is_rational(); }
  /// Throws std::domain_error if the value is irrational.
  mpq_class rational() const { return value.rational(); }
  std::string to_string() const { return value.to_string(); }
  /// "symbolic / w^(shift/D)" in u, v.
  std::string symbolic_string() const;

  friend PAdicValue operator+(const PAdicValue& a, const PAdicValue& b);
  friend PAdicValue operator*(const mpz_class& c, const PAdicValue& a);
};

/// Substitutes w = q into the symbolic form; root is q^{1/D}.
mpq_class substitute(const PAdicValue& v, const mpq_class& q,
                     const std::optional<mpq_class>& root = std::nullopt);

/// ∫_{domain} |ω|^{1/r}: each coordinate contributes
/// (q-1)/(q (q^{κ+1} - 1)) over m and (q-1) q^κ/(q^{κ+1} - 1) over R.
/// Throws Divergent or MissingRoot.
PAdicValue monomial_integral_cell(const MonomialForm& f, const LocalField& field,
                                  Domain domain = Domain::MaximalIdeal);

/// Integral over one residue disc of a point lying on exactly the divisors
/// in `incident` (bit i = exponent i): q^{-n} prod_{j} (q-1)/(q^{κ_j+1} - 1).
PAdicValue local_fiber_integral(const MonomialForm& f, const LocalField& field,
                                SubsetMask incident);

/// q^{-n} sum_J |D_J°(F_q)| prod_{j in J} (q-1)/(q^{κ_j+1} - 1). Every
/// stratum must have a count (MissingCount for J = ∅ when absent).
PAdicValue global_integral(const MonomialForm& f, const LocalField& field,
                           const std::map<SubsetMask, mpz_class>& counts);

/// N / q^n, flagged formal.
PAdicValue gauge_integral(const LocalField& field, const mpz_class& count,
                          int dimension);

struct OracleResult {
  /// Sum over valuation profiles with every valuation <= cutoff.
  RadicalNumber partial;
  /// Exact mass of all remaining profiles.
  RadicalNumber tail;

  /// partial <= x <= partial + tail.
  bool brackets(const RadicalNumber& x) const;
};

inline constexpr std::int64_t kDefaultOracleCutoff = 64;

/// Enumerates valuation profiles: on {v(x_i) = v} the integrand is
/// q^{-vκ_i} and the measure (1 - 1/q) q^{-v}. Throws Divergent.
OracleResult enumeration_oracle(const MonomialForm& f, const LocalField& field,
                                std::int64_t cutoff = kDefaultOracleCutoff,
                                Domain domain = Domain::MaximalIdeal);

}  // namespace stringy
