#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace stringy {

/// Converts to int64, throwing std::overflow_error when out of range.
std::int64_t to_int64(const mpz_class& z);

std::int64_t lcm64(std::int64_t a, std::int64_t b);

/// Denominator of a reduced rational as int64.
std::int64_t denominator64(const mpq_class& x);

/// x^e for any integer e; throws std::domain_error for 0^e with e < 0.
mpq_class pow_rational(const mpq_class& x, std::int64_t e);

mpz_class pow_integer(const mpz_class& x, std::uint64_t e);

/// Parses "p", "-p" or "p/q" exactly; whitespace is not accepted.
std::optional<mpq_class> parse_rational(std::string_view text);

/// Canonical text: "p" for integers, "p/q" otherwise.
std::string format_rational(const mpq_class& x);

/// Exact square root when x is a square of a rational.
std::optional<mpq_class> exact_sqrt(const mpq_class& x);

}  // namespace stringy
