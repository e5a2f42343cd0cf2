#include "stringy/rational.hpp"

#include <numeric>
#include <stdexcept>

namespace stringy {

std::int64_t to_int64(const mpz_class& z) {
  if (!z.fits_slong_p()) {
    throw std::overflow_error("integer does not fit in 64 bits: " +
                              z.get_str());
  }
  return static_cast<std::int64_t>(z.get_si());
}

std::int64_t lcm64(std::int64_t a, std::int64_t b) {
  if (a <= 0 || b <= 0) throw std::invalid_argument("lcm64 of non-positive");
  return std::lcm(a, b);
}

std::int64_t denominator64(const mpq_class& x) {
  return to_int64(x.get_den());
}

mpq_class pow_rational(const mpq_class& x, std::int64_t e) {
  if (e < 0) {
    if (x == 0) throw std::domain_error("zero to a negative power");
    mpq_class inv = 1 / x;
    return pow_rational(inv, -e);
  }
  mpz_class num;
  mpz_class den;
  mpz_pow_ui(num.get_mpz_t(), x.get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(den.get_mpz_t(), x.get_den_mpz_t(), static_cast<unsigned long>(e));
  mpq_class r(num, den);
  r.canonicalize();
  return r;
}

mpz_class pow_integer(const mpz_class& x, std::uint64_t e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(e));
  return r;
}

std::optional<mpq_class> parse_rational(std::string_view text) {
  if (text.empty()) return std::nullopt;
  auto valid_int = [](std::string_view s, bool allow_sign) {
    if (s.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') return false;
    }
    return true;
  };
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den =
      slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!valid_int(num, true) || !valid_int(den, false)) return std::nullopt;
  std::string n(num);
  if (!n.empty() && n[0] == '+') n.erase(0, 1);
  mpz_class zn(n, 10);
  mpz_class zd(std::string(den), 10);
  if (zd == 0) return std::nullopt;
  mpq_class r(zn, zd);
  r.canonicalize();
  return r;
}

std::string format_rational(const mpq_class& x) {
  return x.get_str();
}

std::optional<mpq_class> exact_sqrt(const mpq_class& x) {
  if (x < 0) return std::nullopt;
  if (!mpz_perfect_square_p(x.get_num_mpz_t()) ||
      !mpz_perfect_square_p(x.get_den_mpz_t())) {
    return std::nullopt;
  }
  mpz_class n;
  mpz_class d;
  mpz_sqrt(n.get_mpz_t(), x.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), x.get_den_mpz_t());
  return mpq_class(n, d);
}

}  // namespace stringy
