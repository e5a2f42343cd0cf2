#include "stringy/radical.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "stringy/rational.hpp"

namespace stringy {

std::optional<std::pair<mpz_class, unsigned>> prime_power_decomposition(
    const mpz_class& q) {
  if (q < 2) return std::nullopt;
  const auto bits = static_cast<unsigned>(mpz_sizeinbase(q.get_mpz_t(), 2));
  for (unsigned m = bits; m >= 1; --m) {
    mpz_class root;
    if (mpz_root(root.get_mpz_t(), q.get_mpz_t(), m) == 0) continue;
    if (mpz_probab_prime_p(root.get_mpz_t(), 40) != 0) return std::make_pair(root, m);
  }
  return std::nullopt;
}

RadicalNumber::RadicalNumber(const mpq_class& x) : coeffs_{x} {}

RadicalNumber::RadicalNumber(mpz_class prime, std::vector<mpq_class> coeffs)
    : prime_(std::move(prime)), coeffs_(std::move(coeffs)) {
  normalize();
}

RadicalNumber RadicalNumber::prime_power(const mpz_class& p, const mpq_class& e) {
  if (mpz_probab_prime_p(p.get_mpz_t(), 40) == 0) {
    throw std::domain_error("RadicalNumber base must be prime");
  }
  const std::int64_t l = denominator64(e);
  const std::int64_t num = to_int64(e.get_num());
  // p^{num/l} = p^{floor(num/l)} θ^{num mod l}
  std::int64_t whole = num / l;
  std::int64_t rest = num % l;
  if (rest < 0) {
    rest += l;
    whole -= 1;
  }
  std::vector<mpq_class> c(static_cast<std::size_t>(l), mpq_class(0));
  c[static_cast<std::size_t>(rest)] = pow_rational(mpq_class(p), whole);
  return RadicalNumber(p, std::move(c));
}

void RadicalNumber::normalize() {
  const std::size_t l = coeffs_.size();
  std::size_t g = l;
  for (std::size_t i = 1; i < l; ++i) {
    if (coeffs_[i] != 0) g = std::gcd(g, i);
  }
  if (g > 1) {
    std::vector<mpq_class> c(l / g);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = coeffs_[i * g];
    coeffs_ = std::move(c);
  }
  if (coeffs_.size() == 1) prime_ = 0;
}

RadicalNumber RadicalNumber::lifted(std::int64_t degree) const {
  const auto l = static_cast<std::size_t>(degree);
  const std::size_t step = l / coeffs_.size();
  RadicalNumber out;
  out.prime_ = prime_;
  out.coeffs_.assign(l, mpq_class(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out.coeffs_[i * step] = coeffs_[i];
  return out;
}

std::pair<RadicalNumber, RadicalNumber> RadicalNumber::aligned(const RadicalNumber& a,
                                                               const RadicalNumber& b) {
  if (!a.is_rational() && !b.is_rational() && a.prime_ != b.prime_) {
    throw std::domain_error("RadicalNumber: cannot combine radicals of " +
                            a.prime_.get_str() + " and " + b.prime_.get_str());
  }
  const std::int64_t l = std::lcm(a.degree(), b.degree());
  RadicalNumber x = a.lifted(l);
  RadicalNumber y = b.lifted(l);
  const mpz_class p = a.is_rational() ? b.prime_ : a.prime_;
  x.prime_ = p;
  y.prime_ = p;
  return {std::move(x), std::move(y)};
}

mpq_class RadicalNumber::rational() const {
  if (!is_rational()) throw std::domain_error("irrational value " + to_string());
  return coeffs_[0];
}

RadicalNumber RadicalNumber::operator-() const {
  RadicalNumber out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

RadicalNumber operator+(const RadicalNumber& a, const RadicalNumber& b) {
  auto [x, y] = RadicalNumber::aligned(a, b);
  for (std::size_t i = 0; i < x.coeffs_.size(); ++i) x.coeffs_[i] += y.coeffs_[i];
  x.normalize();
  return x;
}

RadicalNumber operator-(const RadicalNumber& a, const RadicalNumber& b) {
  return a + (-b);
}

RadicalNumber operator*(const RadicalNumber& a, const RadicalNumber& b) {
  auto [x, y] = RadicalNumber::aligned(a, b);
  const std::size_t l = x.coeffs_.size();
  std::vector<mpq_class> c(l, mpq_class(0));
  for (std::size_t i = 0; i < l; ++i) {
    if (x.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < l; ++j) {
      if (y.coeffs_[j] == 0) continue;
      const mpq_class prod = x.coeffs_[i] * y.coeffs_[j];
      // θ^{i+j} = p θ^{i+j-l} when i + j >= l
      if (i + j < l) {
        c[i + j] += prod;
      } else {
        c[i + j - l] += prod * x.prime_;
      }
    }
  }
  return RadicalNumber(x.prime_, std::move(c));
}

RadicalNumber RadicalNumber::inverse() const {
  if (is_rational()) {
    if (coeffs_[0] == 0) throw std::domain_error("RadicalNumber: division by zero");
    return RadicalNumber(mpq_class(1 / coeffs_[0]));
  }
  // Solve M x = e_0, column k of M being the coefficients of this * θ^k.
  const std::size_t l = coeffs_.size();
  std::vector<std::vector<mpq_class>> m(l, std::vector<mpq_class>(l + 1, mpq_class(0)));
  for (std::size_t k = 0; k < l; ++k) {
    for (std::size_t i = 0; i < l; ++i) {
      if (i + k < l) {
        m[i + k][k] += coeffs_[i];
      } else {
        m[i + k - l][k] += coeffs_[i] * prime_;
      }
    }
  }
  m[0][l] = 1;
  for (std::size_t col = 0; col < l; ++col) {
    std::size_t pivot = col;
    while (pivot < l && m[pivot][col] == 0) ++pivot;
    if (pivot == l) throw std::domain_error("RadicalNumber: division by zero");
    std::swap(m[col], m[pivot]);
    const mpq_class inv = 1 / m[col][col];
    for (std::size_t k = col; k <= l; ++k) m[col][k] *= inv;
    for (std::size_t row = 0; row < l; ++row) {
      if (row == col || m[row][col] == 0) continue;
      const mpq_class f = m[row][col];
      for (std::size_t k = col; k <= l; ++k) m[row][k] -= f * m[col][k];
    }
  }
  std::vector<mpq_class> c(l);
  for (std::size_t i = 0; i < l; ++i) c[i] = m[i][l];
  return RadicalNumber(prime_, std::move(c));
}

RadicalNumber operator/(const RadicalNumber& a, const RadicalNumber& b) {
  return a * b.inverse();
}

RadicalNumber RadicalNumber::pow(std::int64_t e) const {
  RadicalNumber base = e < 0 ? inverse() : *this;
  std::uint64_t k = e < 0 ? static_cast<std::uint64_t>(-(e + 1)) + 1
                          : static_cast<std::uint64_t>(e);
  RadicalNumber out(mpq_class(1));
  while (k) {
    if (k & 1u) out *= base;
    k >>= 1;
    if (k) base *= base;
  }
  return out;
}

int RadicalNumber::sign() const {
  if (is_rational()) return sgn(coeffs_[0]);
  const auto l = static_cast<std::uint64_t>(coeffs_.size());
  const mpq_class p(prime_);
  mpq_class lo = 1;
  mpq_class hi = p;
  for (int iter = 0; iter < 100000; ++iter) {
    // Interval bounds of sum c_i θ^i for θ in (lo, hi), θ > 1.
    mpq_class lower = 0;
    mpq_class upper = 0;
    mpq_class lo_pow = 1;
    mpq_class hi_pow = 1;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      const mpq_class& c = coeffs_[i];
      if (c > 0) {
        lower += c * lo_pow;
        upper += c * hi_pow;
      } else if (c < 0) {
        lower += c * hi_pow;
        upper += c * lo_pow;
      }
      lo_pow *= lo;
      hi_pow *= hi;
    }
    if (lower > 0) return 1;
    if (upper < 0) return -1;
    const mpq_class mid = (lo + hi) / 2;
    mpq_class mid_pow = 1;
    for (std::uint64_t i = 0; i < l; ++i) mid_pow *= mid;
    if (mid_pow < p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  throw std::logic_error("RadicalNumber::sign did not terminate");
}

double RadicalNumber::to_double() const {
  if (is_rational()) return coeffs_[0].get_d();
  const long double theta =
      std::pow(static_cast<long double>(prime_.get_d()),
               1.0L / static_cast<long double>(coeffs_.size()));
  long double acc = 0;
  long double power = 1;
  for (const auto& c : coeffs_) {
    acc += static_cast<long double>(c.get_d()) * power;
    power *= theta;
  }
  return static_cast<double>(acc);
}

bool operator==(const RadicalNumber& a, const RadicalNumber& b) {
  if (a.coeffs_.size() != b.coeffs_.size()) return false;
  if (!a.is_rational() && a.prime_ != b.prime_) return false;
  return a.coeffs_ == b.coeffs_;
}

std::strong_ordering operator<=>(const RadicalNumber& a, const RadicalNumber& b) {
  const int s = (a - b).sign();
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string RadicalNumber::to_string() const {
  if (is_rational()) return format_rational(coeffs_[0]);
  const auto l = static_cast<std::int64_t>(coeffs_.size());
  std::string out;
  for (std::int64_t i = 0; i < l; ++i) {
    const mpq_class& c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    if (!out.empty()) out += c < 0 ? " - " : " + ";
    else if (c < 0) out += "-";
    const mpq_class mag = abs(c);
    if (i == 0) {
      out += format_rational(mag);
      continue;
    }
    if (mag != 1) out += format_rational(mag) + "*";
    const std::int64_t g = std::gcd(i, l);
    out += prime_.get_str() + "^(" + std::to_string(i / g) + "/" + std::to_string(l / g) + ")";
  }
  return out;
}

}  // namespace stringy
