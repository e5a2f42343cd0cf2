#include "doctest.h"

#include "oracles.hpp"
#include "stringy/epoly.hpp"
#include "stringy/errors.hpp"
#include "stringy/rational.hpp"

using namespace stringy;

namespace {

EPoly w(std::int64_t e, std::int64_t den = 1) { return EPoly::w_power(e, den); }
EPoly c(long x) { return EPoly::constant(x); }

}  // namespace

TEST_CASE("ring operations") {
  CHECK((c(1) + w(1)) + w(1) == c(1) + EPoly::w_power(1) * mpz_class(2));
  CHECK((w(1) - c(1)) * (w(1) + c(1)) == w(2) - c(1));
  // (uv)^{2/3} (uv)^{4/3} = (uv)^2
  CHECK(w(2, 3) * w(4, 3) == w(2));
  CHECK((w(2, 3) * w(4, 3)).reduced().den() == 1);
  CHECK(c(1) * w(3, 2) == w(3, 2));
  CHECK((w(1) - w(1)).is_zero());
}

TEST_CASE("to_string orders by total degree") {
  CHECK((w(6, 3) - w(2, 3) + c(1)).to_string() == "u^2*v^2 - u^(2/3)*v^(2/3) + 1");
  CHECK(EPoly().to_string() == "0");
  CHECK(EPoly::monomial(1, 0, mpz_class(-2)).to_string() == "-2*u");
}

TEST_CASE("multiplication matches a dense grid product") {
  oracle::Rng rng(11);
  for (int iter = 0; iter < 200; ++iter) {
    const std::int64_t da = oracle::uniform(rng, 1, 3);
    const std::int64_t db = oracle::uniform(rng, 1, 3);
    const EPoly a = oracle::random_epoly(rng, da, 6, 6, 1000);
    const EPoly b = oracle::random_epoly(rng, db, 6, 6, 1000);
    const EPoly p = a * b;
    const std::int64_t den = lcm64(da, db);
    CHECK(oracle::as_dense(p, den) == oracle::dense_mul(a, b, den));
  }
}

TEST_CASE("ring axioms on random triples") {
  oracle::Rng rng(12);
  for (int iter = 0; iter < 150; ++iter) {
    const std::int64_t d = oracle::uniform(rng, 1, 4);
    const EPoly a = oracle::random_epoly(rng, d, 20 * d, 5, 1000000);
    const EPoly b = oracle::random_epoly(rng, d, 20 * d, 5, 1000000);
    const EPoly e = oracle::random_epoly(rng, d, 20 * d, 5, 1000000);
    CHECK((a * b) * e == a * (b * e));
    CHECK(a * (b + e) == a * b + a * e);
    CHECK(a * b == b * a);
    CHECK(a + b == b + a);
    CHECK(a * c(1) == a);
  }
}

TEST_CASE("sector_divide") {
  auto quotient = [](const EPoly& n, const EPoly& d) {
    return sector_divide(n, BalancedPoly(d));
  };
  CHECK(std::get<EPoly>(quotient(w(2) - c(1), w(1) - c(1))) == w(1) + c(1));

  // u (uv + 1) / (uv + 1) = u, all in charge sector 1
  const EPoly u = EPoly::monomial(1, 0, 1);
  CHECK(std::get<EPoly>(quotient(u * w(1) + u, w(1) + c(1))) == u);

  const auto r = quotient(w(1) + c(1), w(1) - c(1));
  REQUIRE(std::holds_alternative<NotDivisible>(r));
  CHECK(std::get<NotDivisible>(r).charge == 0);
  CHECK(std::get<NotDivisible>(r).remainder == c(2));

  CHECK_THROWS_AS(BalancedPoly{u}, std::invalid_argument);
}

TEST_CASE("sector_divide inverts multiplication") {
  oracle::Rng rng(13);
  for (int iter = 0; iter < 150; ++iter) {
    const std::int64_t d = oracle::uniform(rng, 1, 3);
    const EPoly a = oracle::random_epoly(rng, d, 8, 6, 100);
    const EPoly b = EPoly::w_power_minus_one(oracle::uniform(rng, 1, 6), d);
    const auto q = sector_divide(a * b, BalancedPoly(b));
    REQUIRE(std::holds_alternative<EPoly>(q));
    CHECK(std::get<EPoly>(q) == a);
  }
}

TEST_CASE("specialize") {
  CHECK(specialize(c(1) + w(1) + w(2), 3) == 13);
  CHECK(specialize(c(1), 17) == 1);
  // (uv)^{2/3} at q = 8 with s = 2
  CHECK(specialize(w(2, 3), 8, mpq_class(2)) == 4);
  CHECK_THROWS_AS(specialize(w(2, 3), 8), MissingRoot);
  CHECK_THROWS_AS(specialize(w(2, 3), 8, mpq_class(3)), InvalidRoot);
  // u alone needs sqrt(q)
  CHECK(specialize(EPoly::monomial(1, 0, 1), 9) == 3);
  CHECK_THROWS_AS(specialize(EPoly::monomial(1, 0, 1), 2), NonTateTerm);
}

TEST_CASE("specialize is multiplicative") {
  oracle::Rng rng(14);
  for (int iter = 0; iter < 100; ++iter) {
    const EPoly a = oracle::random_epoly(rng, 1, 5, 4, 50, true);
    const EPoly b = oracle::random_epoly(rng, 1, 5, 4, 50, true);
    for (int q : {2, 3, 5, 7}) CHECK(specialize(a * b, q) == specialize(a, q) * specialize(b, q));
  }
}

TEST_CASE("poincare_dual") {
  const EPoly p2 = c(1) + w(1) + w(2);
  CHECK(poincare_dual(p2, 2) == p2);
  CHECK(poincare_dual(c(1), 1) == w(1));
  CHECK(poincare_dual(w(2) - w(1), 2) == c(1) - w(1));
  CHECK_THROWS_AS(poincare_dual(w(3), 2), ExponentOverflow);

  oracle::Rng rng(15);
  for (int iter = 0; iter < 100; ++iter) {
    const std::int64_t d = oracle::uniform(rng, 1, 3);
    const std::int64_t n = oracle::uniform(rng, 0, 4);
    const EPoly f = oracle::random_epoly(rng, d, n * d, 6, 100);
    CHECK(poincare_dual(poincare_dual(f, n), n) == f);
  }
}

TEST_CASE("granularity and reduction") {
  CHECK(w(2, 3).granularity() == 3);
  CHECK(w(3, 3).granularity() == 1);
  CHECK((w(2, 6) + w(4, 6)).granularity() == 3);
  CHECK(w(2, 4).reduced().den() == 2);
}
