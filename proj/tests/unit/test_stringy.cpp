#include "doctest.h"

#include "oracles.hpp"
#include "stringy/count.hpp"
#include "stringy/errors.hpp"
#include "stringy/rational.hpp"
#include "stringy/stringy_e.hpp"

using namespace stringy;

namespace {

EPoly w(std::int64_t e, std::int64_t den = 1) { return EPoly::w_power(e, den); }
EPoly c(long x) { return EPoly::constant(x); }

EPoly polynomial_value(const StringyE& e) {
  const auto v = is_polynomial(e.value, e.value.den());
  REQUIRE(v.poly);
  return *v.poly;
}

/// Minimal resolution of the 1/3(1,1) surface point: E = P^1 with a = -1/3.
ResolutionData third_quotient_surface() {
  ResolutionData r;
  r.name = "O(-3)";
  r.dimension = 2;
  r.divisors = {{"E", mpq_class(-1, 3)}};
  r.strata = StratumTable(Flavor::Open, 1);
  r.strata.set(0, w(2) - c(1));
  r.strata.set(1, w(1) + c(1));
  return r;
}

ResolutionData a1_resolution() {
  ResolutionData r;
  r.name = "T*P1";
  r.dimension = 2;
  r.divisors = {{"E", 0}};
  r.strata = StratumTable(Flavor::Open, 1);
  r.strata.set(0, w(2) - c(1));
  r.strata.set(1, w(1) + c(1));
  return r;
}

}  // namespace

TEST_CASE("smooth blow-ups of affine space") {
  for (unsigned n = 2; n <= 6; ++n) {
    const StringyE e = stringy_E(blowup_strata(n).resolution);
    CHECK(polynomial_value(e) == w(n));
    CHECK(polynomial_value(stringy_E(affine_identity(n))) == w(n));
  }
}

TEST_CASE("crepant resolution gives the ordinary E-polynomial") {
  const StringyE e = stringy_E(a1_resolution());
  CHECK(e.value.is_polynomial_form());
  CHECK(polynomial_value(e) == w(2) + w(1));
  const StringyHodgeTable h = stringy_hodge_numbers(e);
  CHECK_FALSE(h.has_negative);
  CHECK(h.at(2, 2) == 1);
  CHECK(h.at(1, 1) == 1);
  CHECK(h.at(0, 0) == 0);
}

TEST_CASE("fractional discrepancy") {
  const StringyE e = stringy_E(third_quotient_surface());
  CHECK(e.context_den == 3);
  CHECK(polynomial_value(e) == w(2, 3) + w(4, 3) + w(2));
  try {
    stringy_hodge_numbers(e);
    FAIL("expected NotPolynomial");
  } catch (const NotPolynomial& ex) {
    CHECK(ex.finest_granularity() == 3);
  }
  const auto t = oracle::stringy_univariate(third_quotient_surface(), 3);
  REQUIRE(t);
  CHECK(*t == oracle::UPoly{0, 0, 1, 0, 1, 0, 1});
}

TEST_CASE("random point blow-ups leave E_st unchanged") {
  oracle::Rng rng(41);
  int checked = 0;
  for (int iter = 0; iter < 60; ++iter) {
    const unsigned n = static_cast<unsigned>(oracle::uniform(rng, 2, 4));
    ResolutionData r0 = oracle::uniform(rng, 0, 1) ? affine_identity(n) : blowup_strata(n).resolution;
    if (oracle::uniform(rng, 0, 2) == 0) {
      r0 = third_quotient_surface();
    }
    ResolutionData r = r0;
    const StringyE base = stringy_E(r0);
    const int steps = static_cast<int>(oracle::uniform(rng, 1, 3));
    for (int s = 0; s < steps; ++s) {
      const auto center = oracle::random_center(rng, to_open(r));
      if (!center) break;
      r = oracle::blow_up_point(r, *center);
    }
    const Agreement a = resolutions_agree(r0, r);
    CHECK(a.equal);
    CHECK(stringy_E(r).value == base.value);
    const auto d = context_denominator(r);
    const auto lhs = oracle::stringy_univariate(to_open(r), d);
    if (lhs) {
      CHECK(*lhs == *oracle::as_t_poly(*is_polynomial(base.value, base.value.den()).poly, d));
      ++checked;
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("resolutions_agree reports a difference") {
  const Agreement same = resolutions_agree(blowup_strata(2).resolution, affine_identity(2));
  CHECK(same.equal);
  const Agreement diff = resolutions_agree(a1_resolution(), affine_identity(2));
  CHECK_FALSE(diff.equal);
  REQUIRE(diff.first_difference);
  CHECK(diff.first_difference->u == diff.first_difference->v);
  CHECK_THROWS_AS(resolutions_agree(affine_identity(2), affine_identity(3)), DimensionMismatch);
}

TEST_CASE("stringy point counts") {
  for (unsigned n = 2; n <= 4; ++n) {
    const BlowupData b = blowup_strata(n);
    for (long q : {2, 3, 5, 7}) {
      std::map<SubsetMask, mpz_class> counts;
      for (const auto& [j, p] : b.counts) counts[j] = p(q);
      const StringyPointCount n_st = stringy_point_count(b.resolution, counts, q);
      CHECK(n_st.count == pow_integer(mpz_class(q), n));
      CHECK(n_st.integral == 1);
    }
  }
  const BlowupData b = blowup_strata(2);
  CHECK_THROWS_AS(stringy_point_count(b.resolution, {{0, 8}}, 3), MissingCount);

  const ResolutionData tq = third_quotient_surface();
  const std::map<SubsetMask, mpz_class> counts{{0, 64 * 64 - 1}, {1, 65}};
  CHECK_THROWS_AS(stringy_point_count(tq, counts, 64), MissingRoot);
  const StringyPointCount v = stringy_point_count(tq, counts, 64, mpq_class(4));
  CHECK(v.count == 16 + 256 + 4096);
}
