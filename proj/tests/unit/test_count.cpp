#include "doctest.h"

#include "stringy/count.hpp"
#include "stringy/errors.hpp"
#include "stringy/stringy_e.hpp"

using namespace stringy;

TEST_CASE("count polynomials") {
  CHECK(CountScheme::projective(2).count() == CountPoly::geometric(2));
  CHECK(count_points(CountScheme::projective(2), 2) == 7);
  CHECK(count_points(CountScheme::projective(2), 3) == 13);
  CHECK(count_points(CountScheme::torus(2), 5) == 16);
  CHECK(CountScheme::blowup_origin_affine(2).count() == CountPoly({0, 1, 1}));
  CHECK(count_points(CountScheme::blowup_origin_affine(2), 3) == 12);
  CHECK(count_points(CountScheme::projective(1), 2) == 3);
  for (long q : {2, 3, 11}) CHECK(count_points(CountScheme::point(), q) == 1);
  CHECK(count_points(CountScheme::product(CountScheme::affine(1), CountScheme::torus(1)), 3) == 6);
  CHECK(CountScheme::projective(2).count().to_string() == "q^2 + q + 1");
  CHECK_THROWS_AS(CountScheme::complement(CountScheme::affine(1), CountScheme::affine(2)), NegativeCount);
}

TEST_CASE("brute force examples") {
  CHECK(brute_force_count(CountScheme::projective(2), 3) == 13);
  CHECK(brute_force_count(CountScheme::blowup_origin_affine(2), 2) == 6);
  CHECK(brute_force_count(CountScheme::torus(1), 5) == 4);
  CHECK_THROWS_AS(brute_force_count(CountScheme::affine(1), 17), FieldTooLarge);
  CHECK_THROWS_AS(brute_force_count(CountScheme::affine(1), 4), InvalidField);
  CHECK_THROWS_AS(
      brute_force_count(CountScheme::complement(CountScheme::affine(2), CountScheme::projective(1)), 3),
      Unenumerable);
}

TEST_CASE("brute force agrees with the count polynomial on the catalog") {
  for (const auto& s : catalog()) {
    for (unsigned q : {2u, 3u, 5u, 7u}) {
      if (count_points(s, q) > 2000000) continue;
      INFO(s.to_string(), " q=", q);
      CHECK(brute_force_count(s, q) == count_points(s, q));
    }
  }
}

TEST_CASE("Tate bridge and multiplicativity") {
  const auto cat = catalog();
  for (const auto& s : cat) {
    for (long q : {2, 3, 5, 7}) CHECK(specialize(e_polynomial_of(s), q) == count_points(s, q));
  }
  for (const auto& a : cat) {
    for (const auto& b : cat) {
      CHECK(e_polynomial_of(CountScheme::product(a, b)) == e_polynomial_of(a) * e_polynomial_of(b));
    }
  }
  CHECK(e_polynomial_of(CountScheme::projective(2)) ==
        EPoly::from_w_coefficients({1, 1, 1}));
  CHECK(poincare_dual(e_polynomial_of(CountScheme::projective(2)), 2) ==
        e_polynomial_of(CountScheme::projective(2)));
  CHECK(e_polynomial_of(CountScheme::torus(2)) == EPoly::w_power_minus_one(1).pow(2));
  CHECK(e_polynomial_of(CountScheme::point()) == EPoly::constant(1));
}

TEST_CASE("parse_scheme round-trips") {
  for (const auto& s : catalog()) {
    const CountScheme t = parse_scheme(s.to_string());
    CHECK(t.to_string() == s.to_string());
    CHECK(t.count() == s.count());
  }
  CHECK(parse_scheme(" product( affine(1) , torus(1) ) ").count() ==
        CountScheme::product(CountScheme::affine(1), CountScheme::torus(1)).count());
  CHECK_THROWS_AS(parse_scheme("affine("), ParseError);
  CHECK_THROWS_AS(parse_scheme("sphere(2)"), ParseError);
  CHECK_THROWS_AS(parse_scheme("affine(1) trailing"), ParseError);
}

TEST_CASE("blow-up strata partition the blow-up") {
  for (unsigned n = 2; n <= 6; ++n) {
    const BlowupData b = blowup_strata(n);
    CHECK(b.resolution.divisors.size() == 1);
    CHECK(b.resolution.divisors[0].discrepancy == n - 1);
    CountPoly total;
    for (const auto& [j, p] : b.counts) total = total + p;
    CHECK(total == CountScheme::blowup_origin_affine(n).count());
    for (const auto& [j, p] : b.counts) CHECK(p.to_epoly() == b.resolution.strata.at(j));
  }
  const BlowupData b = blowup_strata(2);
  std::map<SubsetMask, mpz_class> counts;
  for (const auto& [j, p] : b.counts) counts[j] = p(7);
  CHECK(stringy_point_count(b.resolution, counts, 7).count == 49);
}
