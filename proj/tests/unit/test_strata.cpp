#include "doctest.h"

#include "oracles.hpp"
#include "stringy/errors.hpp"
#include "stringy/strata.hpp"

using namespace stringy;

namespace {

EPoly w(std::int64_t e) { return EPoly::w_power(e); }
EPoly c(long x) { return EPoly::constant(x); }

/// Bl_p(P^2) with E the exceptional curve, as a closed table.
ResolutionData blown_up_plane() {
  ResolutionData r;
  r.name = "Bl_p P2";
  r.dimension = 2;
  r.divisors = {{"E", 1}};
  r.strata = StratumTable(Flavor::Closed, 1);
  r.strata.set(0, w(2) + c(2) * w(1) + c(1));
  r.strata.set(1, w(1) + c(1));
  return r;
}

}  // namespace

TEST_CASE("open and closed tables of Bl_p P2") {
  const ResolutionData r = blown_up_plane();
  CHECK_NOTHROW(validate_resolution(r));
  const StratumTable open = open_from_closed(r.strata);
  CHECK(open.flavor() == Flavor::Open);
  CHECK(open.at(0) == w(2) + w(1));
  CHECK(open.at(1) == w(1) + c(1));
  CHECK(closed_from_open(open) == r.strata);
  CHECK(complement_E(r.strata) == w(2) + w(1));
  CHECK(to_open(r).strata == open);
}

TEST_CASE("validation rejects bad input") {
  ResolutionData r = blown_up_plane();
  r.divisors[0].discrepancy = -1;
  try {
    validate_resolution(r);
    FAIL("expected NotLogTerminal");
  } catch (const NotLogTerminal& e) {
    CHECK(e.index() == 0);
  }

  r = blown_up_plane();
  r.strata.set(0, EPoly());
  try {
    validate_resolution(r);
    FAIL("expected InconsistentSupport");
  } catch (const InconsistentSupport& e) {
    CHECK(e.subset() == 0);
    CHECK(e.superset() == 1);
  }

  r = blown_up_plane();
  r.strata.set(1, w(2));
  CHECK_THROWS_AS(validate_resolution(r), ValidationError);

  r = blown_up_plane();
  r.divisors.push_back({"E", 2});
  CHECK_THROWS_AS(validate_resolution(r), ValidationError);

  // a = -1/2 is log-terminal
  r = blown_up_plane();
  r.divisors[0].discrepancy = mpq_class(-1, 2);
  CHECK_NOTHROW(validate_resolution(r));
}

TEST_CASE("flavor guards") {
  const StratumTable open(Flavor::Open, 1);
  CHECK_THROWS_AS(open_from_closed(open), WrongFlavor);
  CHECK_THROWS_AS(complement_E(open), WrongFlavor);
  CHECK_THROWS_AS(closed_from_open(StratumTable(Flavor::Closed, 1)), WrongFlavor);
  StratumTable no_ambient(Flavor::Closed, 1);
  no_ambient.set(1, c(1));
  CHECK_THROWS_AS(complement_E(no_ambient), MissingAmbient);
}

TEST_CASE("transforms match the full-lattice oracle") {
  oracle::Rng rng(31);
  for (int iter = 0; iter < 100; ++iter) {
    const auto width = static_cast<std::size_t>(oracle::uniform(rng, 0, 7));
    const StratumTable open = oracle::random_table(rng, Flavor::Open, width, 12);
    const StratumTable closed = oracle::random_table(rng, Flavor::Closed, width, 12);
    CHECK(closed_from_open(open) == oracle::brute_transform(open, Flavor::Closed, false));
    CHECK(open_from_closed(closed) == oracle::brute_transform(closed, Flavor::Open, true));
    CHECK(closed_from_open(open_from_closed(closed)) == closed);
  }
}

TEST_CASE("complement equals the open stratum of the empty set") {
  oracle::Rng rng(32);
  for (int iter = 0; iter < 100; ++iter) {
    const auto width = static_cast<std::size_t>(oracle::uniform(rng, 0, 6));
    StratumTable closed = oracle::random_table(rng, Flavor::Closed, width, 10);
    closed.add(0, c(1));
    if (closed.contains(0)) CHECK(complement_E(closed) == open_from_closed(closed).at(0));
  }
}

TEST_CASE("additivity: the open strata sum to the ambient") {
  oracle::Rng rng(33);
  for (int iter = 0; iter < 100; ++iter) {
    const auto width = static_cast<std::size_t>(oracle::uniform(rng, 0, 6));
    const StratumTable open = oracle::random_table(rng, Flavor::Open, width, 10);
    EPoly total;
    for (const auto& [j, e] : open.entries()) total += e;
    CHECK(closed_from_open(open).at(0) == total);
  }
}

TEST_CASE("context denominator and names") {
  ResolutionData r = blown_up_plane();
  CHECK(context_denominator(r) == 1);
  r.divisors[0].discrepancy = mpq_class(-1, 3);
  CHECK(context_denominator(r) == 3);
  r.strata.set(1, EPoly::w_power(1, 2));
  CHECK(context_denominator(r) == 6);
  const std::vector<Divisor> ds{{"E1", 0}, {"E2", 0}};
  CHECK(subset_name(0, ds) == "{}");
  CHECK(subset_name(3, ds) == "{E1,E2}");
}
