#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "stringy/count.hpp"
#include "stringy/strata.hpp"

namespace stringy {

/// How |D_J°(F_q)| is obtained for one stratum.
struct CountSpec {
  /// Catalog expression; its polynomial is used.
  std::optional<CountScheme> scheme;
  /// Explicit polynomial in q.
  std::optional<CountPoly> poly;
  /// Explicit per-q integers.
  std::map<mpz_class, mpz_class> values;

  bool from_catalog() const { return scheme.has_value(); }
  /// Throws MissingCount(0, ...) when no value is available at q.
  mpz_class at(const mpz_class& q) const;
};

using CountTable = std::map<SubsetMask, CountSpec>;

struct EvaluationPoint {
  mpz_class q;
  std::optional<mpq_class> root;
};

struct Scenario {
  std::string name;
  int dimension = 0;
  /// lcm of every discrepancy and stratum denominator, or the declared
  /// value (which must be a multiple of it).
  std::int64_t denominator = 1;
  bool denominator_declared = false;
  /// Strata normalized to open flavor.
  std::vector<ResolutionData> resolutions;
  /// Parallel to resolutions; nullopt when counts are to be read off the
  /// strata.
  std::vector<std::optional<CountTable>> counts;
  std::vector<EvaluationPoint> evaluate_at;
  /// SHA-256 of the bytes the scenario was parsed from.
  std::string input_hash;
};

/// Throws ParseError for malformed JSON or schema violations and forwards
/// ValidationError (including NotLogTerminal) from the strata checks.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);

/// JSON text of the normalized (open-flavored) scenario; parse_scenario of
/// the result reproduces it.
std::string save_scenario(const Scenario& s);

/// Lower-case hex SHA-256.
std::string sha256_hex(std::string_view bytes);

}  // namespace stringy
