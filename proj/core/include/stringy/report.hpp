#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "stringy/padic.hpp"
#include "stringy/scenario.hpp"
#include "stringy/stringy_e.hpp"

namespace stringy {

struct ResolutionSummary {
  std::string name;
  StringyE e_st;
  /// is_polynomial at the resolution's own denominator.
  PolynomialVerdict verdict;
  /// Present when E_st lies in Z[u, v].
  std::optional<StringyHodgeTable> hodge;

  /// "polynomial", "polynomial at granularity g only" or "not polynomial".
  std::string polynomiality() const;
  /// The quotient when polynomial, else the fraction.
  std::string e_st_string() const;
};

struct PairVerdict {
  std::size_t first = 0;
  std::size_t second = 0;
  Agreement agreement;
};

enum class CountSource { Catalog, Explicit, Strata };

struct PointCheck {
  std::size_t resolution = 0;
  mpz_class q;
  std::optional<mpq_class> root;
  CountSource source = CountSource::Strata;
  StringyPointCount n_st;
  /// E_st with (uv)^{1/d} = root; absent when E_st has non-Tate terms.
  std::optional<mpq_class> specialized;
  /// global_integral of the pulled-back gauge form; catalog counts only.
  std::optional<PAdicValue> padic;
  std::string note;

  bool specialized_matches() const { return !specialized || *specialized == n_st.count; }
  bool padic_matches() const;
};

struct QVerdict {
  mpz_class q;
  std::optional<mpq_class> root;
  bool counts_agree = true;
};

struct Report {
  std::string kind;
  std::string scenario;
  std::string input_hash;
  int dimension = 0;
  std::int64_t denominator = 1;
  std::vector<ResolutionSummary> resolutions;
  std::vector<PairVerdict> pairs;
  std::vector<PointCheck> points;
  std::vector<QVerdict> per_q;

  /// Every verdict and cross-check agrees.
  bool agree() const;
};

/// E_st, polynomiality and Hodge tables of each resolution.
Report run_compute(const Scenario& s);

/// Evaluation points for a verify run. Empty qs falls back to the
/// scenario's evaluate_at list, then to q = 2, 3, 5, 7. roots, when given,
/// run parallel to qs; missing roots are looked up in evaluate_at. Throws
/// MissingRoot or InvalidRoot when d > 1 and no valid root is known.
std::vector<EvaluationPoint> verification_points(const Scenario& s,
                                                 const std::vector<mpz_class>& qs,
                                                 const std::vector<mpq_class>& roots);

/// run_compute plus pairwise agreement, N_st at each point, the uv ↦ q
/// bridge and, for catalog counts, the p-adic cross-check.
Report run_verify(const Scenario& s, const std::vector<EvaluationPoint>& points);

/// {"generated_at": ..., "reports": [...]}; keys are sorted, so output is
/// byte-identical for identical inputs apart from the timestamp.
std::string render_json(const std::vector<Report>& reports, const std::string& generated_at);
std::string render_table(const Report& r);

/// Current UTC time as "YYYY-MM-DDThh:mm:ssZ".
std::string utc_timestamp();

}  // namespace stringy
