#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "stringy/epoly.hpp"

namespace stringy {

/// Bit k set means divisor k belongs to the subset J.
using SubsetMask = std::uint64_t;

inline constexpr std::size_t kMaxDivisors = 62;

enum class Flavor {
  /// Entries are E(D_J°): points lying on exactly the divisors in J.
  Open,
  /// Entries are E(D_J): the full intersection, D_∅ being the ambient.
  Closed,
};

struct Divisor {
  std::string label;
  /// Coefficient of the divisor in K_Y - ρ*K_X.
  mpq_class discrepancy;
};

/// Map J -> E-polynomial over the boolean lattice of divisor subsets.
/// A missing entry is an empty stratum.
class StratumTable {
 public:
  StratumTable() = default;
  StratumTable(Flavor flavor, std::size_t width);

  Flavor flavor() const noexcept { return flavor_; }
  std::size_t width() const noexcept { return width_; }
  const std::map<SubsetMask, EPoly>& entries() const noexcept { return entries_; }

  /// Zero polynomial when absent.
  EPoly at(SubsetMask j) const;
  bool contains(SubsetMask j) const { return entries_.count(j) != 0; }
  /// Stores p at J; a zero p erases the entry.
  void set(SubsetMask j, EPoly p);
  void add(SubsetMask j, const EPoly& p);

  friend bool operator==(const StratumTable& a, const StratumTable& b);

 private:
  Flavor flavor_ = Flavor::Open;
  std::size_t width_ = 0;
  std::map<SubsetMask, EPoly> entries_;
};

struct ResolutionData {
  std::string name;
  int dimension = 0;
  std::vector<Divisor> divisors;
  StratumTable strata;
};

/// Throws NotLogTerminal, InconsistentSupport or ValidationError.
void validate_resolution(const ResolutionData& r);

/// E(D_J°) = sum_{J' ⊇ J} (-1)^{|J' \ J|} E(D_{J'}).
StratumTable open_from_closed(const StratumTable& t);
/// E(D_J) = sum_{J' ⊇ J} E(D_{J'}°).
StratumTable closed_from_open(const StratumTable& t);

/// E of the complement of all divisors: sum_J (-1)^{|J|} E(D_J).
EPoly complement_E(const StratumTable& t);

/// Copy of r with an open-flavored stratum table.
ResolutionData to_open(ResolutionData r);

/// lcm of all discrepancy denominators and stratum denominators.
std::int64_t context_denominator(const ResolutionData& r);

/// "{E1,E2}" using divisor labels, "{}" for the empty set.
std::string subset_name(SubsetMask j, const std::vector<Divisor>& divisors);

inline int subset_size(SubsetMask j) { return std::popcount(j); }

}  // namespace stringy
