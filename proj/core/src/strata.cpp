#include "stringy/strata.hpp"

#include <set>
#include <stdexcept>

#include "stringy/errors.hpp"
#include "stringy/rational.hpp"

namespace stringy {

namespace {

SubsetMask full_mask(std::size_t width) {
  return width == 0 ? 0 : (SubsetMask{1} << width) - 1;
}

/// Superset-sum transform restricted to the support of t; sign = -1 gives
/// the Möbius inverse.
StratumTable superset_transform(const StratumTable& t, Flavor result, int sign) {
  StratumTable out(result, t.width());
  for (const auto& [super, e] : t.entries()) {
    const int super_size = subset_size(super);
    // Walk all subsets of super, including super itself and the empty set.
    SubsetMask sub = super;
    while (true) {
      const bool negate = sign < 0 && (super_size - subset_size(sub)) % 2 == 1;
      out.add(sub, negate ? -e : e);
      if (sub == 0) break;
      sub = (sub - 1) & super;
    }
  }
  return out;
}

}  // namespace

StratumTable::StratumTable(Flavor flavor, std::size_t width)
    : flavor_(flavor), width_(width) {
  if (width > kMaxDivisors) {
    throw ValidationError("at most " + std::to_string(kMaxDivisors) +
                          " divisors are supported, got " + std::to_string(width));
  }
}

EPoly StratumTable::at(SubsetMask j) const {
  auto it = entries_.find(j);
  return it == entries_.end() ? EPoly() : it->second;
}

void StratumTable::set(SubsetMask j, EPoly p) {
  if (p.is_zero()) {
    entries_.erase(j);
  } else {
    entries_.insert_or_assign(j, std::move(p));
  }
}

void StratumTable::add(SubsetMask j, const EPoly& p) {
  if (p.is_zero()) return;
  auto it = entries_.find(j);
  if (it == entries_.end()) {
    entries_.emplace(j, p);
    return;
  }
  it->second += p;
  if (it->second.is_zero()) entries_.erase(it);
}

bool operator==(const StratumTable& a, const StratumTable& b) {
  return a.flavor_ == b.flavor_ && a.width_ == b.width_ && a.entries_ == b.entries_;
}

void validate_resolution(const ResolutionData& r) {
  if (r.dimension < 0) throw ValidationError(r.name + ": negative dimension");
  if (r.divisors.size() > kMaxDivisors) {
    throw ValidationError(r.name + ": too many divisors");
  }
  if (r.strata.width() != r.divisors.size()) {
    throw ValidationError(r.name + ": stratum table width " +
                          std::to_string(r.strata.width()) + " != " +
                          std::to_string(r.divisors.size()) + " divisors");
  }
  std::set<std::string> labels;
  for (std::size_t i = 0; i < r.divisors.size(); ++i) {
    const auto& d = r.divisors[i];
    if (!labels.insert(d.label).second) {
      throw ValidationError(r.name + ": duplicate divisor label '" + d.label + "'");
    }
    if (d.discrepancy <= -1) {
      throw NotLogTerminal(i, r.name + ": divisor '" + d.label + "' has discrepancy " +
                                  format_rational(d.discrepancy) +
                                  " <= -1 (not log-terminal)");
    }
  }
  const SubsetMask allowed = full_mask(r.divisors.size());
  for (const auto& [j, e] : r.strata.entries()) {
    if ((j & ~allowed) != 0) {
      throw ValidationError(r.name + ": stratum mask " + std::to_string(j) +
                            " refers to unknown divisors");
    }
  }
  if (r.strata.flavor() != Flavor::Closed) return;

  for (const auto& [super, e] : r.strata.entries()) {
    const std::int64_t box = (r.dimension - subset_size(super)) * e.den();
    if (e.max_exponent() > box) {
      throw ValidationError(r.name + ": E(D_J) for J = " + subset_name(super, r.divisors) +
                            " is not supported in degree " +
                            std::to_string(r.dimension - subset_size(super)));
    }
    if (super == 0) continue;
    SubsetMask sub = (super - 1) & super;
    while (true) {
      if (!r.strata.contains(sub)) {
        throw InconsistentSupport(
            sub, super,
            r.name + ": E(D_J) vanishes for J = " + subset_name(sub, r.divisors) +
                " but not for its superset " + subset_name(super, r.divisors));
      }
      if (sub == 0) break;
      sub = (sub - 1) & super;
    }
  }
}

StratumTable open_from_closed(const StratumTable& t) {
  if (t.flavor() != Flavor::Closed) {
    throw WrongFlavor("open_from_closed expects a closed table");
  }
  return superset_transform(t, Flavor::Open, -1);
}

StratumTable closed_from_open(const StratumTable& t) {
  if (t.flavor() != Flavor::Open) {
    throw WrongFlavor("closed_from_open expects an open table");
  }
  return superset_transform(t, Flavor::Closed, +1);
}

EPoly complement_E(const StratumTable& t) {
  if (t.flavor() != Flavor::Closed) {
    throw WrongFlavor("complement_E expects a closed table");
  }
  if (!t.contains(0)) {
    throw MissingAmbient("complement_E needs the ambient entry E(D_∅)");
  }
  EPoly total;
  for (const auto& [j, e] : t.entries()) {
    if (subset_size(j) % 2 == 0) {
      total += e;
    } else {
      total -= e;
    }
  }
  return total;
}

ResolutionData to_open(ResolutionData r) {
  if (r.strata.flavor() == Flavor::Closed) r.strata = open_from_closed(r.strata);
  return r;
}

std::int64_t context_denominator(const ResolutionData& r) {
  std::int64_t d = 1;
  for (const auto& div : r.divisors) d = lcm64(d, denominator64(div.discrepancy));
  for (const auto& [j, e] : r.strata.entries()) d = lcm64(d, e.den());
  return d;
}

std::string subset_name(SubsetMask j, const std::vector<Divisor>& divisors) {
  std::string out = "{";
  bool first = true;
  for (std::size_t k = 0; k < divisors.size() && k < 64; ++k) {
    if ((j >> k) & 1u) {
      if (!first) out += ",";
      first = false;
      out += divisors[k].label;
    }
  }
  return out + "}";
}

}  // namespace stringy
