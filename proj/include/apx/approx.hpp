#pragma once

// Certification of approximate-subring constants, commensurability,
// N-thickness, the explicit classical bound suite, and the zero-divisor
// dichotomy report.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "apx/cover.hpp"
#include "apx/element_set.hpp"

namespace apx {

struct ApproxReport {
  CoverCertificate k_min;   // cover of (X+X) u X*X by translates of X
  mpq_class growth_ratio;   // |X+X+X*X| / |X|, exact

  std::uint64_t K() const { return k_min.K(); }
};

ApproxReport approx_constant(const ElementSet& X,
                             CoverMode mode = CoverMode::Greedy,
                             std::uint64_t node_budget = 1'000'000);

struct Commensurability {
  CoverCertificate x_by_y;  // X covered by translates of Y
  CoverCertificate y_by_x;  // Y covered by translates of X
};

Commensurability commensurability(const ElementSet& X, const ElementSet& Y,
                                  CoverMode mode = CoverMode::Greedy,
                                  std::uint64_t node_budget = 1'000'000);

// N-thickness of D in Y: minimal N such that any N elements of Y contain a
// pair with difference in D; computed as 1 + (maximum D-free subset size).
struct ThicknessResult {
  std::uint64_t N = 0;        // exact, or the upper end of the bracket
  std::uint64_t N_lower = 0;  // greedy bracket lower end (equal when exact)
  bool exact = false;
  std::vector<Element> witness;  // a maximum (or best-found) D-free subset
};

enum class ThicknessMode { Exact, Greedy };

ThicknessResult thickness(const ElementSet& D, const ElementSet& Y,
                          ThicknessMode mode = ThicknessMode::Exact,
                          std::uint64_t node_budget = 1'000'000);

// ---------------------------------------------------------------------------
// Classical bound suite. Each check measures its hypothesis constant from
// the set itself, then certifies the conclusion within the explicit bound.
// A bound can pass or come back inconclusive (budget); the statements are
// theorems, so a reproducible "fail" is a bug in this code.

enum class BoundStatus { Pass, Fail, Inconclusive };

struct BoundCheck {
  std::string name;
  std::uint64_t measured_k = 0;
  std::string bound;     // decimal text of the claimed constant
  std::string achieved;  // what the certificate/cardinality achieved
  BoundStatus status = BoundStatus::Inconclusive;
  std::string detail;
};

struct BoundSuiteReport {
  std::vector<BoundCheck> checks;
  bool all_pass() const {
    for (const auto& c : checks)
      if (c.status != BoundStatus::Pass) return false;
    return true;
  }
};

// H, when given, must be a verified subring (for the (4X + X*4X) n H check).
BoundSuiteReport bound_suite(const ElementSet& X,
                             const ElementSet* H = nullptr,
                             std::uint64_t node_budget = 1'000'000);

// ---------------------------------------------------------------------------
// Zero-divisor dichotomy on Y = 4X + X*4X.

struct DichotomyReport {
  ElementSet Y;
  bool is_subring = false;
  std::string subring_violation;
  ElementSet zero_divisors;           // inside <X>
  std::optional<ThicknessResult> thickness_in_Y;  // of zdiv u -zdiv u {0}
  mpq_class growth_ratio;             // |X+X+X*X| / |X|
};

DichotomyReport dichotomy_report(const ElementSet& X,
                                 ThicknessMode mode = ThicknessMode::Exact,
                                 std::uint64_t node_budget = 1'000'000);

}  // namespace apx
