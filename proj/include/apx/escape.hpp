#pragma once

// The escape norm ||r||_X = inf{ 1/(nu+1) : i*r in X for i = 0..nu } and the
// strong-norm checker for its three inequalities:
//   (1) ||x+y|| <= 4 max(||x||, ||y||)        on <Z> x <Z>
//   (2) ||xy||  <= 2 ||x|| ||y||              for x, y in Z
//   (3) ||x|| = 0 or ||y|| = 0  =>  ||xy|| = 0
// The theorems guarantee these only for specially constructed sets, so for
// arbitrary input the checker is a measurement tool: counterexamples are
// reported, not treated as failures.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "apx/element_set.hpp"

namespace apx {

struct NormValue {
  mpq_class value;             // 0 or 1/(nu+1)
  std::optional<mpz_class> nu;  // attained nu; nullopt means "infinite" (norm 0)

  bool is_zero() const { return value == 0; }
};

// Scans i*r for i = 0,1,2,... up to the additive order of r. Requires
// 0 in X. Infinite additive order without a truncation is an error.
NormValue escape_norm(const ElementSet& X, const Element& r);

struct NormZeroReport {
  ElementSet zero_set;   // { r in <X> : ||r||_X = 0 }
  ElementSet closure;    // <X>
  bool is_ideal = false;  // whether zero_set is an ideal of <X>
  std::string ideal_violation;
};

NormZeroReport norm_zero_set(const ElementSet& X);

struct NormCounterexample {
  Element x, y;
  mpq_class norm_x, norm_y, norm_result;
};

struct StrongNormReport {
  bool sum_ok = true;        // property (1)
  bool product_ok = true;    // property (2)
  bool zero_ok = true;       // property (3)
  std::vector<NormCounterexample> sum_violations;
  std::vector<NormCounterexample> product_violations;
  std::vector<NormCounterexample> zero_violations;
  bool exhaustive = true;
  std::uint64_t pairs_checked = 0;
};

// Exhaustive pair scan when |<Z>| <= exhaustive_limit, seeded sampling
// otherwise. Violation lists are capped at 64 entries per property.
StrongNormReport strong_norm_check(const ElementSet& Z,
                                   std::uint64_t sample_budget = 200'000,
                                   std::size_t exhaustive_limit = 512);

}  // namespace apx
