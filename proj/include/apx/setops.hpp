#pragma once

// Word balls X^{<=n} and the field construction Alg_n(X).
//
// X^{<=n} is the set of sums of products of elements of X in which the
// elements of X are used at most n times in total, with X^{<=0} = {0} by the
// empty-sum convention. The engine tracks monomial layers M(k) (values of
// k-letter products) and extends balls one letter-budget at a time, so a
// growth series reuses all previous levels.

#include <cstdint>
#include <vector>

#include "apx/element_set.hpp"

namespace apx {

class BallEngine {
 public:
  BallEngine(RingPtr ring, ElementSet X, std::uint64_t element_budget);

  // Extends to level n and returns X^{<=n}. Throws BudgetError (reporting
  // the level reached) if the element budget is exceeded.
  const ElementSet& ball(unsigned n);

  unsigned level() const { return static_cast<unsigned>(balls_.size()) - 1; }
  const std::vector<ElementSet>& balls() const { return balls_; }

 private:
  void extend();

  RingPtr ring_;
  ElementSet X_;
  std::uint64_t budget_;
  std::vector<ElementSet> monomials_;      // M(1..k); index 0 unused
  std::vector<ElementSet> balls_;          // B(0..k)
  std::vector<std::vector<Element>> fresh_;  // B(j) \ B(j-1)
};

ElementSet word_ball(const RingPtr& ring, const ElementSet& X, unsigned n,
                     std::uint64_t element_budget = 4'000'000);

// Alg_n over a finite field: P = products of <= n factors from X, S = sums
// of <= n terms from P, result = S together with all quotients a/b for
// a in S, b in S \ {0}. Throws DomainError naming a noninvertible nonzero
// element if the ring is not a field.
ElementSet alg_set(const RingPtr& field, const ElementSet& X, unsigned n);

}  // namespace apx
