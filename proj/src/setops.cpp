#include "apx/setops.hpp"

#include <algorithm>
#include <unordered_map>

namespace apx {

BallEngine::BallEngine(RingPtr ring, ElementSet X,
                       std::uint64_t element_budget)
    : ring_(std::move(ring)), X_(std::move(X)), budget_(element_budget) {
  ElementSet b0(ring_);
  b0.insert_unchecked(ring_->zero());
  balls_.push_back(b0);
  fresh_.push_back(b0.to_vector());
  monomials_.emplace_back(ring_);  // index 0 placeholder
}

const ElementSet& BallEngine::ball(unsigned n) {
  while (balls_.size() <= n) extend();
  return balls_[n];
}

void BallEngine::extend() {
  unsigned n = static_cast<unsigned>(balls_.size());  // extending to level n

  // Monomial layer M(n): values of products using exactly n letters.
  ElementSet Mn(ring_);
  if (n == 1) {
    Mn = X_;
  } else {
    for (unsigned i = 1; i < n; ++i)
      Mn = Mn.unioned(productset(monomials_[i], monomials_[n - i]));
  }
  monomials_.push_back(Mn);

  // B(n) = B(n-1) union of fresh(n-k) + M(k) over k = 1..n, where fresh(j)
  // holds the elements whose minimal letter weight is exactly j. If the sum
  // part of a representation were expressible with fewer letters, the whole
  // element would already sit in an earlier ball.
  ElementSet next = balls_[n - 1];
  const Ring& ring = *ring_;
  std::vector<Element> fresh_now;
  auto add = [&](const Element& e) {
    if (!next.contains(e)) {
      next.insert_unchecked(e);
      fresh_now.push_back(e);
    }
  };
  for (unsigned k = 1; k <= n; ++k) {
    const std::vector<Element>& base_fresh = fresh_[n - k];
    monomials_[k].for_each([&](const Element& m) {
      for (const Element& s : base_fresh) add(ring.add(s, m));
    });
  }
  if (next.size() > budget_)
    throw BudgetError("word_ball: element budget exceeded at level " +
                      std::to_string(n));
  std::sort(fresh_now.begin(), fresh_now.end());
  balls_.push_back(std::move(next));
  fresh_.push_back(std::move(fresh_now));
}

ElementSet word_ball(const RingPtr& ring, const ElementSet& X, unsigned n,
                     std::uint64_t element_budget) {
  if (X.ring().get() != ring.get())
    throw DomainError("word_ball: ring mismatch");
  BallEngine engine(ring, X, element_budget);
  return engine.ball(n);
}

// ---------------------------------------------------------------------------
// Alg_n(X) in a finite field

namespace {

Element field_identity(const Ring& ring) {
  if (!ring.is_finite()) throw DomainError("alg_set: ring must be finite");
  std::uint64_t n = ring.size();
  for (std::uint64_t i = 0; i < n; ++i) {
    Element e = ring.element_at(i);
    bool ident = true;
    for (std::uint64_t j = 0; j < n && ident; ++j) {
      Element x = ring.element_at(j);
      if (!(ring.mul(e, x) == x) || !(ring.mul(x, e) == x)) ident = false;
    }
    if (ident) return e;
  }
  throw DomainError("alg_set: ring has no multiplicative identity");
}

}  // namespace

ElementSet alg_set(const RingPtr& field, const ElementSet& X, unsigned n) {
  if (n == 0) throw DomainError("alg_set: n must be >= 1");
  if (X.ring().get() != field.get())
    throw DomainError("alg_set: ring mismatch");
  const Ring& ring = *field;
  Element one = field_identity(ring);
  Element zero = ring.zero();
  std::uint64_t sz = ring.size();
  std::unordered_map<Element, Element, ElementHash> inverse;
  for (std::uint64_t i = 0; i < sz; ++i) {
    Element a = ring.element_at(i);
    if (a == zero) continue;
    bool found = false;
    for (std::uint64_t j = 0; j < sz; ++j) {
      Element b = ring.element_at(j);
      if (ring.mul(a, b) == one && ring.mul(b, a) == one) {
        inverse.emplace(a, b);
        found = true;
        break;
      }
    }
    if (!found)
      throw DomainError(
          "alg_set: not a field; noninvertible nonzero element " +
          ring.encode(a));
  }

  // P: products of at most n factors from X.
  ElementSet P = X;
  ElementSet layer = X;
  for (unsigned k = 2; k <= n; ++k) {
    layer = productset(layer, X);
    P = P.unioned(layer);
  }
  // S: sums of at most n terms from P.
  ElementSet S = P;
  ElementSet slayer = P;
  for (unsigned k = 2; k <= n; ++k) {
    slayer = sumset(slayer, P);
    S = S.unioned(slayer);
  }
  // Quotients a * b^{-1} over S, plus S itself.
  ElementSet R = S;
  std::vector<Element> sv = S.to_vector();
  for (const Element& a : sv)
    for (const Element& b : sv) {
      if (b == zero) continue;
      R.insert_unchecked(ring.mul(a, inverse.at(b)));
    }
  return R;
}

}  // namespace apx
