#include "apx/element_set.hpp"

#include <algorithm>

namespace apx {

static constexpr std::uint64_t kDenseLimit = 1u << 20;

bool Truncation::accepts(const Ring& ring, const Element& e) const {
  switch (ring.kind()) {
    case Ring::Kind::Integers: {
      mpz_class a = abs(e.integer());
      return a <= bound;
    }
    case Ring::Kind::Quadfield: {
      mpz_class a = abs(e.quad().a), b = abs(e.quad().b);
      return a <= bound && b <= bound;
    }
    case Ring::Kind::Matrix:
    case Ring::Kind::Product: {
      // Componentwise on the integer payloads at the leaves.
      for (const Element& x : e.list()) {
        Element leaf(nullptr, x.payload());
        if (std::holds_alternative<mpz_class>(x.payload())) {
          mpz_class a = abs(x.integer());
          if (a > bound) return false;
        } else if (std::holds_alternative<Element::Quad>(x.payload())) {
          mpz_class a = abs(x.quad().a), b = abs(x.quad().b);
          if (a > bound || b > bound) return false;
        } else if (std::holds_alternative<Element::List>(x.payload())) {
          if (!accepts(ring, x)) return false;  // nested lists share layout
        }
      }
      return true;
    }
    default:
      return true;  // finite rings need no truncation
  }
}

ElementSet::ElementSet(RingPtr ring) : ring_(std::move(ring)) {
  if (!ring_) throw DomainError("ElementSet: null ring");
  dense_ = ring_->is_finite() && ring_->size() <= kDenseLimit;
  if (dense_) bits_.assign((ring_->size() + 63) / 64, 0);
}

ElementSet ElementSet::of(RingPtr ring, const std::vector<Element>& elems) {
  ElementSet s(std::move(ring));
  for (const Element& e : elems) s.insert(e);
  return s;
}

ElementSet ElementSet::parse(RingPtr ring,
                             const std::vector<std::string>& encodings) {
  ElementSet s(ring);
  for (const std::string& t : encodings) s.insert(ring->parse(t));
  return s;
}

bool ElementSet::contains(const Element& e) const {
  if (dense_) return bit(ring_->index_of(e));
  return elems_.count(e) > 0;
}

void ElementSet::insert(const Element& e) {
  ring_->check_member(e, "ElementSet::insert");
  insert_unchecked(e);
}

void ElementSet::insert_unchecked(const Element& e) {
  if (dense_) {
    set_bit(ring_->index_of(e));
  } else {
    if (elems_.insert(e).second) ++count_;
  }
}

void ElementSet::for_each(const std::function<void(const Element&)>& fn) const {
  if (dense_) {
    for (std::uint64_t w = 0; w < bits_.size(); ++w) {
      std::uint64_t word = bits_[w];
      while (word) {
        unsigned b = __builtin_ctzll(word);
        word &= word - 1;
        fn(ring_->element_at(w * 64 + b));
      }
    }
  } else {
    for (const Element& e : elems_) fn(e);
  }
}

std::vector<Element> ElementSet::to_vector() const {
  std::vector<Element> v;
  v.reserve(count_);
  for_each([&](const Element& e) { v.push_back(e); });
  return v;
}

Element ElementSet::min_element() const {
  if (empty()) throw DomainError("min_element: empty set");
  if (dense_) {
    for (std::uint64_t w = 0; w < bits_.size(); ++w)
      if (bits_[w]) {
        unsigned b = __builtin_ctzll(bits_[w]);
        return ring_->element_at(w * 64 + b);
      }
  }
  return *elems_.begin();
}

bool ElementSet::has_zero() const { return contains(ring_->zero()); }

bool ElementSet::is_symmetric() const {
  if (!has_zero()) return false;
  bool sym = true;
  for_each([&](const Element& e) {
    if (sym && !contains(ring_->neg(e))) sym = false;
  });
  return sym;
}

bool ElementSet::operator==(const ElementSet& o) const {
  if (count_ != o.count_) return false;
  bool eq = true;
  for_each([&](const Element& e) {
    if (eq && !o.contains(Element(o.ring_.get(), e.payload()))) eq = false;
  });
  return eq;
}

bool ElementSet::is_subset_of(const ElementSet& o) const {
  bool ok = true;
  for_each([&](const Element& e) {
    if (ok && !o.contains(e)) ok = false;
  });
  return ok;
}

ElementSet ElementSet::unioned(const ElementSet& o) const {
  if (ring_.get() != o.ring_.get())
    throw DomainError("set union: ring mismatch");
  ElementSet r(ring_);
  r.truncated_ = truncated_ || o.truncated_;
  if (dense_ && o.dense_) {
    r.bits_ = bits_;
    for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] |= o.bits_[i];
    r.count_ = 0;
    for (std::uint64_t w : r.bits_) r.count_ += __builtin_popcountll(w);
    return r;
  }
  for_each([&](const Element& e) { r.insert_unchecked(e); });
  o.for_each([&](const Element& e) { r.insert_unchecked(e); });
  return r;
}

ElementSet ElementSet::negated() const {
  ElementSet r(ring_);
  r.truncated_ = truncated_;
  for_each([&](const Element& e) { r.insert_unchecked(ring_->neg(e)); });
  return r;
}

std::vector<std::string> ElementSet::encoded_sorted() const {
  std::vector<std::string> v;
  v.reserve(count_);
  for_each([&](const Element& e) { v.push_back(ring_->encode(e)); });
  return v;  // canonical order already
}

// ---------------------------------------------------------------------------
// Pairwise set calculus

static void rotate_or(std::vector<std::uint64_t>& dst,
                      const std::vector<std::uint64_t>& src, std::uint64_t n,
                      std::uint64_t shift) {
  // dst |= src rotated left by `shift` within the first n bits.
  for (std::uint64_t w = 0; w < src.size(); ++w) {
    std::uint64_t word = src[w];
    while (word) {
      unsigned b = __builtin_ctzll(word);
      word &= word - 1;
      std::uint64_t i = w * 64 + b + shift;
      if (i >= n) i -= n;
      dst[i >> 6] |= 1ULL << (i & 63);
    }
  }
}

ElementSet pairwise_set(PairwiseKind kind, const ElementSet& A,
                        const ElementSet& Bin, const Truncation* trunc) {
  const ElementSet& B = (kind == PairwiseKind::Difference) ? A : Bin;
  if (A.ring().get() != B.ring().get())
    throw DomainError("pairwise_set: ring mismatch");
  const Ring& ring = *A.ring();
  ElementSet R(A.ring());
  R.set_truncated(A.truncated() || B.truncated());

  // Z/n sumsets as rotate-or loops over the dense bitset.
  if (ring.kind() == Ring::Kind::Zmod && ring.size() <= kDenseLimit &&
      (kind == PairwiseKind::Sum || kind == PairwiseKind::Difference)) {
    std::uint64_t n = ring.size();
    std::vector<std::uint64_t> dst((n + 63) / 64, 0);
    std::vector<std::uint64_t> bbits((n + 63) / 64, 0);
    B.for_each([&](const Element& e) {
      std::uint64_t v = kind == PairwiseKind::Difference
                            ? (e.small() ? n - e.small() : 0)
                            : e.small();
      bbits[v >> 6] |= 1ULL << (v & 63);
    });
    A.for_each(
        [&](const Element& e) { rotate_or(dst, bbits, n, e.small()); });
    ElementSet out(A.ring());
    for (std::uint64_t i = 0; i < n; ++i)
      if ((dst[i >> 6] >> (i & 63)) & 1u)
        out.insert_unchecked(ring.element_at(i));
    out.set_truncated(R.truncated());
    return out;
  }

  auto emit = [&](const Element& e) {
    if (trunc && !trunc->accepts(ring, e)) {
      R.set_truncated(true);
      return;
    }
    R.insert_unchecked(e);
  };
  std::vector<Element> av = A.to_vector();
  std::vector<Element> bv = B.to_vector();
  for (const Element& a : av)
    for (const Element& b : bv) {
      switch (kind) {
        case PairwiseKind::Sum:
          emit(ring.add(a, b));
          break;
        case PairwiseKind::Product:
          emit(ring.mul(a, b));
          break;
        case PairwiseKind::Difference:
          emit(ring.sub(a, b));
          break;
      }
    }
  return R;
}

ElementSet sumset(const ElementSet& A, const ElementSet& B,
                  const Truncation* trunc) {
  return pairwise_set(PairwiseKind::Sum, A, B, trunc);
}
ElementSet productset(const ElementSet& A, const ElementSet& B,
                      const Truncation* trunc) {
  return pairwise_set(PairwiseKind::Product, A, B, trunc);
}

ElementSet iterated_sumset(const ElementSet& A, unsigned n,
                           const Truncation* trunc) {
  if (n == 0) throw DomainError("iterated_sumset: n must be >= 1");
  ElementSet acc = A;
  for (unsigned i = 1; i < n; ++i) acc = sumset(acc, A, trunc);
  return acc;
}

ElementSet iterate_xn(const ElementSet& X, unsigned n, const Truncation* trunc,
                      std::uint64_t element_budget) {
  if (!X.is_symmetric())
    throw DomainError("iterate_xn: X must be additively symmetric");
  if (!X.ring()->is_finite() && !trunc)
    throw DomainError(
        "iterate_xn: infinite ambient requires a truncation predicate");
  ElementSet cur = X;
  for (unsigned k = 0; k < n; ++k) {
    ElementSet twofold = sumset(cur, cur, trunc);
    ElementSet prods = productset(cur, cur, trunc);
    ElementSet next = sumset(twofold, prods, trunc);
    if (next.size() > element_budget)
      throw BudgetError("iterate_xn: element budget exceeded at level " +
                        std::to_string(k + 1));
    if (next == cur && !next.truncated()) return next;  // stabilized
    cur = next;
  }
  return cur;
}

ElementSet ideal_closure_in_full_ring(const RingPtr& ring,
                                      const ElementSet& generators) {
  if (!ring->is_finite() || ring->size() > 65536)
    throw BudgetError("ideal closure: ring too large");
  const std::uint64_t n = ring->size();
  ElementSet I(ring);
  I.insert_unchecked(ring->zero());
  generators.for_each([&](const Element& g) { I.insert_unchecked(g); });
  for (;;) {
    std::vector<Element> cur = I.to_vector();
    std::size_t before = I.size();
    for (const Element& f : cur) {
      I.insert_unchecked(ring->neg(f));
      for (const Element& g : cur) I.insert_unchecked(ring->add(f, g));
      for (std::uint64_t r = 0; r < n; ++r) {
        Element e = ring->element_at(r);
        I.insert_unchecked(ring->mul(e, f));
        I.insert_unchecked(ring->mul(f, e));
      }
    }
    if (I.size() == before) return I;
  }
}

ElementSet translate(const ElementSet& A, const Element& f) {
  ElementSet r(A.ring());
  const Ring& ring = *A.ring();
  A.for_each([&](const Element& e) { r.insert_unchecked(ring.add(f, e)); });
  return r;
}

}  // namespace apx
