#pragma once

// Finite sets of ring elements: the operand of all set calculus. Two
// internal representations, chosen per ring:
//   - dense bit-vector over the canonical element index (finite rings of
//     size <= 2^20); Z/n sumsets run as rotate-or word loops;
//   - ordered set of canonical elements otherwise (integers, quadfields,
//     large finite rings).
// Iteration order is always the canonical ascending order, so every
// downstream computation is deterministic.

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "apx/ring.hpp"

namespace apx {

// Norm-bound truncation predicate for discrete unbounded ambients.
struct Truncation {
  mpz_class bound;  // integers: |x| <= bound; quadfield: max(|a|,|b|);
                    // matrices/products: componentwise

  bool accepts(const Ring& ring, const Element& e) const;
};

class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(RingPtr ring);

  static ElementSet of(RingPtr ring, const std::vector<Element>& elems);
  // Parses one canonical element encoding per entry.
  static ElementSet parse(RingPtr ring,
                          const std::vector<std::string>& encodings);

  const RingPtr& ring() const { return ring_; }
  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }

  bool contains(const Element& e) const;
  void insert(const Element& e);  // e must belong to the ring (checked)
  void insert_unchecked(const Element& e);

  void for_each(const std::function<void(const Element&)>& fn) const;
  std::vector<Element> to_vector() const;
  Element min_element() const;

  bool has_zero() const;
  bool is_symmetric() const;  // 0 in S and S = -S, recomputed every call

  bool truncated() const { return truncated_; }
  void set_truncated(bool t) { truncated_ = t; }

  bool operator==(const ElementSet& o) const;
  bool is_subset_of(const ElementSet& o) const;

  ElementSet unioned(const ElementSet& o) const;
  ElementSet negated() const;

  std::vector<std::string> encoded_sorted() const;

 private:
  friend class SetBuilder;
  RingPtr ring_;
  bool dense_ = false;
  std::vector<std::uint64_t> bits_;
  std::set<Element> elems_;
  std::size_t count_ = 0;
  bool truncated_ = false;

  bool bit(std::uint64_t i) const {
    return (bits_[i >> 6] >> (i & 63)) & 1u;
  }
  void set_bit(std::uint64_t i) {
    std::uint64_t& w = bits_[i >> 6];
    std::uint64_t m = 1ULL << (i & 63);
    if (!(w & m)) {
      w |= m;
      ++count_;
    }
  }
};

enum class PairwiseKind { Sum, Product, Difference };

// {a op b : a in A, b in B}; Difference ignores B and returns A - A.
ElementSet pairwise_set(PairwiseKind kind, const ElementSet& A,
                        const ElementSet& B,
                        const Truncation* trunc = nullptr);

ElementSet sumset(const ElementSet& A, const ElementSet& B,
                  const Truncation* trunc = nullptr);
ElementSet productset(const ElementSet& A, const ElementSet& B,
                      const Truncation* trunc = nullptr);
// n-fold sumset A + ... + A (n >= 1).
ElementSet iterated_sumset(const ElementSet& A, unsigned n,
                           const Truncation* trunc = nullptr);

// X_0 = X, X_{k+1} = X_k + X_k + X_k * X_k. Requires X additively symmetric;
// infinite ambients require a truncation predicate.
ElementSet iterate_xn(const ElementSet& X, unsigned n,
                      const Truncation* trunc = nullptr,
                      std::uint64_t element_budget = 4'000'000);

// Closure of the listed generators into a two-sided ideal of the full finite
// ring (used by quotient ring specs).
ElementSet ideal_closure_in_full_ring(const RingPtr& ring,
                                      const ElementSet& generators);

ElementSet translate(const ElementSet& A, const Element& f);

}  // namespace apx
