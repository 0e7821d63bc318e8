#pragma once

// Independent brute-force oracles for the test suites. These deliberately
// avoid the library's search code paths: covers come from raw subset
// enumeration, free sets from full subset scans, closures from naive
// fixpoint loops over pair tables.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "apx/element_set.hpp"

namespace oracle {

using namespace apx;

// Smallest K such that some K-subset of `pool` covers S by translates of X;
// enumerates subsets in lexicographic order by increasing size.
inline std::optional<std::size_t> brute_cover_number(
    const ElementSet& S, const ElementSet& X, const std::vector<Element>& pool,
    std::size_t k_max) {
  const Ring& ring = *S.ring();
  std::vector<Element> targets = S.to_vector();
  auto covers = [&](const std::vector<std::size_t>& pick) {
    for (const Element& s : targets) {
      bool hit = false;
      for (std::size_t c : pick)
        if (X.contains(ring.sub(s, pool[c]))) {
          hit = true;
          break;
        }
      if (!hit) return false;
    }
    return true;
  };
  for (std::size_t k = 1; k <= k_max; ++k) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    if (pool.size() < k) return std::nullopt;
    for (;;) {
      if (covers(idx)) return k;
      // next combination
      std::size_t i = k;
      while (i-- > 0) {
        if (idx[i] + (k - i) < pool.size()) {
          ++idx[i];
          for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
          break;
        }
        if (i == 0) goto next_k;
      }
    }
  next_k:;
  }
  return std::nullopt;
}

// Maximum size of a subset of Y whose pairwise differences of distinct
// elements avoid D \ {0}; full 2^|Y| scan (|Y| <= ~20).
inline std::size_t brute_max_free_subset(const ElementSet& D,
                                         const ElementSet& Y) {
  const Ring& ring = *Y.ring();
  std::vector<Element> ys = Y.to_vector();
  std::size_t n = ys.size();
  std::size_t best = 0;
  for (std::uint64_t mask = 1; mask < (1ULL << n); ++mask) {
    std::size_t size = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (size <= best) continue;
    bool free = true;
    for (std::size_t i = 0; i < n && free; ++i) {
      if (!((mask >> i) & 1)) continue;
      for (std::size_t j = i + 1; j < n && free; ++j) {
        if (!((mask >> j) & 1)) continue;
        if (D.contains(ring.sub(ys[j], ys[i]))) free = false;
      }
    }
    if (free) best = size;
  }
  return best;
}

// Naive subring closure by repeated full pair scans.
inline ElementSet brute_subring_closure(const ElementSet& X) {
  const RingPtr& rp = X.ring();
  const Ring& ring = *rp;
  ElementSet C(rp);
  C.insert_unchecked(ring.zero());
  X.for_each([&](const Element& e) { C.insert_unchecked(e); });
  for (;;) {
    std::vector<Element> v = C.to_vector();
    std::size_t before = C.size();
    for (const Element& a : v) {
      C.insert_unchecked(ring.neg(a));
      for (const Element& b : v) {
        C.insert_unchecked(ring.add(a, b));
        C.insert_unchecked(ring.mul(a, b));
      }
    }
    if (C.size() == before) return C;
  }
}

inline bool brute_is_subring(const ElementSet& S) {
  if (!S.has_zero()) return false;
  const Ring& ring = *S.ring();
  std::vector<Element> v = S.to_vector();
  for (const Element& a : v) {
    if (!S.contains(ring.neg(a))) return false;
    for (const Element& b : v) {
      if (!S.contains(ring.add(a, b))) return false;
      if (!S.contains(ring.mul(a, b))) return false;
    }
  }
  return true;
}

// All additively symmetric subsets of Z/n (every one contains 0).
inline std::vector<ElementSet> all_symmetric_subsets_zmod(
    const RingPtr& ring) {
  std::uint64_t n = ring->size();
  std::vector<std::pair<std::uint64_t, std::uint64_t>> orbits;
  std::vector<bool> seen(n, false);
  for (std::uint64_t a = 1; a < n; ++a) {
    if (seen[a]) continue;
    std::uint64_t b = (n - a) % n;
    seen[a] = seen[b] = true;
    orbits.push_back({a, b});
  }
  std::vector<ElementSet> out;
  for (std::uint64_t mask = 0; mask < (1ULL << orbits.size()); ++mask) {
    ElementSet s(ring);
    s.insert_unchecked(ring->zero());
    for (std::size_t i = 0; i < orbits.size(); ++i)
      if ((mask >> i) & 1) {
        s.insert_unchecked(ring->element_at(orbits[i].first));
        s.insert_unchecked(ring->element_at(orbits[i].second));
      }
    out.push_back(std::move(s));
  }
  return out;
}

inline ElementSet zmod_set(const RingPtr& ring,
                           std::initializer_list<std::uint64_t> xs) {
  ElementSet s(ring);
  for (auto x : xs) s.insert(ring->element_at(x % ring->size()));
  return s;
}

inline ElementSet int_set(const RingPtr& ring,
                          std::initializer_list<long> xs) {
  ElementSet s(ring);
  for (auto x : xs) s.insert(Element(ring.get(), mpz_class(x)));
  return s;
}

inline ElementSet int_interval(const RingPtr& ring, long a, long b) {
  ElementSet s(ring);
  for (long x = a; x <= b; ++x) s.insert(Element(ring.get(), mpz_class(x)));
  return s;
}

}  // namespace oracle
