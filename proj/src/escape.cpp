#include "apx/escape.hpp"

#include <algorithm>
#include <unordered_map>

#include "apx/structure.hpp"

namespace apx {

NormValue escape_norm(const ElementSet& X, const Element& r) {
  const Ring& ring = *X.ring();
  ring.check_member(r, "escape_norm");
  if (!X.has_zero()) throw DomainError("escape_norm: X must contain 0");
  auto order = ring.additive_order(r);
  if (!order)
    throw DomainError(
        "escape_norm: infinite additive order; supply a finite ambient");

  // i*r for i = 0..ord-1 walks the whole additive cycle of r; if it never
  // leaves X the norm is 0 (every further multiple repeats the cycle).
  Element acc = ring.zero();
  mpz_class i = 0;
  while (i < *order) {
    if (!X.contains(acc)) {
      // First escape at index i, so nu = i - 1 and the norm is 1/(nu+1).
      NormValue v;
      v.nu = i - 1;
      v.value = mpq_class(1) / mpq_class(i);
      return v;
    }
    acc = ring.add(acc, r);
    ++i;
  }
  NormValue v;
  v.value = 0;
  v.nu = std::nullopt;
  return v;
}

NormZeroReport norm_zero_set(const ElementSet& X) {
  if (!X.ring()->is_finite())
    throw DomainError("norm_zero_set: finite ambient required");
  NormZeroReport rep{ElementSet(X.ring()), ElementSet(X.ring()), false, ""};
  rep.closure = generated_subring(X);
  rep.zero_set = ElementSet(X.ring());
  rep.closure.for_each([&](const Element& r) {
    if (escape_norm(X, r).is_zero()) rep.zero_set.insert_unchecked(r);
  });
  auto check = verify_substructure(SubstructureKind::IdealOf, rep.zero_set,
                                   &rep.closure);
  rep.is_ideal = check.ok;
  rep.ideal_violation = check.violation;
  return rep;
}

StrongNormReport strong_norm_check(const ElementSet& Z,
                                   std::uint64_t sample_budget,
                                   std::size_t exhaustive_limit) {
  const Ring& ring = *Z.ring();
  if (!Z.is_symmetric())
    throw DomainError("strong_norm_check: Z must be additively symmetric");
  ElementSet closure = generated_subring(Z);
  std::vector<Element> elems = closure.to_vector();

  std::vector<mpq_class> norm(elems.size());
  std::unordered_map<Element, std::size_t, ElementHash> index;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    norm[i] = escape_norm(Z, elems[i]).value;
    index.emplace(elems[i], i);
  }
  auto norm_of = [&](const Element& e) { return norm[index.at(e)]; };

  StrongNormReport rep;
  constexpr std::size_t kMaxWitnesses = 64;

  auto check_pair = [&](std::size_t i, std::size_t j) {
    const Element& x = elems[i];
    const Element& y = elems[j];
    ++rep.pairs_checked;
    {
      mpq_class lhs = norm_of(ring.add(x, y));
      mpq_class rhs = 4 * std::max(norm[i], norm[j]);
      if (lhs > rhs) {
        rep.sum_ok = false;
        if (rep.sum_violations.size() < kMaxWitnesses)
          rep.sum_violations.push_back({x, y, norm[i], norm[j], lhs});
      }
    }
    if (Z.contains(x) && Z.contains(y)) {
      mpq_class lhs = norm_of(ring.mul(x, y));
      mpq_class rhs = 2 * norm[i] * norm[j];
      if (lhs > rhs) {
        rep.product_ok = false;
        if (rep.product_violations.size() < kMaxWitnesses)
          rep.product_violations.push_back({x, y, norm[i], norm[j], lhs});
      }
    }
    if (norm[i] == 0 || norm[j] == 0) {
      mpq_class lhs = norm_of(ring.mul(x, y));
      if (lhs != 0) {
        rep.zero_ok = false;
        if (rep.zero_violations.size() < kMaxWitnesses)
          rep.zero_violations.push_back({x, y, norm[i], norm[j], lhs});
      }
    }
  };

  if (elems.size() <= exhaustive_limit) {
    for (std::size_t i = 0; i < elems.size(); ++i)
      for (std::size_t j = 0; j < elems.size(); ++j) check_pair(i, j);
    rep.exhaustive = true;
  } else {
    SplitMix64 g(0x5eed5eedULL);
    for (std::uint64_t s = 0; s < sample_budget; ++s)
      check_pair(g.below(elems.size()), g.below(elems.size()));
    rep.exhaustive = false;
  }
  return rep;
}

}  // namespace apx
