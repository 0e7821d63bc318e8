#include "apx/structure.hpp"

#include <algorithm>

namespace apx {

// ---------------------------------------------------------------------------
// Substructure verification

SubstructureCheck verify_substructure(SubstructureKind kind,
                                      const ElementSet& S,
                                      const ElementSet* ambient_subring) {
  const Ring& ring = *S.ring();
  SubstructureCheck out;
  if (S.empty()) {
    out.ok = false;
    out.violation = "empty set";
    return out;
  }
  std::vector<Element> sv = S.to_vector();
  for (const Element& a : sv)
    for (const Element& b : sv) {
      Element s = ring.add(a, b);
      if (!S.contains(s)) {
        out.ok = false;
        out.violation = ring.encode(a) + " + " + ring.encode(b) + " = " +
                        ring.encode(s) + " not in set";
        return out;
      }
    }
  for (const Element& a : sv) {
    if (!S.contains(ring.neg(a))) {
      out.ok = false;
      out.violation = "-" + ring.encode(a) + " = " + ring.encode(ring.neg(a)) +
                      " not in set";
      return out;
    }
  }
  if (kind == SubstructureKind::Subring) {
    for (const Element& a : sv)
      for (const Element& b : sv) {
        Element p = ring.mul(a, b);
        if (!S.contains(p)) {
          out.ok = false;
          out.violation = ring.encode(a) + " * " + ring.encode(b) + " = " +
                          ring.encode(p) + " not in set";
          return out;
        }
      }
  } else {
    if (!ambient_subring)
      throw DomainError("verify_substructure: ideal-of needs the subring");
    std::vector<Element> rv = ambient_subring->to_vector();
    for (const Element& r : rv)
      for (const Element& i : sv) {
        Element left = ring.mul(r, i);
        if (!S.contains(left)) {
          out.ok = false;
          out.violation = ring.encode(r) + " * " + ring.encode(i) + " = " +
                          ring.encode(left) + " escapes";
          return out;
        }
        Element right = ring.mul(i, r);
        if (!S.contains(right)) {
          out.ok = false;
          out.violation = ring.encode(i) + " * " + ring.encode(r) + " = " +
                          ring.encode(right) + " escapes";
          return out;
        }
      }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Closures

namespace {

// Closure of `gens` under + and - (0 always included).
ElementSet additive_closure(const RingPtr& ring, const std::vector<Element>& gens,
                            std::uint64_t budget = 4'000'000) {
  const Ring& R = *ring;
  ElementSet C(ring);
  C.insert_unchecked(R.zero());
  std::vector<Element> frontier;
  for (const Element& g : gens) {
    if (!C.contains(g)) {
      C.insert_unchecked(g);
      frontier.push_back(g);
    }
  }
  while (!frontier.empty()) {
    std::vector<Element> next;
    auto push = [&](const Element& e) {
      if (!C.contains(e)) {
        C.insert_unchecked(e);
        next.push_back(e);
      }
    };
    std::vector<Element> all = C.to_vector();
    for (const Element& f : frontier) {
      push(R.neg(f));
      for (const Element& x : all) push(R.add(f, x));
    }
    if (C.size() > budget) throw BudgetError("additive closure: budget");
    frontier = std::move(next);
  }
  return C;
}

}  // namespace

ElementSet generated_subring(const ElementSet& X, const Truncation* trunc,
                             std::uint64_t element_budget) {
  const RingPtr& ring = X.ring();
  const Ring& R = *ring;
  if (!R.is_finite() && !trunc)
    throw DomainError(
        "generated_subring: infinite ambient requires a truncation");
  ElementSet C(ring);
  C.insert_unchecked(R.zero());
  std::vector<Element> frontier;
  auto admit = [&](const Element& e, std::vector<Element>* next) {
    if (C.contains(e)) return;
    if (trunc && !trunc->accepts(R, e))
      throw DomainError(
          "generated_subring: closure does not stabilize within truncation");
    C.insert_unchecked(e);
    if (next) next->push_back(e);
  };
  X.for_each([&](const Element& e) { admit(e, &frontier); });
  while (!frontier.empty()) {
    std::vector<Element> next;
    std::vector<Element> all = C.to_vector();
    for (const Element& f : frontier) {
      admit(R.neg(f), &next);
      for (const Element& x : all) {
        admit(R.add(f, x), &next);
        admit(R.mul(f, x), &next);
        admit(R.mul(x, f), &next);
      }
    }
    if (C.size() > element_budget)
      throw BudgetError("generated_subring: element budget exceeded");
    frontier = std::move(next);
  }
  return C;
}

ElementSet generated_ideal(const ElementSet& subring, const ElementSet& S) {
  const RingPtr& ring = subring.ring();
  const Ring& R = *ring;
  if (!S.is_subset_of(subring))
    throw DomainError("generated_ideal: S is not contained in the subring");
  std::vector<Element> rv = subring.to_vector();
  ElementSet I(ring);
  I.insert_unchecked(R.zero());
  std::vector<Element> frontier;
  auto push = [&](const Element& e, std::vector<Element>& next) {
    if (!I.contains(e)) {
      I.insert_unchecked(e);
      next.push_back(e);
    }
  };
  {
    std::vector<Element> first;
    S.for_each([&](const Element& e) { push(e, first); });
    frontier = std::move(first);
  }
  while (!frontier.empty()) {
    std::vector<Element> next;
    std::vector<Element> all = I.to_vector();
    for (const Element& f : frontier) {
      push(R.neg(f), next);
      for (const Element& x : all) push(R.add(f, x), next);
      for (const Element& r : rv) {
        push(R.mul(r, f), next);
        push(R.mul(f, r), next);
      }
    }
    frontier = std::move(next);
  }
  return I;
}

ElementSet largest_ideal_within(const ElementSet& subring,
                                const ElementSet& S) {
  const RingPtr& ring = subring.ring();
  if (!S.has_zero()) throw DomainError("largest_ideal_within: 0 not in S");
  if (!S.is_subset_of(subring))
    throw DomainError("largest_ideal_within: S not contained in subring");
  if (S == subring) return subring;  // the whole subring qualifies

  // Qualifying elements: principal ideal stays inside S.
  std::vector<Element> qualifying;
  std::vector<ElementSet> principal;
  S.for_each([&](const Element& r) {
    ElementSet one(ring);
    one.insert_unchecked(r);
    ElementSet ideal = generated_ideal(subring, one);
    if (ideal.is_subset_of(S)) {
      qualifying.push_back(r);
      principal.push_back(std::move(ideal));
    }
  });

  ElementSet sum = additive_closure(ring, qualifying);
  if (sum.is_subset_of(S)) return sum;

  // The sum of all qualifying principal ideals escapes S; grow greedily in
  // canonical order, keeping the running sum an ideal inside S.
  ElementSet acc(ring);
  acc.insert_unchecked(ring->zero());
  for (std::size_t i = 0; i < qualifying.size(); ++i) {
    std::vector<Element> gens = acc.to_vector();
    std::vector<Element> extra = principal[i].to_vector();
    gens.insert(gens.end(), extra.begin(), extra.end());
    ElementSet candidate = additive_closure(ring, gens);
    if (candidate.is_subset_of(S)) acc = std::move(candidate);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Coset ring R'/I

CosetRing::CosetRing(RingPtr ambient, const ElementSet& subring,
                     const ElementSet& ideal)
    : Ring(Kind::Quotient), ambient_(std::move(ambient)) {
  if (!ideal.is_subset_of(subring))
    throw DomainError("CosetRing: ideal not inside subring");
  std::vector<Element> iv = ideal.to_vector();
  ElementSet seen(subring.ring());
  subring.for_each([&](const Element& e) {
    if (seen.contains(e)) return;
    std::vector<Element> coset;
    coset.reserve(iv.size());
    for (const Element& x : iv) coset.push_back(ambient_->add(e, x));
    Element rep = *std::min_element(coset.begin(), coset.end());
    for (const Element& c : coset) {
      if (!subring.contains(c))
        throw DomainError("CosetRing: coset escapes the subring");
      seen.insert_unchecked(c);
      coset_rep_.emplace(c, rep);
    }
    reps_.push_back(rep);
  });
  std::sort(reps_.begin(), reps_.end());
  for (std::uint64_t i = 0; i < reps_.size(); ++i)
    rep_index_.emplace(reps_[i], i);
}

std::string CosetRing::describe() const {
  return "{\"kind\":\"coset\",\"ambient\":" + ambient_->describe() +
         ",\"size\":" + std::to_string(reps_.size()) + "}";
}

Element CosetRing::element_at(std::uint64_t i) const {
  return Element(this, reps_[i].payload());
}

std::uint64_t CosetRing::index_of(const Element& e) const {
  auto it = rep_index_.find(Element(ambient_.get(), e.payload()));
  if (it == rep_index_.end()) throw DomainError("CosetRing: not an element");
  return it->second;
}

Element CosetRing::reduce_ambient(const Element& a) const {
  auto it = coset_rep_.find(a);
  if (it == coset_rep_.end())
    throw DomainError("CosetRing: element outside the subring");
  return Element(this, it->second.payload());
}

Element CosetRing::project(const Element& a) const { return reduce_ambient(a); }

Element CosetRing::zero() const { return reduce_ambient(ambient_->zero()); }

Element CosetRing::add(const Element& a, const Element& b) const {
  return reduce_ambient(ambient_->add(Element(ambient_.get(), a.payload()),
                                      Element(ambient_.get(), b.payload())));
}
Element CosetRing::neg(const Element& a) const {
  return reduce_ambient(ambient_->neg(Element(ambient_.get(), a.payload())));
}
Element CosetRing::mul(const Element& a, const Element& b) const {
  return reduce_ambient(ambient_->mul(Element(ambient_.get(), a.payload()),
                                      Element(ambient_.get(), b.payload())));
}
bool CosetRing::contains(const Element& e) const {
  Element lifted(ambient_.get(), e.payload());
  auto it = coset_rep_.find(lifted);
  return it != coset_rep_.end() && it->second == lifted;
}
std::string CosetRing::encode(const Element& e) const {
  return ambient_->encode(Element(ambient_.get(), e.payload()));
}
Element CosetRing::parse(const std::string& text) const {
  return reduce_ambient(ambient_->parse(text));
}

// ---------------------------------------------------------------------------
// Nilpotency

std::optional<unsigned> nilpotency_class(const ElementSet& ring_set,
                                         unsigned max_class) {
  const RingPtr& ring = ring_set.ring();
  ElementSet zero_only(ring);
  zero_only.insert_unchecked(ring->zero());
  ElementSet span = ring_set;  // additive span of 1-fold products
  if (span == zero_only) return 0;
  for (unsigned k = 1; k <= max_class; ++k) {
    ElementSet products = productset(ring_set, span);
    span = additive_closure(ring, products.to_vector());
    if (span == zero_only) return k;
  }
  return std::nullopt;
}

std::optional<unsigned> nilpotency_class(const RingPtr& ring,
                                         unsigned max_class) {
  if (!ring->is_finite()) throw DomainError("nilpotency_class: finite only");
  ElementSet all(ring);
  for (std::uint64_t i = 0; i < ring->size(); ++i)
    all.insert_unchecked(ring->element_at(i));
  return nilpotency_class(all, max_class);
}

std::optional<std::vector<Element>> nilpotent_base(const ElementSet& ring_set,
                                                   unsigned n,
                                                   std::uint64_t node_budget) {
  const RingPtr& ring = ring_set.ring();
  const Ring& R = *ring;
  std::vector<Element> elems = ring_set.to_vector();

  if (n == 0) {
    ElementSet zero_only(ring);
    zero_only.insert_unchecked(R.zero());
    if (ring_set == zero_only) return std::vector<Element>{};
    return std::nullopt;
  }

  // Heuristic order: elements annihilating the most of the ring first.
  std::vector<std::pair<std::size_t, Element>> scored;
  for (const Element& u : elems) {
    std::size_t ann = 0;
    for (const Element& x : elems)
      if (R.mul(u, x) == R.zero() && R.mul(x, u) == R.zero()) ++ann;
    scored.push_back({ann, u});
  }
  std::stable_sort(scored.begin(), scored.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });

  std::vector<Element> chosen;
  std::vector<ElementSet> spans;  // spans[k] = additive span of chosen[0..k-1]
  {
    ElementSet s0(ring);
    s0.insert_unchecked(R.zero());
    spans.push_back(s0);
  }
  std::uint64_t nodes = 0;
  std::optional<std::vector<Element>> found;

  std::function<void()> rec = [&]() {
    if (found || ++nodes > node_budget) return;
    unsigned i = static_cast<unsigned>(chosen.size());
    if (i == n) {
      if (spans[n] == ring_set) found = chosen;
      return;
    }
    for (const auto& [ann, u] : scored) {
      (void)ann;
      if (found) return;
      bool dup = false;
      for (const Element& c : chosen)
        if (c == u) dup = true;
      if (dup) continue;
      // Pair conditions (k, i+1) for k = 1..i+1: u_k * u and u * u_k must lie
      // in the additive span of the first k-1 generators.
      bool ok = true;
      for (unsigned k = 1; k <= i + 1 && ok; ++k) {
        const Element& uk = (k == i + 1) ? u : chosen[k - 1];
        if (!spans[k - 1].contains(R.mul(uk, u)) ||
            !spans[k - 1].contains(R.mul(u, uk)))
          ok = false;
      }
      if (!ok) continue;
      chosen.push_back(u);
      std::vector<Element> gens = spans[i].to_vector();
      gens.push_back(u);
      spans.push_back(additive_closure(ring, gens));
      rec();
      spans.pop_back();
      chosen.pop_back();
    }
  };
  rec();
  return found;
}

// ---------------------------------------------------------------------------
// The structure certificate

bool NilpotentCertificate::verify(const ElementSet& X) const {
  if (!verify_substructure(SubstructureKind::Subring, subring, nullptr).ok)
    return false;
  if (!verify_substructure(SubstructureKind::IdealOf, ideal, &subring).ok)
    return false;
  ElementSet xm = iterate_xn(X, containment_m);
  if (!ideal.is_subset_of(xm)) return false;
  CosetRing quotient(X.ring(), subring, ideal);
  RingPtr qptr(&quotient, [](const Ring*) {});  // non-owning view
  ElementSet quniverse(qptr);
  for (std::uint64_t i = 0; i < quotient.size(); ++i)
    quniverse.insert_unchecked(quotient.element_at(i));
  auto cls = nilpotency_class(quniverse, quotient_class);
  if (!cls || *cls != quotient_class) return false;
  if (base) {
    // Project the reported base into the quotient and recheck the pair
    // conditions and the additive span.
    std::vector<Element> b;
    for (const Element& e : *base)
      b.push_back(quotient.project(Element(X.ring().get(), e.payload())));
    std::vector<ElementSet> spans;
    ElementSet s0(qptr);
    s0.insert_unchecked(quotient.zero());
    spans.push_back(s0);
    for (std::size_t k = 0; k < b.size(); ++k) {
      std::vector<Element> gens = spans.back().to_vector();
      gens.push_back(b[k]);
      ElementSet cur(qptr);
      cur.insert_unchecked(quotient.zero());
      // additive closure
      std::vector<Element> frontier = gens;
      for (const Element& g : gens) cur.insert_unchecked(g);
      while (!frontier.empty()) {
        std::vector<Element> next;
        std::vector<Element> all = cur.to_vector();
        for (const Element& f : frontier) {
          auto push = [&](const Element& e) {
            if (!cur.contains(e)) {
              cur.insert_unchecked(e);
              next.push_back(e);
            }
          };
          push(quotient.neg(f));
          for (const Element& x : all) push(quotient.add(f, x));
        }
        frontier = std::move(next);
      }
      spans.push_back(cur);
    }
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = i; j < b.size(); ++j) {
        if (!spans[i].contains(quotient.mul(b[i], b[j]))) return false;
        if (!spans[i].contains(quotient.mul(b[j], b[i]))) return false;
      }
    if (!(spans.back() == quniverse)) return false;
  }
  return true;
}

std::optional<NilpotentCertificate> nilpotent_certificate(
    const ElementSet& X, const CertificateOptions& opts) {
  const RingPtr& ring = X.ring();
  if (!ring->is_finite())
    throw DomainError(
        "nilpotent_certificate: finite ambient required (certify a finite "
        "quotient instead)");
  if (!X.is_symmetric())
    throw DomainError("nilpotent_certificate: X must be additively symmetric");

  ElementSet X3 = iterate_xn(X, 3);
  ElementSet Rp = generated_subring(X3);

  auto finish = [&](ElementSet I, unsigned m,
                    unsigned cls) -> NilpotentCertificate {
    NilpotentCertificate cert;
    cert.subring = Rp;
    cert.ideal = std::move(I);
    cert.containment_m = m;
    cert.quotient_class = cls;
    CoverOptions co;
    co.mode = CoverMode::Greedy;
    co.target_tag = "X";
    co.cover_tag = "R'";
    cert.coset_count = cover_number(X, Rp, co).K();
    if (opts.want_base) {
      CosetRing q(ring, Rp, cert.ideal);
      RingPtr qptr(&q, [](const Ring*) {});
      ElementSet universe(qptr);
      for (std::uint64_t i = 0; i < q.size(); ++i)
        universe.insert_unchecked(q.element_at(i));
      for (unsigned nb = cls; nb <= cls + 4 && !cert.base; ++nb)
        cert.base = nilpotent_base(universe, nb, opts.node_budget);
      if (cert.base) {
        // Lift base elements back to ambient payloads for reporting.
        std::vector<Element> lifted;
        for (const Element& e : *cert.base)
          lifted.push_back(Element(ring.get(), e.payload()));
        cert.base = lifted;
      }
    }
    return cert;
  };

  // Strongest certificate first: the zero ideal.
  if (auto cls = nilpotency_class(Rp, opts.class_max)) {
    ElementSet zero_ideal(ring);
    zero_ideal.insert_unchecked(ring->zero());
    return finish(std::move(zero_ideal), 1, *cls);
  }

  ElementSet prev_ideal(ring);
  bool have_prev = false;
  for (unsigned m = 1; m <= opts.m_max; ++m) {
    ElementSet Xm = iterate_xn(X, m);
    ElementSet I = largest_ideal_within(Rp, Xm);
    if (have_prev && I == prev_ideal) continue;  // same quotient, same verdict
    prev_ideal = I;
    have_prev = true;
    CosetRing q(ring, Rp, I);
    RingPtr qptr(&q, [](const Ring*) {});
    ElementSet universe(qptr);
    for (std::uint64_t i = 0; i < q.size(); ++i)
      universe.insert_unchecked(q.element_at(i));
    if (auto cls = nilpotency_class(universe, opts.class_max))
      return finish(std::move(I), m, *cls);
  }
  return std::nullopt;
}

}  // namespace apx
