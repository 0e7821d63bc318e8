#pragma once

// Generated subrings and ideals, nilpotency computations, and the
// nilpotent-quotient certificate (subring R', ideal I inside X_m, quotient
// nilpotency class, optional nilpotent base).

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "apx/cover.hpp"
#include "apx/element_set.hpp"

namespace apx {

struct SubstructureCheck {
  bool ok = true;
  std::string violation;  // human-readable witness when !ok
};

enum class SubstructureKind { Subring, IdealOf };

// Subring: closed under +, -, *. IdealOf: additive subgroup of R' absorbed
// by multiplication from both sides.
SubstructureCheck verify_substructure(SubstructureKind kind,
                                      const ElementSet& S,
                                      const ElementSet* ambient_subring);

// Least subring containing X (= stabilized X_n iteration). Infinite ambients
// need a truncation; non-stabilization inside the truncation is an error.
ElementSet generated_subring(const ElementSet& X,
                             const Truncation* trunc = nullptr,
                             std::uint64_t element_budget = 4'000'000);

// Least two-sided ideal of the verified finite subring R' containing S.
ElementSet generated_ideal(const ElementSet& subring, const ElementSet& S);

// Union of all two-sided ideals of R' contained in S (0 in S required),
// computed from the qualifying principal ideals and re-closed to a fixpoint.
ElementSet largest_ideal_within(const ElementSet& subring, const ElementSet& S);

// A finite ring presented as a set closed under the ambient operations,
// optionally modulo an ideal. Used for nilpotency of quotients R'/I.
class CosetRing final : public Ring {
 public:
  CosetRing(RingPtr ambient, const ElementSet& subring, const ElementSet& ideal);

  std::string describe() const override;
  bool is_finite() const override { return true; }
  std::uint64_t size() const override { return reps_.size(); }
  Element element_at(std::uint64_t i) const override;
  std::uint64_t index_of(const Element& e) const override;
  Element zero() const override;
  Element add(const Element& a, const Element& b) const override;
  Element neg(const Element& a) const override;
  Element mul(const Element& a, const Element& b) const override;
  bool contains(const Element& e) const override;
  std::string encode(const Element& e) const override;
  Element parse(const std::string& text) const override;

  Element project(const Element& ambient_elem) const;  // natural projection

 private:
  Element reduce_ambient(const Element& ambient_elem) const;
  RingPtr ambient_;
  std::vector<Element> reps_;
  std::unordered_map<Element, Element, ElementHash> coset_rep_;
  std::unordered_map<Element, std::uint64_t, ElementHash> rep_index_;
};

// Least n <= max_class with the additive span of (n+1)-fold products = {0};
// nullopt when the ring is not nilpotent within max_class.
std::optional<unsigned> nilpotency_class(const ElementSet& ring_set,
                                         unsigned max_class);
std::optional<unsigned> nilpotency_class(const RingPtr& ring,
                                         unsigned max_class);

// Ordered generators u_1..u_n with u_i u_j and u_j u_i (i <= j) in the
// additive span of u_1..u_{i-1}, and the additive span of the base equal to
// the whole ring. "none found" is budget-relative, not a disproof.
std::optional<std::vector<Element>> nilpotent_base(
    const ElementSet& ring_set, unsigned n, std::uint64_t node_budget = 200'000);

struct NilpotentCertificate {
  ElementSet subring;           // R'
  ElementSet ideal;             // I, two-sided in R'
  unsigned containment_m = 0;   // I subset of X_m
  unsigned quotient_class = 0;  // nilpotency class of R'/I
  std::optional<std::vector<Element>> base;  // nilpotent base of R'/I
  std::uint64_t coset_count = 0;  // translates of R' covering X

  bool verify(const ElementSet& X) const;
};

struct CertificateOptions {
  unsigned m_max = 8;
  unsigned class_max = 8;
  std::uint64_t node_budget = 200'000;
  bool want_base = true;
};

// Searches for the strongest certificate: I = {0} first (smallest ideal),
// then the largest ideal inside X_m for m ascending.
std::optional<NilpotentCertificate> nilpotent_certificate(
    const ElementSet& X, const CertificateOptions& opts = {});

}  // namespace apx
