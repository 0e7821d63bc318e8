#pragma once

// Exact arithmetic for every ambient ring the rest of the system computes in:
// Z/n, matrix rings, finite products, table-presented rings, quotients, the
// integers, and real quadratic integer rings O_K. Elements are immutable
// canonical values; rings are immutable and shareable across threads.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "apx/common.hpp"

namespace apx {

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

class Element {
 public:
  struct Quad {
    mpz_class a, b;  // a + b*omega in the integral basis {1, omega}
    bool operator==(const Quad& o) const { return a == o.a && b == o.b; }
  };
  using List = std::vector<Element>;
  using Payload = std::variant<std::uint64_t, mpz_class, Quad, List>;

  Element() : ring_(nullptr), v_(std::uint64_t{0}) {}
  Element(const Ring* ring, Payload v) : ring_(ring), v_(std::move(v)) {}

  const Ring* ring() const { return ring_; }
  const Payload& payload() const { return v_; }

  std::uint64_t small() const { return std::get<std::uint64_t>(v_); }
  const mpz_class& integer() const { return std::get<mpz_class>(v_); }
  const Quad& quad() const { return std::get<Quad>(v_); }
  const List& list() const { return std::get<List>(v_); }

  // Total structural order; used for canonical set iteration and coset
  // representatives.
  int cmp(const Element& o) const;
  bool operator==(const Element& o) const { return cmp(o) == 0; }
  bool operator!=(const Element& o) const { return cmp(o) != 0; }
  bool operator<(const Element& o) const { return cmp(o) < 0; }

  std::size_t hash() const;

 private:
  const Ring* ring_;
  Payload v_;
};

struct ElementHash {
  std::size_t operator()(const Element& e) const { return e.hash(); }
};

// Abstract ring. All operations are pure; results are canonical.
class Ring : public std::enable_shared_from_this<Ring> {
 public:
  enum class Kind { Zmod, Integers, Quadfield, Matrix, Product, Table, Quotient };

  virtual ~Ring() = default;

  Kind kind() const { return kind_; }
  virtual std::string describe() const = 0;  // JSON spec text

  virtual bool is_finite() const = 0;
  // Only for finite rings.
  virtual std::uint64_t size() const;
  virtual Element element_at(std::uint64_t index) const;
  virtual std::uint64_t index_of(const Element& e) const;

  virtual Element zero() const = 0;
  virtual Element add(const Element& a, const Element& b) const = 0;
  virtual Element neg(const Element& a) const = 0;
  virtual Element mul(const Element& a, const Element& b) const = 0;
  Element sub(const Element& a, const Element& b) const {
    return add(a, neg(b));
  }

  // True iff the payload is a well-formed canonical element of this ring.
  virtual bool contains(const Element& e) const = 0;

  // nullopt = infinite additive order.
  virtual std::optional<mpz_class> additive_order(const Element& a) const;

  virtual std::string encode(const Element& e) const = 0;
  virtual Element parse(const std::string& text) const = 0;

  void check_member(const Element& e, const char* who) const;

 protected:
  explicit Ring(Kind k) : kind_(k) {}
  Kind kind_;
};

// Builds a ring from its JSON spec document (see README for the schema).
RingPtr make_ring(const std::string& spec_json);

// Individual constructors (used internally and by tests).
RingPtr make_zmod(std::uint64_t n);
RingPtr make_integers();
RingPtr make_quadfield(unsigned long d);  // O_K for K = Q(sqrt(d))
RingPtr make_matrix(RingPtr base, unsigned dim);
RingPtr make_product(std::vector<RingPtr> factors);
RingPtr make_table(const std::vector<std::vector<std::uint64_t>>& add,
                   const std::vector<std::vector<std::uint64_t>>& mul);

class ElementSet;
// Quotient of a full finite ring by a verified two-sided ideal. Verifies the
// ideal and reports a violating pair on failure.
RingPtr make_quotient(RingPtr base, const ElementSet& ideal);

// Quadfield helpers (module cutproject builds on these).
struct QuadBasis {
  unsigned long d;
  bool half;  // omega = (1+sqrt(d))/2 when d = 1 mod 4, else sqrt(d)
};
QuadBasis quad_basis(const Ring& quadfield_ring);

// arith() entry point per the external interface: op in {add, mul, neg}.
Element ring_arith(const Ring& ring, const std::string& op, const Element& a,
                   const Element* b);

}  // namespace apx
