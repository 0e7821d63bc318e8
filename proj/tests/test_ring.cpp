#include <doctest.h>

#include "apx/element_set.hpp"
#include "apx/ring.hpp"
#include "oracles.hpp"

using namespace apx;

TEST_CASE("zmod basics") {
  RingPtr r = make_ring("{\"kind\":\"zmod\",\"n\":7}");
  CHECK(r->size() == 7);
  CHECK(r->encode(r->add(r->parse("5"), r->parse("4"))) == "2");
  CHECK(r->encode(r->neg(r->parse("3"))) == "4");
  CHECK(r->encode(r->mul(r->parse("3"), r->parse("5"))) == "1");
}

TEST_CASE("matrix ring size and units") {
  RingPtr m2 = make_ring(
      "{\"kind\":\"matrix\",\"base\":{\"kind\":\"zmod\",\"n\":2},\"dim\":2}");
  CHECK(m2->size() == 16);
  RingPtr m3 = make_matrix(make_zmod(2), 3);
  Element e12 = m3->parse("[[0,1,0],[0,0,0],[0,0,0]]");
  Element e23 = m3->parse("[[0,0,0],[0,0,1],[0,0,0]]");
  CHECK(m3->encode(m3->mul(e12, e23)) == "[[0,0,1],[0,0,0],[0,0,0]]");
  CHECK(m3->mul(e23, e12) == m3->zero());
}

TEST_CASE("quadfield arithmetic is exact in the integral basis") {
  RingPtr q2 = make_quadfield(2);
  Element a = q2->parse("1+1*w");
  CHECK(q2->encode(q2->mul(a, a)) == "3+2*w");
  // d = 5 = 1 mod 4: omega = (1+sqrt5)/2, omega^2 = 1 + omega.
  RingPtr q5 = make_quadfield(5);
  Element w = q5->parse("0+1*w");
  CHECK(q5->encode(q5->mul(w, w)) == "1+1*w");
  CHECK_THROWS_AS(make_quadfield(4), SpecError);   // not squarefree
  CHECK_THROWS_AS(make_quadfield(12), SpecError);  // not squarefree
}

TEST_CASE("additive orders") {
  RingPtr z12 = make_zmod(12);
  CHECK(*z12->additive_order(z12->parse("4")) == 3);
  RingPtr z7 = make_zmod(7);
  CHECK(*z7->additive_order(z7->parse("0")) == 1);
  RingPtr z = make_integers();
  CHECK(!z->additive_order(z->parse("5")).has_value());
  CHECK(*z->additive_order(z->parse("0")) == 1);
  RingPtr m = make_matrix(make_zmod(4), 2);
  CHECK(*m->additive_order(m->parse("[[2,0],[0,1]]")) == 4);
}

TEST_CASE("product rings") {
  RingPtr p = make_product({make_zmod(2), make_zmod(3)});
  CHECK(p->size() == 6);
  Element x = p->parse("(1,2)");
  CHECK(p->encode(p->add(x, x)) == "(0,1)");
  CHECK(p->encode(p->mul(x, x)) == "(1,1)");
}

TEST_CASE("table ring axioms are enforced with a witness") {
  // Z/2 as a table ring.
  std::vector<std::vector<std::uint64_t>> add{{0, 1}, {1, 0}};
  std::vector<std::vector<std::uint64_t>> mul{{0, 0}, {0, 1}};
  RingPtr t = make_table(add, mul);
  CHECK(t->size() == 2);
  CHECK(t->encode(t->mul(t->parse("1"), t->parse("1"))) == "1");

  // Broken mul associativity must name a violating triple.
  std::vector<std::vector<std::uint64_t>> bad{{0, 1}, {1, 1}};
  CHECK_THROWS_WITH_AS(make_table(add, bad),
                       doctest::Contains("triple"), SpecError);
}

TEST_CASE("ring axioms hold on sampled triples") {
  std::vector<RingPtr> rings = {
      make_zmod(12), make_matrix(make_zmod(3), 2),
      make_product({make_zmod(4), make_zmod(5)}), make_quadfield(3)};
  for (const RingPtr& r : rings) {
    SplitMix64 g(99);
    auto rand_elem = [&]() {
      if (r->is_finite()) return r->element_at(g.below(r->size()));
      return r->parse(std::to_string(static_cast<long>(g.below(41)) - 20) +
                      "+" +
                      std::to_string(static_cast<long>(g.below(41)) - 20) +
                      "*w");
    };
    for (int i = 0; i < 64; ++i) {
      Element a = rand_elem(), b = rand_elem(), c = rand_elem();
      CHECK(r->add(r->add(a, b), c) == r->add(a, r->add(b, c)));
      CHECK(r->mul(r->mul(a, b), c) == r->mul(a, r->mul(b, c)));
      CHECK(r->mul(a, r->add(b, c)) == r->add(r->mul(a, b), r->mul(a, c)));
      CHECK(r->mul(r->add(a, b), c) == r->add(r->mul(a, c), r->mul(b, c)));
      CHECK(r->add(a, r->neg(a)) == r->zero());
      CHECK(r->add(a, b) == r->add(b, a));
    }
  }
}

TEST_CASE("parse/encode round trip is canonical") {
  std::vector<RingPtr> rings = {make_zmod(11), make_integers(),
                                make_quadfield(7),
                                make_matrix(make_zmod(5), 2)};
  for (const RingPtr& r : rings) {
    SplitMix64 g(5);
    for (int i = 0; i < 32; ++i) {
      Element e;
      if (r->is_finite())
        e = r->element_at(g.below(r->size()));
      else if (r->kind() == Ring::Kind::Integers)
        e = Element(r.get(), mpz_class(static_cast<long>(g.below(1000)) - 500));
      else
        e = Element(r.get(),
                    Element::Quad{mpz_class(static_cast<long>(g.below(9)) - 4),
                                  mpz_class(static_cast<long>(g.below(9)) - 4)});
      CHECK(r->parse(r->encode(e)) == e);
    }
  }
}

TEST_CASE("quotient rings: sizes and errors") {
  RingPtr z8 = make_zmod(8);
  ElementSet i04 = oracle::zmod_set(z8, {0, 4});
  RingPtr q = make_quotient(z8, i04);
  CHECK(q->size() == 4);
  // Additive order multiset matches Z/4.
  std::vector<std::string> orders;
  for (std::uint64_t i = 0; i < q->size(); ++i)
    orders.push_back(q->additive_order(q->element_at(i))->get_str());
  std::sort(orders.begin(), orders.end());
  CHECK(orders == std::vector<std::string>{"1", "2", "4", "4"});

  RingPtr z9 = make_zmod(9);
  CHECK(make_quotient(z9, oracle::zmod_set(z9, {0, 3, 6}))->size() == 3);

  ElementSet bad = oracle::zmod_set(z8, {0, 3});
  CHECK_THROWS_WITH_AS(make_quotient(z8, bad),
                       doctest::Contains("not closed under addition"),
                       SpecError);
}

TEST_CASE("quotient projection is a ring homomorphism (exhaustive <= 256)") {
  struct Case {
    RingPtr base;
    std::vector<std::uint64_t> ideal;
  };
  RingPtr z12 = make_zmod(12), z16 = make_zmod(16);
  std::vector<std::pair<RingPtr, ElementSet>> cases;
  cases.push_back({z12, oracle::zmod_set(z12, {0, 4, 8})});
  cases.push_back({z12, oracle::zmod_set(z12, {0, 6})});
  cases.push_back({z16, oracle::zmod_set(z16, {0, 8})});
  {
    RingPtr m2 = make_matrix(make_zmod(2), 2);  // size 16
    ElementSet all(m2);
    for (std::uint64_t i = 0; i < m2->size(); ++i)
      all.insert_unchecked(m2->element_at(i));
    cases.push_back({m2, all});  // quotient by the whole ring
  }
  {
    RingPtr p = make_product({make_zmod(4), make_zmod(4)});  // size 16
    ElementSet ideal(p);
    for (std::uint64_t a = 0; a < 4; ++a)
      ideal.insert(p->parse("(" + std::to_string(a) + ",0)"));
    cases.push_back({p, ideal});
  }
  for (auto& [base, ideal] : cases) {
    REQUIRE(base->size() <= 256);
    RingPtr q = make_quotient(base, ideal);
    for (std::uint64_t i = 0; i < base->size(); ++i)
      for (std::uint64_t j = 0; j < base->size(); ++j) {
        Element a = base->element_at(i), b = base->element_at(j);
        Element pa = q->parse(base->encode(a));
        Element pb = q->parse(base->encode(b));
        CHECK(q->parse(base->encode(base->add(a, b))) == q->add(pa, pb));
        CHECK(q->parse(base->encode(base->mul(a, b))) == q->mul(pa, pb));
      }
  }
}

TEST_CASE("infinite rings refuse universe enumeration") {
  CHECK_THROWS_AS(make_integers()->size(), DomainError);
  CHECK_THROWS_AS(make_quadfield(2)->element_at(0), DomainError);
}

TEST_CASE("ring spec errors") {
  CHECK_THROWS_AS(make_ring("{\"kind\":\"zmod\",\"n\":0}"), SpecError);
  CHECK_THROWS_AS(make_ring("not json"), SpecError);
  CHECK_THROWS_AS(make_ring("{\"kind\":\"mystery\"}"), SpecError);
  CHECK_THROWS_AS(make_ring("{\"kind\":\"product\",\"factors\":[]}"),
                  SpecError);
}

TEST_CASE("quotient spec closes its generator list into an ideal") {
  RingPtr q = make_ring(
      "{\"kind\":\"quotient\",\"base\":{\"kind\":\"zmod\",\"n\":8},"
      "\"ideal\":[\"2\"]}");
  CHECK(q->size() == 2);  // ideal(2) = {0,2,4,6}
}
