#include <doctest.h>

#include "apx/escape.hpp"
#include "oracles.hpp"

using namespace apx;
using oracle::zmod_set;

TEST_CASE("escape norm examples in Z/7") {
  RingPtr z7 = make_zmod(7);
  ElementSet X = zmod_set(z7, {0, 1, 2, 5, 6});
  CHECK(escape_norm(X, z7->parse("1")).value == mpq_class(1, 3));
  CHECK(escape_norm(X, z7->parse("0")).value == 0);
  CHECK(escape_norm(X, z7->parse("4")).value == 1);  // 4 not in X
  CHECK(escape_norm(X, z7->parse("2")).value == mpq_class(1, 2));
}

TEST_CASE("escape norm equivalences, exhaustive over Z/n for n <= 8") {
  for (std::uint64_t n = 2; n <= 8; ++n) {
    RingPtr zn = make_zmod(n);
    for (const ElementSet& X : oracle::all_symmetric_subsets_zmod(zn)) {
      for (std::uint64_t i = 0; i < n; ++i) {
        Element r = zn->element_at(i);
        mpq_class v = escape_norm(X, r).value;
        CHECK((v <= mpq_class(1, 2)) == X.contains(r));
        CHECK((v == 1) == !X.contains(r));
        // Symmetry under negation for symmetric X.
        CHECK(escape_norm(X, zn->neg(r)).value == v);
      }
    }
  }
}

TEST_CASE("escape norm monotone in the set") {
  RingPtr z12 = make_zmod(12);
  ElementSet X = zmod_set(z12, {0, 1, 11});
  ElementSet Y = zmod_set(z12, {0, 1, 2, 10, 11});
  for (std::uint64_t i = 0; i < 12; ++i) {
    Element r = z12->element_at(i);
    CHECK(escape_norm(Y, r).value <= escape_norm(X, r).value);
  }
}

TEST_CASE("escape norm needs finite order or a finite ambient") {
  RingPtr z = make_integers();
  ElementSet X = oracle::int_set(z, {-1, 0, 1});
  CHECK_THROWS_AS(escape_norm(X, Element(z.get(), mpz_class(1))), DomainError);
  CHECK(escape_norm(X, Element(z.get(), mpz_class(0))).value == 0);
}

TEST_CASE("norm zero set examples") {
  RingPtr z7 = make_zmod(7);
  auto rep = norm_zero_set(zmod_set(z7, {0, 1, 2, 5, 6}));
  CHECK(rep.zero_set == zmod_set(z7, {0}));
  CHECK(rep.is_ideal);  // {0} is an ideal of Z/7

  RingPtr z8 = make_zmod(8);
  ElementSet sub = zmod_set(z8, {0, 2, 4, 6});
  auto rep2 = norm_zero_set(sub);
  CHECK(rep2.zero_set == sub);
  CHECK(rep2.is_ideal);

  RingPtr z5 = make_zmod(5);
  auto rep3 = norm_zero_set(zmod_set(z5, {0}));
  CHECK(rep3.zero_set == zmod_set(z5, {0}));
}

TEST_CASE("strong norm check: subrings pass all three properties") {
  RingPtr z8 = make_zmod(8);
  auto rep = strong_norm_check(zmod_set(z8, {0, 2, 4, 6}));
  CHECK(rep.sum_ok);
  CHECK(rep.product_ok);
  CHECK(rep.zero_ok);
  CHECK(rep.exhaustive);

  RingPtr z9 = make_zmod(9);
  auto rep2 = strong_norm_check(zmod_set(z9, {0, 3, 6}));
  CHECK(rep2.sum_ok);
  CHECK(rep2.product_ok);
  CHECK(rep2.zero_ok);
}

TEST_CASE("strong norm check reproduces the documented (2,2) violation") {
  RingPtr z7 = make_zmod(7);
  auto rep = strong_norm_check(zmod_set(z7, {0, 1, 2, 5, 6}));
  CHECK(!rep.product_ok);
  bool found = false;
  for (const auto& v : rep.product_violations) {
    if (z7->encode(v.x) == "2" && z7->encode(v.y) == "2") {
      found = true;
      CHECK(v.norm_x == mpq_class(1, 2));
      CHECK(v.norm_y == mpq_class(1, 2));
      CHECK(v.norm_result == 1);  // ||4|| = 1 > 2 * 1/2 * 1/2
    }
  }
  CHECK(found);
}

TEST_CASE("norm tables stay rational of the right shape") {
  RingPtr z12 = make_zmod(12);
  ElementSet X = zmod_set(z12, {0, 1, 2, 3, 9, 10, 11});
  for (std::uint64_t i = 0; i < 12; ++i) {
    NormValue v = escape_norm(X, z12->element_at(i));
    if (v.nu) {
      CHECK(v.value == mpq_class(1) / (mpq_class(*v.nu) + 1));
    } else {
      CHECK(v.value == 0);
    }
    CHECK(v.value >= 0);
    CHECK(v.value <= 1);
  }
}
