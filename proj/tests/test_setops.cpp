#include <doctest.h>

#include <cmath>

#include "apx/cover.hpp"
#include "apx/setops.hpp"
#include "apx/structure.hpp"
#include "oracles.hpp"

using namespace apx;
using oracle::int_interval;
using oracle::int_set;
using oracle::zmod_set;

TEST_CASE("pairwise sets in Z/7") {
  RingPtr z7 = make_zmod(7);
  ElementSet X = zmod_set(z7, {0, 1, 6});
  CHECK(sumset(X, X) == zmod_set(z7, {0, 1, 2, 5, 6}));
  CHECK(productset(X, X) == zmod_set(z7, {0, 1, 6}));
}

TEST_CASE("difference set of {0,1} in Z") {
  RingPtr z = make_integers();
  ElementSet A = int_set(z, {0, 1});
  ElementSet D = pairwise_set(PairwiseKind::Difference, A, A);
  CHECK(D == int_set(z, {-1, 0, 1}));
  CHECK(D.is_symmetric());
}

TEST_CASE("pairwise ring mismatch is an error") {
  RingPtr a = make_zmod(5), b = make_zmod(7);
  CHECK_THROWS_AS(sumset(zmod_set(a, {0}), zmod_set(b, {0})), DomainError);
}

TEST_CASE("A subset of A+B whenever 0 in B") {
  RingPtr z11 = make_zmod(11);
  SplitMix64 g(3);
  for (int t = 0; t < 20; ++t) {
    ElementSet A(z11), B(z11);
    B.insert(z11->zero());
    for (int i = 0; i < 4; ++i) {
      A.insert(z11->element_at(g.below(11)));
      B.insert(z11->element_at(g.below(11)));
    }
    CHECK(A.is_subset_of(sumset(A, B)));
    CHECK(sumset(A, B).size() <= A.size() * B.size());
  }
}

TEST_CASE("iterate_xn examples") {
  RingPtr z7 = make_zmod(7);
  ElementSet X = zmod_set(z7, {0, 1, 6});
  CHECK(iterate_xn(X, 0) == X);
  CHECK(iterate_xn(X, 1).size() == 7);  // all of Z/7

  RingPtr z8 = make_zmod(8);
  ElementSet evens = zmod_set(z8, {0, 2, 4, 6});
  CHECK(iterate_xn(evens, 1) == evens);  // subring fixed point
  CHECK(iterate_xn(evens, 5) == evens);

  ElementSet asym = zmod_set(z8, {0, 1});
  CHECK_THROWS_AS(iterate_xn(asym, 1), DomainError);
}

TEST_CASE("iterate_xn needs a truncation on infinite ambients") {
  RingPtr z = make_integers();
  ElementSet X = int_set(z, {-1, 0, 1});
  CHECK_THROWS_AS(iterate_xn(X, 2), DomainError);
  Truncation tr{mpz_class(10)};
  ElementSet r = iterate_xn(X, 2, &tr);
  CHECK(r.truncated());
  CHECK(r.is_subset_of(int_interval(z, -10, 10)));
}

TEST_CASE("iterate_xn is monotone and stabilizes to the generated subring") {
  for (std::uint64_t n = 2; n <= 8; ++n) {
    RingPtr zn = make_zmod(n);
    for (const ElementSet& X : oracle::all_symmetric_subsets_zmod(zn)) {
      ElementSet prev = X;
      for (unsigned k = 1; k <= 4; ++k) {
        ElementSet next = iterate_xn(X, k);
        CHECK(prev.is_subset_of(next));
        prev = next;
      }
      CHECK(prev == oracle::brute_subring_closure(X));
    }
  }
}

TEST_CASE("word balls in Z with X = {-1,0,1}") {
  RingPtr z = make_integers();
  ElementSet X = int_set(z, {-1, 0, 1});
  CHECK(word_ball(z, X, 0) == int_set(z, {0}));
  for (unsigned n = 1; n <= 12; ++n) {
    ElementSet b = word_ball(z, X, n);
    CHECK(b.size() == 2 * n + 1);
    CHECK(b == int_interval(z, -static_cast<long>(n), static_cast<long>(n)));
  }
}

TEST_CASE("word ball picks up products: E13 from two letters") {
  RingPtr m3 = make_matrix(make_integers(), 3);
  auto unit = [&](const char* s) { return m3->parse(s); };
  ElementSet X(m3);
  X.insert(m3->zero());
  X.insert(unit("[[0,1,0],[0,0,0],[0,0,0]]"));
  X.insert(unit("[[0,-1,0],[0,0,0],[0,0,0]]"));
  X.insert(unit("[[0,0,0],[0,0,1],[0,0,0]]"));
  X.insert(unit("[[0,0,0],[0,0,-1],[0,0,0]]"));
  ElementSet b3 = word_ball(m3, X, 3);
  CHECK(b3.contains(unit("[[0,0,1],[0,0,0],[0,0,0]]")));  // E13 = E12*E23
  CHECK(!word_ball(m3, X, 1).contains(unit("[[0,0,1],[0,0,0],[0,0,0]]")));
}

TEST_CASE("word ball laws: monotone and additively sub-additive") {
  RingPtr z9 = make_zmod(9);
  ElementSet X = zmod_set(z9, {0, 1, 8});
  std::vector<ElementSet> B;
  for (unsigned n = 0; n <= 8; ++n) B.push_back(word_ball(z9, X, n));
  for (unsigned n = 0; n + 1 <= 8; ++n) CHECK(B[n].is_subset_of(B[n + 1]));
  for (unsigned m = 0; m <= 4; ++m)
    for (unsigned n = 0; m + n <= 8; ++n)
      CHECK(sumset(B[m], B[n]).is_subset_of(B[m + n]));
}

TEST_CASE("alg_set over F5") {
  RingPtr f5 = make_zmod(5);
  ElementSet X = zmod_set(f5, {0, 1, 4});
  CHECK(alg_set(f5, X, 1) == zmod_set(f5, {0, 1, 4}));
  CHECK(alg_set(f5, X, 2).size() == 5);  // all of F5

  // Closed field input stays put.
  ElementSet full(f5);
  for (std::uint64_t i = 0; i < 5; ++i) full.insert(f5->element_at(i));
  CHECK(alg_set(f5, full, 3) == full);
}

TEST_CASE("alg_set rejects non-fields naming a witness") {
  RingPtr z6 = make_zmod(6);
  CHECK_THROWS_WITH_AS(alg_set(z6, zmod_set(z6, {0, 1}), 2),
                       doctest::Contains("noninvertible"), DomainError);
}

TEST_CASE("cover_number: interval instance, exact") {
  RingPtr z = make_integers();
  ElementSet S = int_interval(z, -4, 4);
  ElementSet X = int_interval(z, -2, 2);
  CoverOptions opts;
  opts.mode = CoverMode::Exact;
  CoverCertificate c = cover_number(S, X, opts);
  CHECK(c.K() == 2);
  CHECK(c.exact);
  CHECK(c.revalidate(S, X));
}

TEST_CASE("cover_number: S = X gives K = 1 with translate 0") {
  RingPtr z7 = make_zmod(7);
  ElementSet X = zmod_set(z7, {0, 2, 5});
  CoverOptions opts;
  opts.mode = CoverMode::Exact;
  CoverCertificate c = cover_number(X, X, opts);
  CHECK(c.K() == 1);
}

TEST_CASE("cover_number: {0,2,4} by {0,3} needs K = 3") {
  RingPtr z = make_integers();
  ElementSet S = int_set(z, {0, 2, 4});
  ElementSet X = int_set(z, {0, 3});
  CoverOptions opts;
  opts.mode = CoverMode::Exact;
  CHECK(cover_number(S, X, opts).K() == 3);
}

TEST_CASE("exact cover agrees with brute force and greedy is within ratio") {
  SplitMix64 g(2024);
  int instances = 0;
  while (instances < 12) {
    RingPtr z17 = make_zmod(17);
    ElementSet S(z17), X(z17);
    X.insert(z17->zero());
    for (int i = 0; i < 3; ++i) X.insert(z17->element_at(g.below(17)));
    for (int i = 0; i < 9; ++i) S.insert(z17->element_at(g.below(17)));
    if (S.size() > 9) continue;
    ++instances;
    CoverOptions opts;
    opts.mode = CoverMode::Exact;
    CoverCertificate exact = cover_number(S, X, opts);
    ElementSet pool = sumset(S, X.negated());
    // Minimality: no cover of size K-1, and one of size K, by raw subset
    // enumeration over the full pool.
    if (exact.K() > 1)
      CHECK(!oracle::brute_cover_number(S, X, pool.to_vector(), exact.K() - 1)
                 .has_value());
    auto brute = oracle::brute_cover_number(S, X, pool.to_vector(), exact.K());
    REQUIRE(brute.has_value());
    CHECK(exact.K() == *brute);
    opts.mode = CoverMode::Greedy;
    CoverCertificate greedy = cover_number(S, X, opts);
    double ratio = 1.0 + std::log(static_cast<double>(S.size()));
    CHECK(static_cast<double>(greedy.K()) <=
          static_cast<double>(exact.K()) * ratio + 1e-9);
    CHECK(greedy.revalidate(S, X));
  }
}

TEST_CASE("exact cover reports budget exhaustion explicitly") {
  RingPtr z101 = make_zmod(101);
  ElementSet S(z101), X(z101);
  X.insert(z101->zero());
  SplitMix64 g(7);
  for (int i = 0; i < 6; ++i) X.insert(z101->element_at(g.below(101)));
  for (int i = 0; i < 60; ++i) S.insert(z101->element_at(g.below(101)));
  CoverOptions opts;
  opts.mode = CoverMode::Exact;
  opts.node_budget = 3;  // absurdly small on purpose
  CHECK_THROWS_AS(cover_number(S, X, opts), BudgetError);
}

TEST_CASE("cover pool cannot cover -> explicit error") {
  RingPtr z = make_integers();
  ElementSet S = int_set(z, {0, 5});
  ElementSet X = int_set(z, {0});
  CoverOptions opts;
  ElementSet pool(z);
  pool.insert(Element(z.get(), mpz_class(1)));
  opts.pool = pool;
  CHECK_THROWS_AS(cover_number(S, X, opts), DomainError);
}
