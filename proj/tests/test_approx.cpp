#include <doctest.h>

#include "apx/approx.hpp"
#include "oracles.hpp"

using namespace apx;
using oracle::int_interval;
using oracle::int_set;
using oracle::zmod_set;

TEST_CASE("approx_constant examples") {
  RingPtr z8 = make_zmod(8);
  ApproxReport sub = approx_constant(zmod_set(z8, {0, 2, 4, 6}),
                                     CoverMode::Exact);
  CHECK(sub.K() == 1);
  CHECK(sub.growth_ratio == 1);

  RingPtr z = make_integers();
  ApproxReport interval =
      approx_constant(int_interval(z, -2, 2), CoverMode::Exact);
  CHECK(interval.K() == 2);

  ApproxReport zero = approx_constant(int_set(z, {0}), CoverMode::Exact);
  CHECK(zero.K() == 1);
  CHECK(zero.growth_ratio == 1);
}

TEST_CASE("K = 1 iff subring, exhaustive over Z/n for n <= 8") {
  for (std::uint64_t n = 2; n <= 8; ++n) {
    RingPtr zn = make_zmod(n);
    for (const ElementSet& X : oracle::all_symmetric_subsets_zmod(zn)) {
      ApproxReport rep = approx_constant(X, CoverMode::Exact);
      CHECK((rep.K() == 1) == oracle::brute_is_subring(X));
      if (X.has_zero()) CHECK(rep.growth_ratio >= 1);
    }
  }
}

TEST_CASE("commensurability examples") {
  RingPtr z = make_integers();
  ElementSet X = int_set(z, {-10, -8, -6, -4, -2, 0, 2, 4, 6, 8, 10});
  Commensurability same = commensurability(X, X, CoverMode::Exact);
  CHECK(same.x_by_y.K() == 1);
  CHECK(same.y_by_x.K() == 1);

  ElementSet Y = int_set(z, {-9, -6, -3, 0, 3, 6, 9});
  Commensurability c = commensurability(X, Y, CoverMode::Greedy);
  CHECK(c.x_by_y.revalidate(X, Y));
  CHECK(c.y_by_x.revalidate(Y, X));
  Commensurability cx = commensurability(X, Y, CoverMode::Exact);
  Commensurability cy = commensurability(Y, X, CoverMode::Exact);
  CHECK(cx.x_by_y.K() == cy.y_by_x.K());  // symmetry under swapping
  CHECK(cx.y_by_x.K() == cy.x_by_y.K());

  ElementSet single = int_set(z, {0});
  ElementSet finite = int_set(z, {1, 2, 5});
  Commensurability s = commensurability(finite, single, CoverMode::Exact);
  CHECK(s.x_by_y.K() == finite.size());
  CHECK(s.y_by_x.K() == 1);
}

TEST_CASE("thickness examples") {
  RingPtr z10 = make_zmod(10);
  ElementSet Y(z10);
  for (std::uint64_t i = 0; i < 10; ++i) Y.insert(z10->element_at(i));

  // D = Y (difference-closed here since Y is the whole ring): N = 2.
  ThicknessResult full = thickness(Y, Y);
  CHECK(full.exact);
  CHECK(full.N == 2);

  // D = {0}: pigeonhole, N = |Y| + 1.
  ThicknessResult zero = thickness(zmod_set(z10, {0}), Y);
  CHECK(zero.N == 11);

  // Even residues: the max free set has size 2.
  ElementSet evens = zmod_set(z10, {0, 2, 4, 6, 8});
  ThicknessResult ev = thickness(evens, Y);
  CHECK(ev.N == 3);
  CHECK(ev.witness.size() == 2);

  CHECK_THROWS_AS(thickness(zmod_set(z10, {2, 8}), Y), DomainError);  // no 0
}

TEST_CASE("thickness matches the brute-force free-set oracle") {
  SplitMix64 g(11);
  for (int t = 0; t < 10; ++t) {
    RingPtr z13 = make_zmod(13);
    ElementSet Y(z13), D(z13);
    D.insert(z13->zero());
    for (int i = 0; i < 3; ++i) {
      Element e = z13->element_at(g.below(13));
      D.insert(e);
      D.insert(z13->neg(e));
    }
    for (std::uint64_t i = 0; i < 13; ++i) Y.insert(z13->element_at(i));
    ThicknessResult r = thickness(D, Y);
    CHECK(r.N == oracle::brute_max_free_subset(D, Y) + 1);
    // Remark 7.7 shape: |D| >= |Y| / (N-1) for D inside Y.
    CHECK(D.size() * (r.N - 1) >= Y.size());
    // Greedy brackets the exact value.
    ThicknessResult gr = thickness(D, Y, ThicknessMode::Greedy);
    CHECK(gr.N_lower <= r.N);
    CHECK(gr.N >= r.N);
  }
}

TEST_CASE("bound suite on an interval in Z") {
  RingPtr z = make_integers();
  BoundSuiteReport rep = bound_suite(int_interval(z, -3, 3));
  REQUIRE(rep.checks.size() == 3);
  CHECK(rep.checks[0].name == "fact-2.1");
  CHECK(rep.checks[0].measured_k == 2);  // |X+X| = 13 <= 2*7
  for (const auto& c : rep.checks) CHECK(c.status == BoundStatus::Pass);
}

TEST_CASE("bound suite on a subring passes with K = 1") {
  RingPtr z8 = make_zmod(8);
  BoundSuiteReport rep = bound_suite(zmod_set(z8, {0, 2, 4, 6}));
  for (const auto& c : rep.checks) {
    CHECK(c.status == BoundStatus::Pass);
    CHECK(c.measured_k == 1);
  }
}

TEST_CASE("bound suite Remark 2.2 instance from Z/7") {
  RingPtr z7 = make_zmod(7);
  BoundSuiteReport rep = bound_suite(zmod_set(z7, {0, 1, 6}));
  bool found = false;
  for (const auto& c : rep.checks)
    if (c.name == "remark-2.2") {
      found = true;
      CHECK(c.status == BoundStatus::Pass);
    }
  CHECK(found);
}

TEST_CASE("bound suite Lemma 2.3 with a verified subring H") {
  RingPtr z8 = make_zmod(8);
  ElementSet H = zmod_set(z8, {0, 2, 4, 6});
  ElementSet X = zmod_set(z8, {0, 1, 7});
  BoundSuiteReport rep = bound_suite(X, &H);
  bool found = false;
  for (const auto& c : rep.checks)
    if (c.name == "lemma-2.3") {
      found = true;
      CHECK(c.status == BoundStatus::Pass);
    }
  CHECK(found);

  ElementSet not_subring = zmod_set(z8, {0, 3});
  CHECK_THROWS_AS(bound_suite(X, &not_subring), DomainError);
}

TEST_CASE("dichotomy: Z/7 generator set closes up") {
  RingPtr z7 = make_zmod(7);
  DichotomyReport rep = dichotomy_report(zmod_set(z7, {0, 1, 6}));
  CHECK(rep.Y.size() == 7);
  CHECK(rep.is_subring);
}

TEST_CASE("dichotomy: subring is its own Y") {
  RingPtr z8 = make_zmod(8);
  ElementSet sub = zmod_set(z8, {0, 2, 4, 6});
  DichotomyReport rep = dichotomy_report(sub);
  CHECK(rep.Y == sub);
  CHECK(rep.is_subring);
}

TEST_CASE("dichotomy: nilpotent matrix configuration is all zero divisors") {
  RingPtr m2 = make_matrix(make_zmod(3), 2);
  ElementSet X(m2);
  X.insert(m2->zero());
  X.insert(m2->parse("[[0,1],[0,0]]"));
  X.insert(m2->parse("[[0,2],[0,0]]"));  // -E12
  DichotomyReport rep = dichotomy_report(X);
  CHECK(rep.Y.size() == 3);  // {0, E12, 2E12}
  CHECK(rep.is_subring);
  CHECK(rep.zero_divisors == rep.Y);  // every element kills E12
  REQUIRE(rep.thickness_in_Y.has_value());
  CHECK(rep.thickness_in_Y->N == 2);
  CHECK(rep.growth_ratio >= 1);
}

TEST_CASE("Remark 7.7 inequality on exact thickness results") {
  // Whenever D is a subset of Y and the exact N is known, |D| >= |Y|/(N-1).
  SplitMix64 g(77);
  for (int t = 0; t < 12; ++t) {
    std::uint64_t n = 6 + g.below(7);  // Z/6 .. Z/12
    RingPtr zn = make_zmod(n);
    ElementSet Y(zn);
    for (std::uint64_t i = 0; i < n; ++i) Y.insert(zn->element_at(i));
    ElementSet D(zn);
    D.insert(zn->zero());
    for (int i = 0; i < 2; ++i) {
      Element e = zn->element_at(g.below(n));
      D.insert(e);
      D.insert(zn->neg(e));
    }
    ThicknessResult r = thickness(D, Y);
    REQUIRE(r.exact);
    REQUIRE(r.N >= 2);
    CHECK(mpq_class(static_cast<unsigned long>(D.size())) >=
          mpq_class(static_cast<unsigned long>(Y.size()),
                    static_cast<unsigned long>(r.N - 1)));
  }
}
