#include <doctest.h>

#include "apx/growth.hpp"
#include "oracles.hpp"

using namespace apx;
using oracle::int_set;

namespace {

ElementSet triangular_generators(const RingPtr& m3) {
  ElementSet X(m3);
  X.insert(m3->zero());
  X.insert(m3->parse("[[0,1,0],[0,0,0],[0,0,0]]"));
  X.insert(m3->parse("[[0,-1,0],[0,0,0],[0,0,0]]"));
  X.insert(m3->parse("[[0,0,0],[0,0,1],[0,0,0]]"));
  X.insert(m3->parse("[[0,0,0],[0,0,-1],[0,0,0]]"));
  return X;
}

// Independent count: the ball at level n consists of a E12 + b E23 + c E13
// with |a| + |b| + 2|c| <= n (an E13 needs a two-letter product).
std::uint64_t triangular_count(unsigned n) {
  std::uint64_t total = 0;
  for (long c = -static_cast<long>(n / 2); c <= static_cast<long>(n / 2);
       ++c) {
    long m = static_cast<long>(n) - 2 * std::labs(c);
    total += static_cast<std::uint64_t>(2 * m * m + 2 * m + 1);
  }
  return total;
}

}  // namespace

TEST_CASE("growth series of Z with X = {-1,0,1} is 2n+1") {
  RingPtr z = make_integers();
  GrowthSeries s = growth_series(z, int_set(z, {-1, 0, 1}), 60);
  REQUIRE(s.sizes.size() == 61);
  CHECK(s.sizes[0] == 1);
  for (unsigned n = 1; n <= 60; ++n) CHECK(s.sizes[n] == 2 * n + 1);
  CHECK(!s.truncated);
}

TEST_CASE("growth series of the zero ring is constant 1") {
  RingPtr z1 = make_zmod(1);
  ElementSet X(z1);
  X.insert(z1->zero());
  GrowthSeries s = growth_series(z1, X, 10);
  for (auto v : s.sizes) CHECK(v == 1);
  DegreeFit f = fit_degree(s);
  CHECK(f.degree == 0.0);
  CHECK(f.residual == 0.0);
}

TEST_CASE("triangular integer matrices grow like the lattice-point count") {
  RingPtr m3 = make_matrix(make_integers(), 3);
  ElementSet X = triangular_generators(m3);
  GrowthSeries s = growth_series(m3, X, 16);
  for (unsigned n = 0; n <= 16; ++n) CHECK(s.sizes[n] == triangular_count(n));
}

TEST_CASE("series sizes are monotone") {
  RingPtr z9 = make_zmod(9);
  ElementSet X = oracle::zmod_set(z9, {0, 1, 8});
  GrowthSeries s = growth_series(z9, X, 12);
  for (std::size_t n = 1; n < s.sizes.size(); ++n)
    CHECK(s.sizes[n] >= s.sizes[n - 1]);
}

TEST_CASE("fit_degree on the exact 2n+1 series") {
  GrowthSeries s;
  for (unsigned n = 0; n <= 200; ++n) s.sizes.push_back(2 * n + 1);
  DegreeFit f = fit_degree(s);
  CHECK(f.degree == doctest::Approx(1.0).epsilon(0.1));
  CHECK(!f.super_polynomial);
}

TEST_CASE("fit_degree flags exponential series") {
  GrowthSeries s;
  std::uint64_t v = 1;
  for (unsigned n = 0; n <= 40; ++n) {
    s.sizes.push_back(v);
    v *= 2;
  }
  DegreeFit f = fit_degree(s);
  CHECK(f.super_polynomial);
}

TEST_CASE("scale_finder on the linear series") {
  GrowthSeries s;
  for (unsigned n = 0; n <= 200; ++n) s.sizes.push_back(2 * n + 1);
  auto np = scale_finder(s, mpq_class(1), 1);
  REQUIRE(np.has_value());
  CHECK(*np == 1);  // 9 <= 8 * 3
}

TEST_CASE("scale_finder: exponential series has no scale for small d") {
  GrowthSeries s;
  double v = 4.0;
  for (unsigned n = 0; n <= 40; ++n) {
    s.sizes.push_back(static_cast<std::uint64_t>(v));
    v *= 1.9;
  }
  CHECK(!scale_finder(s, mpq_class(1, 2), 1).has_value());
}

TEST_CASE("scale_finder range errors and rational d") {
  GrowthSeries s;
  for (unsigned n = 0; n <= 20; ++n) s.sizes.push_back(n + 1);
  CHECK_THROWS_AS(scale_finder(s, mpq_class(1), 6), DomainError);
  // d = 3/2: comparison must be decided exactly.
  auto np = scale_finder(s, mpq_class(3, 2), 1);
  REQUIRE(np.has_value());
  CHECK(*np == 1);
}

TEST_CASE("Claim 1 shape: polynomial premise forces a scale in range") {
  // For every series the suite generates: if sizes[n] <= n^d * sizes[1] at
  // some n in range with n > 64 N^3, a scale n' in [N, n] exists.
  std::vector<GrowthSeries> corpus;
  {
    GrowthSeries a;
    for (unsigned n = 0; n <= 150; ++n) a.sizes.push_back(2 * n + 1);
    corpus.push_back(a);
    GrowthSeries b;
    for (unsigned n = 0; n <= 150; ++n) b.sizes.push_back((n + 1) * (n + 1));
    corpus.push_back(b);
    GrowthSeries c;
    for (unsigned n = 0; n <= 150; ++n) c.sizes.push_back(triangular_count(n));
    corpus.push_back(c);
  }
  unsigned N = 1;
  for (const GrowthSeries& s : corpus) {
    for (unsigned d = 1; d <= 4; ++d) {
      bool premise = false;
      for (unsigned n = 64 * N * N * N + 1; n < s.sizes.size(); ++n) {
        mpz_class lhs(static_cast<unsigned long>(s.sizes[n]));
        mpz_class rhs = mpz_pow(mpz_class(n), d) *
                        static_cast<unsigned long>(s.sizes[1]);
        if (lhs <= rhs) premise = true;
      }
      if (premise) {
        auto np = scale_finder(s, mpq_class(d), N);
        CHECK(np.has_value());
      }
    }
  }
}

TEST_CASE("gromov report on Z: interval X' with approx constant 2") {
  RingPtr z = make_integers();
  GromovOptions opts;
  opts.n_max = 40;
  opts.cover_mode = CoverMode::Exact;
  opts.quotient_modulus = 8;
  GromovReport rep = gromov_report(z, int_set(z, {-1, 0, 1}), opts);
  CHECK(rep.fit.degree == doctest::Approx(1.0).epsilon(0.1));
  CHECK(rep.d_used == 1);
  REQUIRE(rep.n_prime.has_value());
  CHECK(*rep.n_prime == 1);
  CHECK(rep.x_prime_size == 5);  // X' = {-2..2}
  REQUIRE(rep.approx.has_value());
  CHECK(rep.approx->K() == 2);
  CHECK(rep.within_c_of_d);
  // In the Z/8 quotient, <X'> = Z/8 which is not nilpotent, so the saturated
  // ideal carries the certificate with class 0.
  REQUIRE(rep.certificate.has_value());
  CHECK(rep.certificate->quotient_class == 0);
}

TEST_CASE("gromov report on the zero ring") {
  RingPtr z1 = make_zmod(1);
  ElementSet X(z1);
  X.insert(z1->zero());
  GromovOptions opts;
  opts.n_max = 8;
  GromovReport rep = gromov_report(z1, X, opts);
  REQUIRE(rep.certificate.has_value());
  CHECK(rep.certificate->quotient_class == 0);
  CHECK(rep.certificate->ideal.size() == 1);
}

TEST_CASE("gromov report: triangular matrices certify class 2 mod 8") {
  RingPtr m3 = make_matrix(make_integers(), 3);
  ElementSet X = triangular_generators(m3);
  GromovOptions opts;
  opts.n_max = 40;
  opts.class_max = 2;
  opts.quotient_modulus = 8;
  GromovReport rep = gromov_report(m3, X, opts);
  CHECK(rep.fit.residual < 0.05);
  CHECK(!rep.fit.super_polynomial);
  REQUIRE(rep.n_prime.has_value());
  REQUIRE(rep.certificate.has_value());
  CHECK(rep.certificate->quotient_class <= 2);
  CHECK(rep.within_c_of_d);
}

TEST_CASE("mod reduction of integer matrices") {
  RingPtr m3 = make_matrix(make_integers(), 3);
  RingPtr q = mod_reduction_ring(m3, 8);
  CHECK(q->size() == 134217728);  // 8^9, not enumerated
  Element e = m3->parse("[[0,9,0],[0,0,-1],[0,0,0]]");
  CHECK(q->encode(mod_reduce(m3, q, e)) == "[[0,1,0],[0,0,7],[0,0,0]]");
}
