#pragma once

// Growth-series analysis of finitely generated rings and the desk-scale
// polynomial-growth / nilpotency pipeline.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "apx/approx.hpp"
#include "apx/element_set.hpp"
#include "apx/structure.hpp"

namespace apx {

struct GrowthSeries {
  std::vector<std::uint64_t> sizes;  // sizes[n] = |X^{<=n}|, n = 0..n_max
  bool truncated = false;            // ran out of budget before n_max
  std::string generator_desc;
  std::string ambient_desc;
};

GrowthSeries growth_series(const RingPtr& ring, const ElementSet& X,
                           unsigned n_max,
                           std::uint64_t element_budget = 4'000'000);

struct DegreeFit {
  double degree = 0.0;
  double residual = 0.0;  // RMSE of log(size) against the fit
  bool super_polynomial = false;
  unsigned points_used = 0;
};

// Least-squares slope of log(size) vs log(n) over the series tail.
DegreeFit fit_degree(const GrowthSeries& series, double tail_fraction = 0.5);

// Smallest n' in [N, n_max/4] with sizes[4n'] <= 8^d * sizes[n'], decided
// exactly for rational d (integer comparisons after clearing the q-th root).
std::optional<unsigned> scale_finder(const GrowthSeries& series,
                                     const mpq_class& d, unsigned N);

struct GromovReport {
  GrowthSeries series;
  DegreeFit fit;
  unsigned d_used = 0;  // smallest positive integer >= fitted degree
  std::optional<unsigned> n_prime;
  std::uint64_t x_prime_size = 0;
  std::optional<ApproxReport> approx;  // of X' = 2 X^{<=n'}
  std::string c_of_d;                  // 8^{5d} + 8^{19d}
  bool within_c_of_d = false;
  std::optional<NilpotentCertificate> certificate;
  std::string certificate_ring;  // quotient used for certification
  bool torsion_free_assumed = false;  // recorded input flag, never verified
  std::string notes;
};

struct GromovOptions {
  unsigned n_max = 40;
  unsigned N = 1;
  unsigned class_max = 8;
  CoverMode cover_mode = CoverMode::Greedy;
  // Entrywise reduction modulus for certifying infinite ambients; ignored
  // for finite ambients.
  std::optional<std::uint64_t> quotient_modulus;
  bool torsion_free_flag = false;
  std::uint64_t element_budget = 4'000'000;
  std::uint64_t node_budget = 1'000'000;
};

GromovReport gromov_report(const RingPtr& ring, const ElementSet& X,
                           const GromovOptions& opts = {});

// Entrywise mod-m image of an integer or integer-matrix element (the finite
// quotient used to certify infinite ambients).
RingPtr mod_reduction_ring(const RingPtr& ring, std::uint64_t m);
Element mod_reduce(const RingPtr& src, const RingPtr& dst, const Element& e);

}  // namespace apx
