#pragma once

// Cut-and-project machinery: S-integer (Pisot) windows over real quadratic
// fields, generic lattice schemes with a ring structure, weak-model-set
// enumeration with exact boundary decisions, discreteness/syndeticity
// statistics, covering certificates on truncated clouds, span-ideal
// detection, and algebra-valued model sets.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "apx/cover.hpp"
#include "apx/element_set.hpp"
#include "apx/quadratic.hpp"

namespace apx {

// Exact embeddings of O_K, K = Q(sqrt(d)): sigma sends omega to the positive
// root, sigma' to the negative one. sigma(x) sigma'(x) is the field norm.
struct QuadFieldData {
  RingPtr ring;  // quadfield(d)
  unsigned long d = 2;
  bool half = false;  // omega = (1+sqrt d)/2

  QuadVal sigma(const Element& e) const;
  QuadVal sigma_conj(const Element& e) const;
  mpz_class field_norm(const Element& e) const;
};

QuadFieldData quad_field_data(unsigned long d);

struct CloudPoint {
  Element elem;                  // scheme element (exact arithmetic lives here)
  std::vector<QuadVal> direct;   // projection to the direct space
  std::vector<QuadVal> internal; // projection to the internal space
};

struct LatticeScheme;

struct PointCloud {
  RingPtr scheme_ring;  // quadfield(d) or the lattice coefficient ring
  unsigned dA = 1;
  unsigned dB = 1;
  std::vector<CloudPoint> points;
  mpq_class truncation_R;
  std::string window_desc;
  // Exactly one of these identifies the scheme (needed to project sums and
  // products of cloud points back to coordinates).
  std::shared_ptr<const QuadFieldData> quad_scheme;
  std::shared_ptr<const LatticeScheme> lattice_scheme;

  ElementSet member_set() const;
  std::vector<QuadVal> direct_of(const Element& e) const;
  std::vector<std::string> direct_encodings_sorted() const;
};

// {x in O_K : |sigma(x)| <= R, |sigma'(x)| <= w}, enumerated exactly.
PointCloud pisot_window(const QuadFieldData& field, const mpq_class& w,
                        const mpq_class& R,
                        std::uint64_t point_budget = 2'000'000);

// ---------------------------------------------------------------------------
// Generic lattice scheme: a rank-m lattice in R^{dA} x R^{dB} with exact
// QuadVal coordinates (d = 0 means rational) and integer structure constants
// making the lattice a subring.

struct WindowSpec {
  enum class Shape { Box, Ball };
  Shape shape = Shape::Box;
  std::vector<mpq_class> half_widths;  // per internal coordinate (Box)
  mpq_class radius = 0;                // Ball
  bool bounded() const;
  std::string describe() const;
};

struct LatticeScheme {
  unsigned dA = 1;
  unsigned dB = 1;
  unsigned long d = 0;  // quadratic field of the coordinates; 0 = rational
  // m = dA + dB basis vectors, each with dA+dB coordinates (direct first).
  std::vector<std::vector<QuadVal>> basis;
  // Integer structure constants: v_i * v_j = sum_k mul[i][j][k] v_k.
  std::vector<std::vector<std::vector<mpz_class>>> mul;
};

struct ModelSetSpec {
  LatticeScheme scheme;
  WindowSpec window;
  mpq_class truncation_R;
};

// Enumerates lattice points with internal coordinates in the window and
// direct coordinates in the truncation box; verifies the projection to the
// direct space is injective on the enumerated set.
PointCloud model_set(const ModelSetSpec& spec,
                     std::uint64_t point_budget = 2'000'000);

// ---------------------------------------------------------------------------
// Statistics

struct CloudStats {
  std::size_t count = 0;
  std::optional<QuadVal> min_gap_squared;  // absent for single-point clouds
  std::optional<double> min_gap;
  std::optional<double> max_gap;  // syndeticity proxy on the interior
  mpq_class density;              // count / measure of the truncated region
};

// margin: interior margin excluded when measuring max-gap; grid_step: grid
// spacing for direct dimensions >= 2.
CloudStats cloud_stats(const PointCloud& cloud, const mpq_class& margin = 0,
                       const mpq_class& grid_step = 1);

// ---------------------------------------------------------------------------
// Covering certificates on clouds

struct CloudCoverReport {
  CoverCertificate certificate;
  std::size_t restricted_points = 0;  // |M'|
  std::size_t target_points = 0;      // |(M'+M') u M'M'|
  std::size_t targets_outside_truncation = 0;
};

// Covers (M'+M') u M'M' by translates of M, where M' is the cloud restricted
// to direct radius R - margin. Sums and products are computed through the
// scheme, never on projected approximations.
CloudCoverReport approx_check_cloud(const PointCloud& cloud,
                                    const mpq_class& margin,
                                    std::uint64_t node_budget = 1'000'000);

struct WindowCommensurability {
  CoverCertificate narrow_by_wide;  // w1-cloud interior covered by w2-cloud
  CoverCertificate wide_by_narrow;  // w2-cloud interior covered by w1-cloud
};

WindowCommensurability window_commensurability(
    const QuadFieldData& field, const mpq_class& w1, const mpq_class& w2,
    const mpq_class& R, const mpq_class& margin,
    std::uint64_t node_budget = 1'000'000);

// ---------------------------------------------------------------------------
// Span ideal (the direct-space ideal meeting the cloud, Schreiber style)

struct SpanIdealReport {
  unsigned dim = 0;                         // dim V
  std::vector<std::vector<QuadVal>> basis;  // row-echelon basis of V
  bool left_ideal = true;
  bool right_ideal = true;
  std::string violation;
  double grid_defect = 0.0;  // max distance from sampled V-grid points to cloud
};

// algebra_mul: structure constants of the direct-space algebra,
// e_i e_j = sum_k c[i][j][k] e_k, rational entries.
SpanIdealReport span_ideal(
    const PointCloud& cloud,
    const std::vector<std::vector<std::vector<mpq_class>>>& algebra_mul,
    int grid_range = 2);

// ---------------------------------------------------------------------------
// Matrix/algebra model sets: sum of O_{K,v} multiples of basis elements

struct AlgebraCloudReport {
  PointCloud cloud;  // direct coords = (sigma(alpha_1) ... sigma(alpha_dim))
  std::size_t pairs_sampled = 0;
  std::size_t pairs_in_w2_window = 0;
  std::size_t pairs_excluded = 0;  // product escaped the direct truncation
  bool closure_ok = true;
};

// Enumerates { sum alpha_i e_i : alpha_i in the (w, R) Pisot window } with
// coordinate Frobenius norm <= R; samples products and certifies their
// coefficients stay inside the w^2-window.
AlgebraCloudReport algebra_model_set(
    const QuadFieldData& field, const mpq_class& w, const mpq_class& R,
    const std::vector<std::vector<std::vector<mpz_class>>>& algebra_mul,
    unsigned sample_pairs = 64, std::uint64_t seed = 1,
    std::uint64_t point_budget = 2'000'000);

}  // namespace apx
