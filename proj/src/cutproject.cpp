#include "apx/cutproject.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace apx {

// ---------------------------------------------------------------------------
// Quadratic field embeddings

QuadFieldData quad_field_data(unsigned long d) {
  QuadFieldData f;
  f.ring = make_quadfield(d);
  f.d = d;
  f.half = quad_basis(*f.ring).half;
  return f;
}

QuadVal QuadFieldData::sigma(const Element& e) const {
  const auto& q = e.quad();
  if (!half) return QuadVal(mpq_class(q.a), mpq_class(q.b), d);
  // omega = (1 + sqrt d)/2
  return QuadVal(mpq_class(q.a) + mpq_class(q.b) / 2, mpq_class(q.b) / 2, d);
}

QuadVal QuadFieldData::sigma_conj(const Element& e) const {
  return sigma(e).conj();
}

mpz_class QuadFieldData::field_norm(const Element& e) const {
  QuadVal n = sigma(e) * sigma_conj(e);
  if (n.q != 0 || n.p.get_den() != 1)
    throw DomainError("field_norm: not an integer (non-integral element)");
  return n.p.get_num();
}

// ---------------------------------------------------------------------------
// PointCloud helpers

ElementSet PointCloud::member_set() const {
  ElementSet s(scheme_ring);
  for (const CloudPoint& p : points) s.insert_unchecked(p.elem);
  return s;
}

std::vector<QuadVal> PointCloud::direct_of(const Element& e) const {
  if (quad_scheme) return {quad_scheme->sigma(e)};
  if (!lattice_scheme) throw DomainError("PointCloud: no scheme attached");
  const LatticeScheme& L = *lattice_scheme;
  unsigned n = L.dA + L.dB;
  std::vector<QuadVal> x(L.dA, QuadVal(mpq_class(0), mpq_class(0), L.d));
  const Element::List& z = e.list();
  for (unsigned i = 0; i < L.dA; ++i)
    for (unsigned k = 0; k < n; ++k)
      x[i] = x[i] + L.basis[k][i] * QuadVal(mpq_class(z[k].integer()),
                                            mpq_class(0), L.d);
  return x;
}

std::vector<std::string> PointCloud::direct_encodings_sorted() const {
  std::vector<std::string> out;
  for (const CloudPoint& p : points) {
    std::string s;
    for (std::size_t i = 0; i < p.direct.size(); ++i)
      s += (i ? " " : "") + p.direct[i].str();
    out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

static void sort_cloud(PointCloud& cloud) {
  std::sort(cloud.points.begin(), cloud.points.end(),
            [](const CloudPoint& a, const CloudPoint& b) {
              for (std::size_t i = 0; i < a.direct.size(); ++i) {
                int c = a.direct[i].cmp(b.direct[i]);
                if (c != 0) return c < 0;
              }
              return a.elem < b.elem;
            });
}

// ---------------------------------------------------------------------------
// Pisot / S-integer windows

PointCloud pisot_window(const QuadFieldData& field, const mpq_class& w,
                        const mpq_class& R, std::uint64_t point_budget) {
  if (w <= 0 || R <= 0) throw DomainError("pisot_window: w, R must be > 0");
  PointCloud cloud;
  cloud.scheme_ring = field.ring;
  cloud.dA = 1;
  cloud.dB = 1;
  cloud.truncation_R = R;
  cloud.window_desc = "|sigma'(x)| <= " + mpq_str(w);
  cloud.quad_scheme = std::make_shared<QuadFieldData>(field);

  const Ring& ring = *field.ring;
  QuadVal omega = field.half
                      ? QuadVal(mpq_class(1, 2), mpq_class(1, 2), field.d)
                      : QuadVal(mpq_class(0), mpq_class(1), field.d);
  QuadVal omega_conj = omega.conj();
  QuadVal delta = omega - omega_conj;  // positive
  // |b| delta = |sigma - sigma'| <= R + w.
  QuadVal bmax_val = QuadVal(R + w, mpq_class(0), field.d) / delta;
  mpz_class bmax = bmax_val.floor();
  QuadVal Rv(R, mpq_class(0), field.d), wv(w, mpq_class(0), field.d);

  for (mpz_class b = -bmax; b <= bmax; ++b) {
    QuadVal bw = QuadVal(mpq_class(b), mpq_class(0), field.d) * omega;
    QuadVal bwc = QuadVal(mpq_class(b), mpq_class(0), field.d) * omega_conj;
    // a + b*omega in [-R, R] and a + b*omega_conj in [-w, w].
    QuadVal lo1 = -Rv - bw, hi1 = Rv - bw;
    QuadVal lo2 = -wv - bwc, hi2 = wv - bwc;
    QuadVal lo = (lo1.cmp(lo2) >= 0) ? lo1 : lo2;
    QuadVal hi = (hi1.cmp(hi2) <= 0) ? hi1 : hi2;
    for (mpz_class a = lo.ceil(); a <= hi.floor(); ++a) {
      Element x(field.ring.get(), Element::Quad{a, b});
      QuadVal s = field.sigma(x), sc = field.sigma_conj(x);
      if (s.abs() > Rv || sc.abs() > wv)
        throw DomainError("pisot_window: internal bound error");
      cloud.points.push_back(CloudPoint{x, {s}, {sc}});
      if (cloud.points.size() > point_budget)
        throw BudgetError("pisot_window: region too large for point budget");
    }
  }
  sort_cloud(cloud);
  return cloud;
}

// ---------------------------------------------------------------------------
// Lattice coefficient ring

namespace {

class FreeModuleRing final : public Ring {
 public:
  FreeModuleRing(unsigned rank,
                 std::vector<std::vector<std::vector<mpz_class>>> mul)
      : Ring(Kind::Product), rank_(rank), mul_(std::move(mul)) {
    if (mul_.size() != rank_)
      throw SpecError("lattice: structure constants must be rank x rank x rank");
    for (const auto& row : mul_) {
      if (row.size() != rank_) throw SpecError("lattice: bad structure row");
      for (const auto& cell : row)
        if (cell.size() != rank_)
          throw SpecError("lattice: bad structure cell");
    }
  }

  std::string describe() const override {
    return "{\"kind\":\"lattice-coefficients\",\"rank\":" +
           std::to_string(rank_) + "}";
  }
  bool is_finite() const override { return false; }
  Element zero() const override {
    Element::List t(rank_);
    for (auto& e : t) e = Element(nullptr, mpz_class(0));
    return Element(this, std::move(t));
  }
  Element add(const Element& a, const Element& b) const override {
    Element::List t(rank_);
    for (unsigned i = 0; i < rank_; ++i)
      t[i] = Element(nullptr, mpz_class(a.list()[i].integer() +
                                        b.list()[i].integer()));
    return Element(this, std::move(t));
  }
  Element neg(const Element& a) const override {
    Element::List t(rank_);
    for (unsigned i = 0; i < rank_; ++i)
      t[i] = Element(nullptr, mpz_class(-a.list()[i].integer()));
    return Element(this, std::move(t));
  }
  Element mul(const Element& a, const Element& b) const override {
    std::vector<mpz_class> acc(rank_, mpz_class(0));
    for (unsigned i = 0; i < rank_; ++i) {
      if (a.list()[i].integer() == 0) continue;
      for (unsigned j = 0; j < rank_; ++j) {
        if (b.list()[j].integer() == 0) continue;
        mpz_class prod = a.list()[i].integer() * b.list()[j].integer();
        for (unsigned k = 0; k < rank_; ++k)
          if (mul_[i][j][k] != 0) acc[k] += prod * mul_[i][j][k];
      }
    }
    Element::List t(rank_);
    for (unsigned i = 0; i < rank_; ++i)
      t[i] = Element(nullptr, std::move(acc[i]));
    return Element(this, std::move(t));
  }
  bool contains(const Element& e) const override {
    if (!std::holds_alternative<Element::List>(e.payload())) return false;
    if (e.list().size() != rank_) return false;
    for (const Element& x : e.list())
      if (!std::holds_alternative<mpz_class>(x.payload())) return false;
    return true;
  }
  std::optional<mpz_class> additive_order(const Element& a) const override {
    for (const Element& x : a.list())
      if (x.integer() != 0) return std::nullopt;
    return mpz_class(1);
  }
  std::string encode(const Element& e) const override {
    std::string s = "(";
    for (unsigned i = 0; i < rank_; ++i)
      s += (i ? "," : "") + e.list()[i].integer().get_str();
    return s + ")";
  }
  Element parse(const std::string& text) const override {
    std::string s = text;
    if (s.size() < 2 || s.front() != '(' || s.back() != ')')
      throw SpecError("lattice coefficient parse: expected (...)");
    s = s.substr(1, s.size() - 2);
    Element::List t;
    std::size_t pos = 0;
    while (pos <= s.size()) {
      std::size_t comma = s.find(',', pos);
      std::string cell = s.substr(
          pos, comma == std::string::npos ? std::string::npos : comma - pos);
      t.push_back(Element(nullptr, mpz_class(cell)));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (t.size() != rank_) throw SpecError("lattice coefficient parse: arity");
    return Element(this, std::move(t));
  }

 private:
  unsigned rank_;
  std::vector<std::vector<std::vector<mpz_class>>> mul_;
};

// Gauss-Jordan inverse over the exact field Q(sqrt d).
std::vector<std::vector<QuadVal>> invert(
    std::vector<std::vector<QuadVal>> m, unsigned long d) {
  unsigned n = static_cast<unsigned>(m.size());
  std::vector<std::vector<QuadVal>> inv(
      n, std::vector<QuadVal>(n, QuadVal(mpq_class(0), mpq_class(0), d)));
  for (unsigned i = 0; i < n; ++i) inv[i][i] = QuadVal(mpq_class(1), 0, d);
  for (unsigned col = 0; col < n; ++col) {
    unsigned pivot = col;
    while (pivot < n && m[pivot][col].sign() == 0) ++pivot;
    if (pivot == n) throw SpecError("lattice basis is singular");
    std::swap(m[pivot], m[col]);
    std::swap(inv[pivot], inv[col]);
    QuadVal p = m[col][col];
    for (unsigned j = 0; j < n; ++j) {
      m[col][j] = m[col][j] / p;
      inv[col][j] = inv[col][j] / p;
    }
    for (unsigned r = 0; r < n; ++r) {
      if (r == col || m[r][col].sign() == 0) continue;
      QuadVal f = m[r][col];
      for (unsigned j = 0; j < n; ++j) {
        m[r][j] = m[r][j] - f * m[col][j];
        inv[r][j] = inv[r][j] - f * inv[col][j];
      }
    }
  }
  return inv;
}

}  // namespace

bool WindowSpec::bounded() const {
  if (shape == Shape::Ball) return radius > 0;
  if (half_widths.empty()) return false;
  for (const auto& h : half_widths)
    if (h <= 0) return false;
  return true;
}

std::string WindowSpec::describe() const {
  if (shape == Shape::Ball) return "ball r = " + mpq_str(radius);
  std::string s = "box";
  for (const auto& h : half_widths) s += " " + mpq_str(h);
  return s;
}

PointCloud model_set(const ModelSetSpec& spec, std::uint64_t point_budget) {
  const LatticeScheme& L = spec.scheme;
  unsigned n = L.dA + L.dB;
  if (L.basis.size() != n)
    throw SpecError("model_set: need dA+dB basis vectors (full lattice)");
  for (const auto& v : L.basis)
    if (v.size() != n) throw SpecError("model_set: basis coordinate arity");
  if (!spec.window.bounded())
    throw DomainError("model_set: window must be bounded with nonempty interior");
  if (spec.window.shape == WindowSpec::Shape::Box &&
      spec.window.half_widths.size() != L.dB)
    throw SpecError("model_set: window arity != dB");
  if (spec.truncation_R <= 0) throw DomainError("model_set: truncation R > 0");

  // Columns of M are the basis vectors: x = M z.
  std::vector<std::vector<QuadVal>> M(
      n, std::vector<QuadVal>(n, QuadVal(mpq_class(0), mpq_class(0), L.d)));
  for (unsigned k = 0; k < n; ++k)
    for (unsigned i = 0; i < n; ++i) M[i][k] = L.basis[k][i];
  auto Minv = invert(M, L.d);

  // Bounding box of the preimage of the direct x window box.
  std::vector<mpq_class> box_hw(n);
  for (unsigned i = 0; i < L.dA; ++i) box_hw[i] = spec.truncation_R;
  for (unsigned i = 0; i < L.dB; ++i)
    box_hw[L.dA + i] = spec.window.shape == WindowSpec::Shape::Box
                           ? spec.window.half_widths[i]
                           : spec.window.radius;
  std::vector<mpz_class> zlo(n), zhi(n);
  bool first_corner = true;
  std::vector<QuadVal> zmin(n, QuadVal()), zmax(n, QuadVal());
  for (unsigned corner = 0; corner < (1u << n); ++corner) {
    std::vector<QuadVal> x(n);
    for (unsigned i = 0; i < n; ++i) {
      mpq_class c = (corner >> i) & 1 ? box_hw[i] : -box_hw[i];
      x[i] = QuadVal(c, mpq_class(0), L.d);
    }
    for (unsigned i = 0; i < n; ++i) {
      QuadVal zi(mpq_class(0), mpq_class(0), L.d);
      for (unsigned j = 0; j < n; ++j) zi = zi + Minv[i][j] * x[j];
      if (first_corner || zi.cmp(zmin[i]) < 0) zmin[i] = zi;
      if (first_corner || zi.cmp(zmax[i]) > 0) zmax[i] = zi;
    }
    first_corner = false;
  }
  for (unsigned i = 0; i < n; ++i) {
    zlo[i] = zmin[i].ceil();
    zhi[i] = zmax[i].floor();
  }

  RingPtr coeff_ring = std::make_shared<FreeModuleRing>(n, L.mul);
  PointCloud cloud;
  cloud.scheme_ring = coeff_ring;
  cloud.dA = L.dA;
  cloud.dB = L.dB;
  cloud.truncation_R = spec.truncation_R;
  cloud.window_desc = spec.window.describe();
  cloud.lattice_scheme = std::make_shared<LatticeScheme>(L);

  QuadVal Rv(spec.truncation_R, mpq_class(0), L.d);
  std::vector<mpz_class> z(n);
  for (unsigned i = 0; i < n; ++i) z[i] = zlo[i];
  std::uint64_t visited = 0;
  std::map<std::string, std::size_t> direct_seen;
  for (;;) {
    if (++visited > point_budget)
      throw BudgetError("model_set: point budget exceeded");
    // x = M z, exact.
    std::vector<QuadVal> x(n, QuadVal(mpq_class(0), mpq_class(0), L.d));
    for (unsigned i = 0; i < n; ++i)
      for (unsigned k = 0; k < n; ++k)
        x[i] = x[i] + M[i][k] * QuadVal(mpq_class(z[k]), mpq_class(0), L.d);
    bool ok = true;
    for (unsigned i = 0; i < L.dA && ok; ++i)
      if (x[i].abs() > Rv) ok = false;
    if (ok) {
      if (spec.window.shape == WindowSpec::Shape::Box) {
        for (unsigned i = 0; i < L.dB && ok; ++i)
          if (x[L.dA + i].abs() >
              QuadVal(spec.window.half_widths[i], mpq_class(0), L.d))
            ok = false;
      } else {
        QuadVal ss(mpq_class(0), mpq_class(0), L.d);
        for (unsigned i = 0; i < L.dB; ++i)
          ss = ss + x[L.dA + i] * x[L.dA + i];
        if (ss > QuadVal(spec.window.radius * spec.window.radius,
                         mpq_class(0), L.d))
          ok = false;
      }
    }
    if (ok) {
      Element::List t(n);
      for (unsigned i = 0; i < n; ++i) t[i] = Element(nullptr, z[i]);
      Element elem(coeff_ring.get(), std::move(t));
      CloudPoint p;
      p.elem = elem;
      p.direct.assign(x.begin(), x.begin() + L.dA);
      p.internal.assign(x.begin() + L.dA, x.end());
      std::string key;
      for (const auto& v : p.direct) key += v.str() + "|";
      auto [it, inserted] = direct_seen.emplace(key, cloud.points.size());
      if (!inserted)
        throw DomainError(
            "model_set: projection collision, lattice points " +
            coeff_ring->encode(cloud.points[it->second].elem) + " and " +
            coeff_ring->encode(elem) + " share direct image " + key);
      cloud.points.push_back(std::move(p));
    }
    // Odometer step.
    unsigned i = 0;
    for (; i < n; ++i) {
      if (z[i] < zhi[i]) {
        ++z[i];
        break;
      }
      z[i] = zlo[i];
    }
    if (i == n) break;
  }
  sort_cloud(cloud);
  return cloud;
}

// ---------------------------------------------------------------------------
// Statistics

CloudStats cloud_stats(const PointCloud& cloud, const mpq_class& margin,
                       const mpq_class& grid_step) {
  if (cloud.points.empty()) throw DomainError("cloud_stats: empty cloud");
  CloudStats st;
  st.count = cloud.points.size();

  unsigned long d = cloud.points[0].direct[0].d;
  auto dist_sq = [&](const CloudPoint& a, const CloudPoint& b) {
    QuadVal s(mpq_class(0), mpq_class(0), d);
    for (std::size_t i = 0; i < a.direct.size(); ++i) {
      QuadVal diff = a.direct[i] - b.direct[i];
      s = s + diff * diff;
    }
    return s;
  };

  if (st.count >= 2) {
    std::optional<QuadVal> best;
    if (cloud.dA == 1) {
      // Sorted by the single coordinate: nearest pairs are consecutive.
      for (std::size_t i = 0; i + 1 < cloud.points.size(); ++i) {
        QuadVal g = dist_sq(cloud.points[i], cloud.points[i + 1]);
        if (!best || g < *best) best = g;
      }
    } else {
      for (std::size_t i = 0; i < cloud.points.size(); ++i)
        for (std::size_t j = i + 1; j < cloud.points.size(); ++j) {
          QuadVal g = dist_sq(cloud.points[i], cloud.points[j]);
          if (!best || g < *best) best = g;
        }
    }
    st.min_gap_squared = best;
    st.min_gap = std::sqrt(best->to_double());
  }

  // Syndeticity proxy: largest nearest-neighbor gap over the truncation
  // interior (margin excluded, so boundary effects do not show up as gaps).
  mpq_class inner = cloud.truncation_R - margin;
  if (inner > 0 && st.count >= 2) {
    QuadVal innerv(inner, mpq_class(0), d);
    if (cloud.dA == 1) {
      std::vector<const CloudPoint*> in;
      for (const auto& p : cloud.points)
        if (p.direct[0].abs() <= innerv) in.push_back(&p);
      double best = 0;
      for (std::size_t i = 0; i + 1 < in.size(); ++i) {
        double g = (in[i + 1]->direct[0] - in[i]->direct[0]).to_double();
        best = std::max(best, g);
      }
      if (in.size() >= 2) st.max_gap = best;
    } else {
      // Rational grid scan of the interior box.
      if (grid_step <= 0) throw DomainError("cloud_stats: grid_step > 0");
      double best = 0;
      std::vector<mpq_class> coord(cloud.dA, -inner);
      for (;;) {
        QuadVal min_d(mpq_class(0), mpq_class(0), d);
        bool first = true;
        for (const auto& p : cloud.points) {
          QuadVal s(mpq_class(0), mpq_class(0), d);
          for (unsigned i = 0; i < cloud.dA; ++i) {
            QuadVal diff = p.direct[i] - QuadVal(coord[i], mpq_class(0), d);
            s = s + diff * diff;
          }
          if (first || s < min_d) {
            min_d = s;
            first = false;
          }
        }
        best = std::max(best, std::sqrt(min_d.to_double()));
        unsigned i = 0;
        for (; i < cloud.dA; ++i) {
          coord[i] += grid_step;
          if (coord[i] <= inner) break;
          coord[i] = -inner;
        }
        if (i == cloud.dA) break;
      }
      st.max_gap = best;
    }
  }

  mpq_class volume = 1;
  for (unsigned i = 0; i < cloud.dA; ++i) volume *= 2 * cloud.truncation_R;
  st.density = mpq_class(static_cast<unsigned long>(st.count)) / volume;
  st.density.canonicalize();
  return st;
}

// ---------------------------------------------------------------------------
// Cover certificates on clouds

namespace {

ElementSet restrict_to_radius(const PointCloud& cloud, const mpq_class& r) {
  ElementSet s(cloud.scheme_ring);
  unsigned long d = cloud.points.empty() ? 0 : cloud.points[0].direct[0].d;
  QuadVal rv(r, mpq_class(0), d);
  for (const CloudPoint& p : cloud.points) {
    bool in = true;
    for (const QuadVal& x : p.direct)
      if (x.abs() > rv) {
        in = false;
        break;
      }
    if (in) s.insert_unchecked(p.elem);
  }
  return s;
}

}  // namespace

CloudCoverReport approx_check_cloud(const PointCloud& cloud,
                                    const mpq_class& margin,
                                    std::uint64_t node_budget) {
  if (margin <= 0) throw DomainError("approx_check_cloud: margin must be > 0");
  if (2 * (cloud.truncation_R - margin) > cloud.truncation_R)
    throw DomainError(
        "approx_check_cloud: margin too small, sums of interior points "
        "escape the enumerated range");
  CloudCoverReport rep;
  ElementSet M = cloud.member_set();
  ElementSet Mp = restrict_to_radius(cloud, cloud.truncation_R - margin);
  rep.restricted_points = Mp.size();
  if (Mp.empty())
    throw DomainError("approx_check_cloud: margin leaves no interior points");

  ElementSet target = sumset(Mp, Mp).unioned(productset(Mp, Mp));
  rep.target_points = target.size();
  unsigned long d = cloud.points.empty() ? 0 : cloud.points[0].direct[0].d;
  QuadVal Rv(cloud.truncation_R, mpq_class(0), d);
  target.for_each([&](const Element& e) {
    for (const QuadVal& x : cloud.direct_of(e))
      if (x.abs() > Rv) {
        ++rep.targets_outside_truncation;
        return;
      }
  });

  // Candidate pool: target minus a central slice of M. Every target t stays
  // coverable (t = (t - m) + m for central m), and the pool is a fraction of
  // the full t - M difference set.
  std::vector<CloudPoint> by_radius = cloud.points;
  std::sort(by_radius.begin(), by_radius.end(),
            [](const CloudPoint& a, const CloudPoint& b) {
              QuadVal ra = a.direct[0].abs(), rb = b.direct[0].abs();
              int c = ra.cmp(rb);
              if (c != 0) return c < 0;
              return a.elem < b.elem;
            });
  ElementSet central(cloud.scheme_ring);
  for (std::size_t i = 0; i < by_radius.size() && central.size() < 16; ++i)
    central.insert_unchecked(by_radius[i].elem);
  ElementSet pool = sumset(target, central.negated());

  CoverOptions opts;
  opts.mode = CoverMode::Greedy;
  opts.node_budget = node_budget;
  opts.pool = pool;
  opts.target_tag = "(M'+M') u M'M'";
  opts.cover_tag = "M";
  rep.certificate = cover_number(target, M, opts);
  return rep;
}

WindowCommensurability window_commensurability(const QuadFieldData& field,
                                               const mpq_class& w1,
                                               const mpq_class& w2,
                                               const mpq_class& R,
                                               const mpq_class& margin,
                                               std::uint64_t node_budget) {
  if (w1 <= 0 || w2 <= 0 || R <= 0)
    throw DomainError("window_commensurability: w1, w2, R must be > 0");
  PointCloud c1 = pisot_window(field, w1, R);
  PointCloud c2 = pisot_window(field, w2, R);
  ElementSet m1 = restrict_to_radius(c1, R - margin);
  ElementSet m2 = restrict_to_radius(c2, R - margin);
  ElementSet full1 = c1.member_set();
  ElementSet full2 = c2.member_set();
  CoverOptions o1;
  o1.mode = CoverMode::Greedy;
  o1.node_budget = node_budget;
  o1.target_tag = "w1-cloud interior";
  o1.cover_tag = "w2-cloud";
  CoverOptions o2 = o1;
  o2.target_tag = "w2-cloud interior";
  o2.cover_tag = "w1-cloud";
  return WindowCommensurability{cover_number(m1, full2, o1),
                                cover_number(m2, full1, o2)};
}

// ---------------------------------------------------------------------------
// Span ideal

namespace {

struct Echelon {
  std::vector<std::vector<QuadVal>> rows;
  std::vector<std::size_t> pivots;
  unsigned long d;

  // Reduces v against the rows; returns the residual.
  std::vector<QuadVal> reduce(std::vector<QuadVal> v) const {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      QuadVal f = v[pivots[r]];
      if (f.sign() == 0) continue;
      for (std::size_t j = 0; j < v.size(); ++j)
        v[j] = v[j] - f * rows[r][j];
    }
    return v;
  }

  bool insert(std::vector<QuadVal> v) {  // true if rank grew
    v = reduce(std::move(v));
    std::size_t p = v.size();
    for (std::size_t j = 0; j < v.size(); ++j)
      if (v[j].sign() != 0) {
        p = j;
        break;
      }
    if (p == v.size()) return false;
    QuadVal piv = v[p];
    for (auto& x : v) x = x / piv;
    rows.push_back(std::move(v));
    pivots.push_back(p);
    // Keep row order by pivot for determinism.
    for (std::size_t r = rows.size(); r-- > 1;)
      if (pivots[r] < pivots[r - 1]) {
        std::swap(pivots[r], pivots[r - 1]);
        std::swap(rows[r], rows[r - 1]);
      }
    return true;
  }

  bool contains(std::vector<QuadVal> v) const {
    v = reduce(std::move(v));
    for (const auto& x : v)
      if (x.sign() != 0) return false;
    return true;
  }
};

}  // namespace

SpanIdealReport span_ideal(
    const PointCloud& cloud,
    const std::vector<std::vector<std::vector<mpq_class>>>& algebra_mul,
    int grid_range) {
  if (cloud.points.empty()) throw DomainError("span_ideal: empty cloud");
  unsigned dim = cloud.dA;
  if (algebra_mul.size() != dim)
    throw DomainError("span_ideal: inconsistent algebra dimensions");
  unsigned long d = cloud.points[0].direct[0].d;

  Echelon ech;
  ech.d = d;
  for (const CloudPoint& p : cloud.points) ech.insert(p.direct);

  auto alg_mul = [&](const std::vector<QuadVal>& u,
                     const std::vector<QuadVal>& v) {
    std::vector<QuadVal> w(dim, QuadVal(mpq_class(0), mpq_class(0), d));
    for (unsigned i = 0; i < dim; ++i) {
      if (u[i].sign() == 0) continue;
      for (unsigned j = 0; j < dim; ++j) {
        if (v[j].sign() == 0) continue;
        QuadVal prod = u[i] * v[j];
        for (unsigned k = 0; k < dim; ++k)
          if (algebra_mul[i][j][k] != 0)
            w[k] = w[k] + prod * QuadVal(algebra_mul[i][j][k], mpq_class(0), d);
      }
    }
    return w;
  };

  SpanIdealReport rep;
  rep.dim = static_cast<unsigned>(ech.rows.size());
  rep.basis = ech.rows;
  for (const CloudPoint& p : cloud.points) {
    for (const auto& row : ech.rows) {
      if (!ech.contains(alg_mul(p.direct, row))) {
        rep.left_ideal = false;
        rep.violation = "lambda*V escapes for a cloud point";
      }
      if (!ech.contains(alg_mul(row, p.direct))) {
        rep.right_ideal = false;
        rep.violation = "V*lambda escapes for a cloud point";
      }
    }
    if (!rep.left_ideal && !rep.right_ideal) break;
  }

  // Compactness defect: distance from a sample of V-grid points (inside the
  // truncation box) to the cloud.
  if (!ech.rows.empty() && grid_range > 0) {
    QuadVal Rv(cloud.truncation_R, mpq_class(0), d);
    std::vector<int> t(ech.rows.size(), -grid_range);
    double worst = 0.0;
    for (;;) {
      std::vector<QuadVal> g(dim, QuadVal(mpq_class(0), mpq_class(0), d));
      for (std::size_t r = 0; r < ech.rows.size(); ++r)
        for (unsigned j = 0; j < dim; ++j)
          g[j] = g[j] + QuadVal(mpq_class(t[r]), mpq_class(0), d) *
                            ech.rows[r][j];
      bool inside = true;
      for (const QuadVal& x : g)
        if (x.abs() > Rv) inside = false;
      if (inside) {
        bool first = true;
        QuadVal best(mpq_class(0), mpq_class(0), d);
        for (const CloudPoint& p : cloud.points) {
          QuadVal s(mpq_class(0), mpq_class(0), d);
          for (unsigned j = 0; j < dim; ++j) {
            QuadVal diff = p.direct[j] - g[j];
            s = s + diff * diff;
          }
          if (first || s < best) {
            best = s;
            first = false;
          }
        }
        worst = std::max(worst, std::sqrt(best.to_double()));
      }
      std::size_t i = 0;
      for (; i < t.size(); ++i) {
        if (t[i] < grid_range) {
          ++t[i];
          break;
        }
        t[i] = -grid_range;
      }
      if (i == t.size()) break;
    }
    rep.grid_defect = worst;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Algebra model sets

AlgebraCloudReport algebra_model_set(
    const QuadFieldData& field, const mpq_class& w, const mpq_class& R,
    const std::vector<std::vector<std::vector<mpz_class>>>& algebra_mul,
    unsigned sample_pairs, std::uint64_t seed, std::uint64_t point_budget) {
  unsigned dim = static_cast<unsigned>(algebra_mul.size());
  if (dim == 0) throw DomainError("algebra_model_set: empty basis");
  PointCloud window_points = pisot_window(field, w, R, point_budget);
  std::size_t wn = window_points.points.size();

  // Product ring of dim quadfield copies carries the coefficient tuples.
  std::vector<RingPtr> factors(dim, field.ring);
  RingPtr tuple_ring = make_product(factors);

  AlgebraCloudReport rep;
  rep.cloud.scheme_ring = tuple_ring;
  rep.cloud.dA = dim;
  rep.cloud.dB = dim;
  rep.cloud.truncation_R = R;
  rep.cloud.window_desc = "entrywise |sigma'| <= " + mpq_str(w) +
                          ", coordinate Frobenius norm <= " + mpq_str(R);

  unsigned long d = field.d;
  QuadVal R2(R * R, mpq_class(0), d);
  std::vector<std::size_t> idx(dim, 0);
  std::uint64_t visited = 0;
  for (;;) {
    if (++visited > point_budget)
      throw BudgetError("algebra_model_set: point budget exceeded");
    QuadVal norm_sq(mpq_class(0), mpq_class(0), d);
    for (unsigned i = 0; i < dim; ++i) {
      const QuadVal& s = window_points.points[idx[i]].direct[0];
      norm_sq = norm_sq + s * s;
    }
    if (norm_sq <= R2) {
      CloudPoint p;
      Element::List t(dim);
      for (unsigned i = 0; i < dim; ++i) {
        const CloudPoint& wp = window_points.points[idx[i]];
        t[i] = Element(field.ring.get(), wp.elem.payload());
        p.direct.push_back(wp.direct[0]);
        p.internal.push_back(wp.internal[0]);
      }
      p.elem = Element(tuple_ring.get(), std::move(t));
      rep.cloud.points.push_back(std::move(p));
    }
    unsigned i = 0;
    for (; i < dim; ++i) {
      if (++idx[i] < wn) break;
      idx[i] = 0;
    }
    if (i == dim) break;
  }
  sort_cloud(rep.cloud);

  // Closure sampling: coefficients of products, computed through the
  // conjugate embedding (a ring homomorphism), must stay within the
  // sum-of-|c|-enlarged internal window; containment in the plain w^2 window
  // is reported as well.
  QuadVal w2(w * w, mpq_class(0), d);
  std::vector<mpz_class> row_l1(dim, mpz_class(0));
  for (unsigned k = 0; k < dim; ++k) {
    mpz_class s = 0;
    for (unsigned i = 0; i < dim; ++i)
      for (unsigned j = 0; j < dim; ++j) s += abs(algebra_mul[i][j][k]);
    row_l1[k] = s;
  }
  SplitMix64 g(seed);
  std::size_t npts = rep.cloud.points.size();
  if (npts >= 1) {
    QuadVal Rv(R, mpq_class(0), d);
    for (unsigned s = 0; s < sample_pairs; ++s) {
      const CloudPoint& a = rep.cloud.points[g.below(npts)];
      const CloudPoint& b = rep.cloud.points[g.below(npts)];
      std::vector<QuadVal> prod_int(dim, QuadVal(mpq_class(0), mpq_class(0), d));
      std::vector<QuadVal> prod_dir(dim, QuadVal(mpq_class(0), mpq_class(0), d));
      for (unsigned i = 0; i < dim; ++i)
        for (unsigned j = 0; j < dim; ++j)
          for (unsigned k = 0; k < dim; ++k)
            if (algebra_mul[i][j][k] != 0) {
              QuadVal c(mpq_class(algebra_mul[i][j][k]), mpq_class(0), d);
              prod_int[k] = prod_int[k] + a.internal[i] * b.internal[j] * c;
              prod_dir[k] = prod_dir[k] + a.direct[i] * b.direct[j] * c;
            }
      ++rep.pairs_sampled;
      QuadVal norm_sq(mpq_class(0), mpq_class(0), d);
      for (unsigned k = 0; k < dim; ++k)
        norm_sq = norm_sq + prod_dir[k] * prod_dir[k];
      if (norm_sq > Rv * Rv) {
        ++rep.pairs_excluded;
        continue;
      }
      bool in_w2 = true, in_enlarged = true;
      for (unsigned k = 0; k < dim; ++k) {
        if (prod_int[k].abs() > w2) in_w2 = false;
        QuadVal bound = w2 * QuadVal(mpq_class(row_l1[k]), mpq_class(0), d);
        if (prod_int[k].abs() > bound) in_enlarged = false;
      }
      if (in_w2) ++rep.pairs_in_w2_window;
      if (!in_enlarged) rep.closure_ok = false;
    }
  }
  return rep;
}

}  // namespace apx
