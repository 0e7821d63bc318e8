#include "apx/growth.hpp"

#include <algorithm>
#include <cmath>

#include "apx/setops.hpp"

namespace apx {

GrowthSeries growth_series(const RingPtr& ring, const ElementSet& X,
                           unsigned n_max, std::uint64_t element_budget) {
  if (!X.is_symmetric())
    throw DomainError("growth_series: X must be additively symmetric");
  GrowthSeries s;
  s.generator_desc = "|X| = " + std::to_string(X.size());
  s.ambient_desc = ring->describe();
  BallEngine engine(ring, X, element_budget);
  for (unsigned n = 0; n <= n_max; ++n) {
    try {
      s.sizes.push_back(engine.ball(n).size());
    } catch (const BudgetError&) {
      s.truncated = true;
      break;
    }
  }
  return s;
}

DegreeFit fit_degree(const GrowthSeries& series, double tail_fraction) {
  DegreeFit fit;
  if (series.sizes.size() < 5)
    throw DomainError("fit_degree: need at least 4 tail points");
  unsigned n_max = static_cast<unsigned>(series.sizes.size()) - 1;
  unsigned start = std::max(1u, static_cast<unsigned>(
                                    std::ceil(n_max * (1.0 - tail_fraction))));
  if (n_max - start + 1 < 4) start = n_max >= 4 ? n_max - 3 : 1;

  bool constant = true;
  for (unsigned n = start; n <= n_max; ++n)
    if (series.sizes[n] != series.sizes[start]) constant = false;
  if (constant) {
    fit.degree = 0.0;
    fit.residual = 0.0;
    fit.points_used = n_max - start + 1;
    return fit;
  }

  auto slope_over = [&](unsigned a, unsigned b, double* rmse) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    unsigned cnt = 0;
    for (unsigned n = a; n <= b; ++n) {
      double x = std::log(static_cast<double>(n));
      double y = std::log(static_cast<double>(series.sizes[n]));
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++cnt;
    }
    double denom = cnt * sxx - sx * sx;
    double slope = (cnt * sxy - sx * sy) / denom;
    double icpt = (sy - slope * sx) / cnt;
    if (rmse) {
      double ss = 0;
      for (unsigned n = a; n <= b; ++n) {
        double x = std::log(static_cast<double>(n));
        double y = std::log(static_cast<double>(series.sizes[n]));
        double e = y - (slope * x + icpt);
        ss += e * e;
      }
      *rmse = std::sqrt(ss / cnt);
    }
    return slope;
  };

  fit.degree = slope_over(start, n_max, &fit.residual);
  fit.points_used = n_max - start + 1;
  // Super-polynomial flag: the fitted slope keeps climbing between the two
  // halves of the tail window.
  unsigned mid = (start + n_max) / 2;
  if (mid > start + 1 && n_max > mid + 1) {
    double s1 = slope_over(start, mid, nullptr);
    double s2 = slope_over(mid, n_max, nullptr);
    if (s2 - s1 > 0.25) fit.super_polynomial = true;
  }
  return fit;
}

std::optional<unsigned> scale_finder(const GrowthSeries& series,
                                     const mpq_class& d, unsigned N) {
  if (d <= 0) throw DomainError("scale_finder: d must be positive");
  unsigned n_max = static_cast<unsigned>(series.sizes.size()) - 1;
  if (N < 1 || 4 * N > n_max)
    throw DomainError("scale_finder: range [N, n_max/4] is empty");
  mpq_class dc(d);
  dc.canonicalize();
  mpz_class p = dc.get_num();
  mpz_class q = dc.get_den();
  if (!p.fits_ulong_p() || !q.fits_ulong_p())
    throw DomainError("scale_finder: d too large");
  // sizes[4n'] <= 8^(p/q) * sizes[n']  iff  sizes[4n']^q <= 8^p * sizes[n']^q.
  mpz_class eight_p = mpz_pow(mpz_class(8), p.get_ui());
  for (unsigned np = N; 4 * np <= n_max; ++np) {
    mpz_class lhs = mpz_pow(mpz_class(static_cast<unsigned long>(
                                series.sizes[4 * np])),
                            q.get_ui());
    mpz_class rhs =
        eight_p * mpz_pow(mpz_class(static_cast<unsigned long>(
                              series.sizes[np])),
                          q.get_ui());
    if (lhs <= rhs) return np;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Mod-m reduction of integer-based ambients

RingPtr mod_reduction_ring(const RingPtr& ring, std::uint64_t m) {
  switch (ring->kind()) {
    case Ring::Kind::Integers:
      return make_zmod(m);
    case Ring::Kind::Matrix: {
      // Reduce the base; dim is recovered from the zero element.
      Element z = ring->zero();
      unsigned entries = static_cast<unsigned>(z.list().size());
      unsigned dim = 1;
      while (dim * dim < entries) ++dim;
      if (!std::holds_alternative<mpz_class>(z.list()[0].payload()))
        throw DomainError("mod_reduction_ring: matrix base must be integers");
      return make_matrix(make_zmod(m), dim);
    }
    default:
      throw DomainError(
          "mod_reduction_ring: only integer and integer-matrix ambients");
  }
}

Element mod_reduce(const RingPtr& src, const RingPtr& dst, const Element& e) {
  switch (src->kind()) {
    case Ring::Kind::Integers: {
      return dst->parse(e.integer().get_str());
    }
    case Ring::Kind::Matrix: {
      std::uint64_t m = 0;
      // dst is matrix(zmod(m), dim); recover m from its base via parse.
      Element::List out;
      const Element::List& in = e.list();
      Element dz = dst->zero();
      (void)m;
      for (std::size_t i = 0; i < in.size(); ++i) {
        // Reduce each integer entry through the destination base ring.
        const Element& dzi = dz.list()[i];
        const Ring* base = dzi.ring();
        out.push_back(base->parse(in[i].integer().get_str()));
      }
      return Element(dst.get(), std::move(out));
    }
    default:
      throw DomainError("mod_reduce: unsupported ambient");
  }
}

// ---------------------------------------------------------------------------
// The combined pipeline

GromovReport gromov_report(const RingPtr& ring, const ElementSet& X,
                           const GromovOptions& opts) {
  GromovReport rep;
  rep.torsion_free_assumed = opts.torsion_free_flag;
  rep.series = growth_series(ring, X, opts.n_max, opts.element_budget);
  rep.fit = fit_degree(rep.series);
  rep.d_used = std::max(1u, static_cast<unsigned>(std::ceil(
                                rep.fit.degree - 1e-9)));

  rep.n_prime = scale_finder(rep.series, mpq_class(rep.d_used), opts.N);
  if (!rep.n_prime) {
    rep.notes = "premise unmet in range: no n' with |X^{<=4n'}| <= 8^d "
                "|X^{<=n'}|";
    return rep;
  }

  // X' = 2 X^{<=n'}: the explicit approximate subring the growth argument
  // extracts at scale n'.
  BallEngine engine(ring, X, opts.element_budget);
  ElementSet ball_np = engine.ball(*rep.n_prime);
  ElementSet x_prime = sumset(ball_np, ball_np);
  rep.x_prime_size = x_prime.size();

  rep.approx = approx_constant(x_prime, opts.cover_mode, opts.node_budget);
  mpz_class cd = mpz_pow(mpz_class(8), 5ul * rep.d_used) +
                 mpz_pow(mpz_class(8), 19ul * rep.d_used);
  rep.c_of_d = cd.get_str();
  rep.within_c_of_d =
      mpz_class(static_cast<unsigned long>(rep.approx->K())) <= cd;

  // Certification: directly on finite ambients, else in the user-supplied
  // entrywise mod-m quotient.
  try {
    CertificateOptions copts;
    copts.class_max = opts.class_max;
    copts.node_budget = opts.node_budget;
    if (ring->is_finite()) {
      rep.certificate_ring = ring->describe();
      rep.certificate = nilpotent_certificate(x_prime, copts);
    } else if (opts.quotient_modulus) {
      RingPtr qring = mod_reduction_ring(ring, *opts.quotient_modulus);
      ElementSet xq(qring);
      x_prime.for_each([&](const Element& e) {
        xq.insert_unchecked(mod_reduce(ring, qring, e));
      });
      rep.certificate_ring = qring->describe();
      rep.certificate = nilpotent_certificate(xq, copts);
    } else {
      rep.notes +=
          "no quotient modulus supplied; nilpotency not certified for the "
          "infinite ambient";
    }
  } catch (const BudgetError& e) {
    rep.notes += std::string("certificate search hit budget: ") + e.what();
  }
  return rep;
}

}  // namespace apx
