#pragma once

// Exact arithmetic in the real quadratic field Q(sqrt(d)), plus the plain
// rationals as the degenerate case d = 0. Every geometric predicate in the
// cut-and-project module (window membership, truncation, gap comparison)
// bottoms out in QuadVal comparisons, so no floating point ever decides a
// boundary.

#include <optional>
#include <string>

#include <gmpxx.h>

namespace apx {

struct QuadVal {
  mpq_class p;  // rational part
  mpq_class q;  // coefficient of sqrt(d); must be 0 when d == 0
  unsigned long d = 0;

  QuadVal() : p(0), q(0), d(0) {}
  explicit QuadVal(const mpq_class& rational) : p(rational), q(0), d(0) {}
  QuadVal(mpq_class p_, mpq_class q_, unsigned long d_);

  bool is_rational() const { return q == 0; }

  QuadVal operator-() const { return QuadVal(-p, -q, d); }
  QuadVal conj() const { return QuadVal(p, -q, d); }  // sqrt(d) -> -sqrt(d)

  friend QuadVal operator+(const QuadVal& a, const QuadVal& b);
  friend QuadVal operator-(const QuadVal& a, const QuadVal& b);
  friend QuadVal operator*(const QuadVal& a, const QuadVal& b);
  friend QuadVal operator/(const QuadVal& a, const QuadVal& b);

  // Exact sign of p + q*sqrt(d): -1, 0, +1.
  int sign() const;

  int cmp(const QuadVal& o) const { return (*this - o).sign(); }
  bool operator==(const QuadVal& o) const { return cmp(o) == 0; }
  bool operator!=(const QuadVal& o) const { return cmp(o) != 0; }
  bool operator<(const QuadVal& o) const { return cmp(o) < 0; }
  bool operator<=(const QuadVal& o) const { return cmp(o) <= 0; }
  bool operator>(const QuadVal& o) const { return cmp(o) > 0; }
  bool operator>=(const QuadVal& o) const { return cmp(o) >= 0; }

  QuadVal abs() const { return sign() < 0 ? -*this : *this; }

  // Largest integer <= value, exactly.
  mpz_class floor() const;
  mpz_class ceil() const { return -((-*this).floor()); }

  // Rational enclosure [lo, hi] with hi - lo <= width (width > 0).
  std::pair<mpq_class, mpq_class> enclosure(const mpq_class& width) const;

  double to_double() const;

  // "p" for rationals, "p+q*r<d>" otherwise, e.g. "3/2+1*r2".
  std::string str() const;
};

// Rational bounds on sqrt(d) with hi - lo <= width.
std::pair<mpq_class, mpq_class> sqrt_bounds(unsigned long d,
                                            const mpq_class& width);

}  // namespace apx
