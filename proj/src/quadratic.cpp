#include "apx/quadratic.hpp"

#include <cmath>

#include "apx/common.hpp"

namespace apx {

QuadVal::QuadVal(mpq_class p_, mpq_class q_, unsigned long d_)
    : p(std::move(p_)), q(std::move(q_)), d(d_) {
  if (d == 0 && q != 0) throw DomainError("QuadVal: sqrt(0) coefficient");
  p.canonicalize();
  q.canonicalize();
  if (q == 0) d = 0;
}

static void check_same_field(const QuadVal& a, const QuadVal& b) {
  if (a.d != 0 && b.d != 0 && a.d != b.d)
    throw DomainError("QuadVal: mixed quadratic fields");
}

static unsigned long join_d(const QuadVal& a, const QuadVal& b) {
  return a.d != 0 ? a.d : b.d;
}

QuadVal operator+(const QuadVal& a, const QuadVal& b) {
  check_same_field(a, b);
  return QuadVal(a.p + b.p, a.q + b.q, join_d(a, b));
}

QuadVal operator-(const QuadVal& a, const QuadVal& b) {
  check_same_field(a, b);
  return QuadVal(a.p - b.p, a.q - b.q, join_d(a, b));
}

QuadVal operator*(const QuadVal& a, const QuadVal& b) {
  check_same_field(a, b);
  unsigned long d = join_d(a, b);
  // (p1 + q1 s)(p2 + q2 s) = p1 p2 + q1 q2 d + (p1 q2 + q1 p2) s
  return QuadVal(a.p * b.p + a.q * b.q * static_cast<long>(d),
                 a.p * b.q + a.q * b.p, d);
}

QuadVal operator/(const QuadVal& a, const QuadVal& b) {
  check_same_field(a, b);
  if (b.sign() == 0) throw DomainError("QuadVal: division by zero");
  unsigned long d = join_d(a, b);
  // 1/(p + q s) = (p - q s) / (p^2 - q^2 d)
  mpq_class den = b.p * b.p - b.q * b.q * static_cast<long>(d);
  QuadVal num = a * b.conj();
  return QuadVal(num.p / den, num.q / den, d);
}

int QuadVal::sign() const {
  int sp = sgn(p);
  int sq = sgn(q);
  if (sq == 0) return sp;
  if (sp == 0) return sq;
  if (sp == sq) return sp;
  // Opposite signs: compare p^2 with q^2 d. p + q sqrt(d) > 0 with p>0,q<0
  // iff p^2 > q^2 d; symmetric in the other case. Equality cannot occur for
  // squarefree d > 1, but is handled anyway.
  mpq_class lhs = p * p;
  mpq_class rhs = q * q * static_cast<long>(d);
  int c = ::cmp(lhs, rhs);
  if (c == 0) return 0;
  return (c > 0) ? sp : sq;
}

mpz_class QuadVal::floor() const {
  if (q == 0) {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), p.get_num_mpz_t(), p.get_den_mpz_t());
    return f;
  }
  // Start from a double estimate, then correct with exact comparisons.
  double est = to_double();
  mpz_class n(std::floor(est));
  auto le_val = [&](const mpz_class& m) {  // m <= value ?
    return QuadVal(mpq_class(m), 0, 0).cmp(*this) <= 0;
  };
  while (!le_val(n)) n -= 1;
  while (le_val(n + 1)) n += 1;
  return n;
}

std::pair<mpq_class, mpq_class> sqrt_bounds(unsigned long d,
                                            const mpq_class& width) {
  // Integer part exactly, then bisect.
  mpz_class di(static_cast<unsigned long>(d));
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), di.get_mpz_t());
  mpq_class lo(r), hi(r + 1);
  while (hi - lo > width) {
    mpq_class mid = (lo + hi) / 2;
    if (mid * mid <= mpq_class(di))
      lo = mid;
    else
      hi = mid;
  }
  return {lo, hi};
}

std::pair<mpq_class, mpq_class> QuadVal::enclosure(
    const mpq_class& width) const {
  if (q == 0) return {p, p};
  mpq_class w = width / (mpq_class(2) * (q > 0 ? q : -q));
  auto [slo, shi] = sqrt_bounds(d, w);
  if (q > 0) return {p + q * slo, p + q * shi};
  return {p + q * shi, p + q * slo};
}

double QuadVal::to_double() const {
  double v = p.get_d();
  if (q != 0) v += q.get_d() * std::sqrt(static_cast<double>(d));
  return v;
}

std::string QuadVal::str() const {
  if (q == 0) return mpq_str(p);
  return mpq_str(p) + "+" + mpq_str(q) + "*r" + std::to_string(d);
}

}  // namespace apx
