#include "piforge/numeric.hpp"

#include <algorithm>
#include <cmath>

#include "piforge/errors.hpp"

namespace piforge {

namespace {

// Upper bound of |x| as a double.
double upper_abs(const BigFloat& x) {
  mpfr_t a;
  mpfr_init2(a, 64);
  mpfr_abs(a, x.mid(), MPFR_RNDU);
  mpfr_add(a, a, x.err(), MPFR_RNDU);
  double d = mpfr_get_d(a, MPFR_RNDU);
  mpfr_clear(a);
  return d;
}

}  // namespace

BigFloat hyp_numeric(const std::vector<Rational>& upper, const std::vector<Rational>& lower, const BigFloat& x) {
  const double ax = upper_abs(x);
  if (ax >= 1.0) throw Error(Errc::OutOfDisk, "hypergeometric argument outside the unit disk");
  if (upper.size() > lower.size() + 1) throw Error(Errc::InvalidArgument, "pFq needs p <= q + 1");
  const mpfr_prec_t prec = x.precision();
  std::vector<Rational> lows = lower;
  lows.push_back(Rational(1));  // n!
  BigFloat sum = BigFloat::from(1, prec);
  BigFloat term = BigFloat::from(1, prec);
  const double eps = std::ldexp(1.0, -static_cast<int>(std::min<mpfr_prec_t>(prec, 1000)));
  for (long n = 0;; ++n) {
    const Rational k(n);
    Rational ratio(1);
    for (const Rational& a : upper) ratio *= a + k;
    for (const Rational& b : lows) ratio /= b + k;
    if (ratio.is_zero()) return sum;  // terminating series
    term *= x;
    term *= ratio;
    sum += term;
    // Past n, every upper/lower factor ratio is bounded by its value at n+1
    // when it exceeds 1, and by 1 otherwise.
    const Rational k1(n + 1);
    double rho = ax;
    bool ok = true;
    for (std::size_t i = 0; i < lows.size(); ++i) {
      const Rational b = lows[i] + k1;
      if (b.sign() <= 0) {
        ok = false;
        break;
      }
      if (i < upper.size()) {
        const Rational a = upper[i] + k1;
        if (a.sign() < 0) {
          ok = false;
          break;
        }
        rho *= std::max(1.0, (a / b).to_double() * (1 + 1e-15));
      } else if (b < Rational(1)) {
        ok = false;
        break;
      }
    }
    if (!ok || rho >= 1.0) continue;
    const double t = upper_abs(term);
    if (n > 4 && t * rho / (1 - rho) < eps * 1e-3) {
      mpfr_t e;
      mpfr_init2(e, 64);
      mpfr_set_d(e, t, MPFR_RNDU);
      mpfr_mul_d(e, e, rho, MPFR_RNDU);
      mpfr_div_d(e, e, 1 - rho, MPFR_RNDU);
      sum.add_error(e);
      mpfr_clear(e);
      return sum;
    }
  }
}

}  // namespace piforge
