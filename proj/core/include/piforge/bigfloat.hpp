#pragma once

#include <mpfr.h>

#include <string>

#include "piforge/rational.hpp"

namespace piforge {

/// MPFR midpoint with a certified absolute error radius. The true value lies
/// in [mid - err, mid + err]. `err` is kept at 64 bits, always rounded up.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t prec = 128);
  BigFloat(const BigFloat& o);
  BigFloat(BigFloat&& o) noexcept;
  BigFloat& operator=(const BigFloat& o);
  BigFloat& operator=(BigFloat&& o) noexcept;
  ~BigFloat();

  static BigFloat from(const Rational& q, mpfr_prec_t prec);
  static BigFloat from(long n, mpfr_prec_t prec) { return from(Rational(n), prec); }
  /// Exact midpoint `mid` widened by `err` (both taken as given).
  static BigFloat with_error(const mpfr_t mid, const mpfr_t err, mpfr_prec_t prec);

  mpfr_prec_t precision() const { return prec_; }
  mpfr_srcptr mid() const { return mid_; }
  mpfr_srcptr err() const { return err_; }
  mpfr_ptr mid_mut() { return mid_; }

  /// Widens the radius by `e` (rounded up).
  void add_error(const mpfr_t e);
  void add_error_pow2(long exp2);

  /// +1 / -1 when the interval excludes zero, 0 otherwise.
  int certain_sign() const;
  bool contains_zero() const { return certain_sign() == 0; }

  /// log10 of the upper bound of |value|; -inf for an exact zero.
  double log10_upper_abs() const;
  /// -log10(err), capped at a large value for exact results.
  double correct_digits() const;

  double to_double() const { return mpfr_get_d(mid_, MPFR_RNDN); }
  /// Truncated fixed-point decimal with `digits` digits after the point.
  std::string to_fixed(long digits) const;
  /// Scientific notation of the midpoint with `digits` significant digits.
  std::string to_sci(int digits) const;

  BigFloat operator-() const;
  BigFloat& operator+=(const BigFloat& o);
  BigFloat& operator-=(const BigFloat& o);
  BigFloat& operator*=(const BigFloat& o);
  BigFloat& operator/=(const BigFloat& o);
  BigFloat& operator*=(const Rational& q);
  BigFloat& operator/=(const Rational& q);

  friend BigFloat operator+(BigFloat a, const BigFloat& b) { return a += b; }
  friend BigFloat operator-(BigFloat a, const BigFloat& b) { return a -= b; }
  friend BigFloat operator*(BigFloat a, const BigFloat& b) { return a *= b; }
  friend BigFloat operator/(BigFloat a, const BigFloat& b) { return a /= b; }
  friend BigFloat operator*(BigFloat a, const Rational& q) { return a *= q; }
  friend BigFloat operator/(BigFloat a, const Rational& q) { return a /= q; }

 private:
  void round_error();  // err += ulp-scale rounding of the last mid update

  mpfr_prec_t prec_;
  mpfr_t mid_;
  mpfr_t err_;
};

BigFloat abs(const BigFloat& x);
BigFloat sqrt(const BigFloat& x);
BigFloat exp(const BigFloat& x);
BigFloat log(const BigFloat& x);
BigFloat sin(const BigFloat& x);
BigFloat pow(const BigFloat& x, unsigned long n);
/// Digamma on x > 0 (monotone there).
BigFloat digamma(const BigFloat& x);
/// Gamma on x >= 2 (monotone there).
BigFloat gamma(const BigFloat& x);

/// Decimal digits -> working bits with guard bits.
mpfr_prec_t bits_for_digits(long digits, long guard_bits = 32);

}  // namespace piforge
