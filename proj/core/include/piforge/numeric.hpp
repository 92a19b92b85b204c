#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "piforge/bigfloat.hpp"
#include "piforge/formula.hpp"

namespace piforge {

struct VerificationReport {
  std::string id;
  long digits_requested = 0;
  double digits_achieved = 0;  // -log10 of the certified |S - C/pi| bound
  std::size_t terms = 0;
  bool pass = false;
  double seconds = 0;
  std::string note;  // TermCapReached, PrecisionExhausted, ...

  /// `id  pass|fail  digits_achieved  terms  seconds`, tab separated.
  std::string line() const;
};

struct SeriesSum {
  BigFloat value;
  std::size_t terms = 0;
};

struct SumOptions {
  unsigned workers = 1;
  /// Terms per block; block boundaries fix the rounding order.
  std::size_t block = 64;
  /// Added to the computed working precision.
  mpfr_prec_t extra_bits = 0;
};

/// Certified term count N with sum_{n>=N} (a + b n)(n+1) r^n < 10^-digits,
/// or 0 when r >= 1.
std::size_t terms_for_tail(double a, double b, const BigFloat& r, long digits);

/// sum_n c_n (lin0 + lin1 n) arg^n by direct term-wise summation of the family
/// coefficients, with the certified tail folded into the radius.
SeriesSum direct_sum(const FamilySpec& family, const SurdExpr& lin0, const SurdExpr& lin1,
                     const SurdExpr& arg, long digits, const SumOptions& opts = {});

/// Compares the direct sum against rhs/pi.
VerificationReport sum_formula(const Formula& f, long digits, const SumOptions& opts = {});

/// Factorized evaluation A U V + B (U' V + U V') for convolution families,
/// with an explicit cap on the number of terms per factor.
VerificationReport slow_series_sum(const Formula& f, long digits, std::size_t max_terms);

/// pFq(upper; lower; x) for |x| < 1 with a ratio-domination tail bound.
BigFloat hyp_numeric(const std::vector<Rational>& upper, const std::vector<Rational>& lower, const BigFloat& x);

}  // namespace piforge
