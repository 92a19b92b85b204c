#pragma once

#include <utility>

#include "piforge/bigfloat.hpp"
#include "piforge/rational.hpp"

namespace piforge {

/// tau = i sqrt(im_sq) on the imaginary axis.
struct TauPoint {
  Rational im_sq;
  /// q = exp(-2 pi sqrt(im_sq)).
  BigFloat q(mpfr_prec_t prec) const;
  BigFloat im(mpfr_prec_t prec) const;
};

/// Functions of y = Im(tau) > 0 given as a BigFloat.
BigFloat q_of_im(const BigFloat& y);
BigFloat eta_at(const BigFloat& y);
BigFloat j_at(const BigFloat& y);
BigFloat t_N_at(int N, const BigFloat& y);

BigFloat eta(const TauPoint& tau, mpfr_prec_t prec);
BigFloat j_invariant(const TauPoint& tau, mpfr_prec_t prec);
/// Throws OutsideDomain when |t| < 1 cannot be certified.
BigFloat t_N(int N, const TauPoint& tau, mpfr_prec_t prec);

/// Level attached to s: 1/2 -> 4, 1/3 -> 3, 1/4 -> 2, 1/6 -> 1.
int level_for(const Rational& s);

/// F = 2F1(s,1-s;1;t) and G = t dF/dt for 0 <= t < 1. Uses the power series
/// for t <= 1/2 and the logarithmic expansion around t = 1 otherwise.
std::pair<BigFloat, BigFloat> F_and_G(const Rational& s, const BigFloat& t);

struct TauRelation {
  /// |sqrt(im_sq) - C_s F(1-t)/F(t)|.
  BigFloat residual;
  /// Relative mismatch of q dt/dq = t(1-t)F(t)^2 via a centred difference.
  BigFloat log_derivative_residual;
};
TauRelation tau_relation_check(const Rational& s, int N, const TauPoint& tau, mpfr_prec_t prec);

}  // namespace piforge
