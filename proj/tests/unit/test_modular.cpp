#include <doctest.h>

#include "oracles.hpp"
#include "piforge/errors.hpp"
#include "piforge/modular.hpp"
#include "piforge/numeric.hpp"
#include "piforge/pi.hpp"
#include "piforge/surd.hpp"

using namespace piforge;

namespace {
const mpfr_prec_t kPrec = bits_for_digits(60, 64);

double gap(const BigFloat& a, const BigFloat& b) { return (a - b).log10_upper_abs(); }
}  // namespace

TEST_CASE("eta at i against the Gamma-function value") {
  const BigFloat e = eta(TauPoint{Rational(1)}, kPrec);
  const std::string want = oracle::eta_i(45);
  CHECK(e.to_fixed(40) == want.substr(0, 42));
}

TEST_CASE("eta for large imaginary part follows q^(1/24)") {
  const TauPoint tau{Rational(400)};
  const BigFloat q = tau.q(kPrec);
  const BigFloat e = eta(tau, kPrec);
  // eta = q^(1/24) (1 - q - ...) and q = e^(-40 pi) is far below 1e-50.
  const BigFloat lead = exp(log(q) / Rational(24));
  CHECK(gap(e, lead) < -50);
}

TEST_CASE("t_N at the catalog points") {
  CHECK(gap(t_N(2, TauPoint{Rational(1)}, kPrec), BigFloat::from(Rational(1, 9), kPrec)) < -40);
  CHECK(gap(t_N(4, TauPoint{Rational(3, 4)}, kPrec), SurdExpr::parse("1/2-1/4*sqrt(3)").to_bigfloat(kPrec)) < -40);
  CHECK(gap(t_N(1, TauPoint{Rational(7)}, kPrec), SurdExpr::parse("1/2-171/14450*sqrt(1785)").to_bigfloat(kPrec)) <
        -30);
  CHECK(gap(t_N(2, TauPoint{Rational(29, 2)}, kPrec), SurdExpr::parse("1/2-910/9801*sqrt(29)").to_bigfloat(kPrec)) <
        -30);
  CHECK(gap(j_invariant(TauPoint{Rational(1)}, kPrec), BigFloat::from(1728, kPrec)) < -30);
  CHECK_THROWS_AS(t_N(5, TauPoint{Rational(1)}, kPrec), Error);
}

TEST_CASE("level for s") {
  CHECK(level_for(Rational(1, 2)) == 4);
  CHECK(level_for(Rational(1, 3)) == 3);
  CHECK(level_for(Rational(1, 4)) == 2);
  CHECK(level_for(Rational(1, 6)) == 1);
}

TEST_CASE("F and G") {
  const BigFloat zero = BigFloat::from(0, kPrec);
  const auto [F0, G0] = F_and_G(Rational(1, 4), zero);
  CHECK(F0.to_double() == 1.0);
  CHECK(G0.to_double() == 0.0);
  // A F^2 + 2 B F G = C / pi at w0 = 1/9 with A = 1, B = 8, C = 9/2.
  const BigFloat w = BigFloat::from(Rational(1, 9), kPrec);
  const auto [F, G] = F_and_G(Rational(1, 4), w);
  const BigFloat lhs = F * F + F * G * Rational(16);
  const BigFloat rhs = BigFloat::from(Rational(9, 2), kPrec) / pi_at(kPrec);
  CHECK(gap(lhs, rhs) < -25);
  // Near t = 1 the logarithmic expansion agrees with the direct series.
  const BigFloat t = BigFloat::from(Rational(3, 5), kPrec);
  const auto [Fa, Ga] = F_and_G(Rational(1, 3), t);
  const BigFloat direct = hyp_numeric({Rational(1, 3), Rational(2, 3)}, {Rational(1)}, t);
  CHECK(gap(Fa, direct) < -40);
}

TEST_CASE("tau relation at the two rational examples") {
  const TauRelation a = tau_relation_check(Rational(1, 4), 2, TauPoint{Rational(1)}, kPrec);
  CHECK(a.residual.log10_upper_abs() < -20);
  CHECK(a.log_derivative_residual.log10_upper_abs() < -10);
  const TauRelation b = tau_relation_check(Rational(1, 2), 4, TauPoint{Rational(3, 4)}, kPrec);
  CHECK(b.residual.log10_upper_abs() < -20);
}
