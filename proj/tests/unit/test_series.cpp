#include <doctest.h>

#include "piforge/errors.hpp"
#include "piforge/families.hpp"
#include "piforge/series.hpp"

using namespace piforge;

TEST_CASE("series arithmetic basics") {
  QSeries f({Rational(1), Rational(2), Rational(3), Rational(4)});
  CHECK(f * QSeries::constant(Rational(1), 3) == f);
  QSeries geo(5), one_minus_x(5);
  for (std::size_t n = 0; n <= 5; ++n) geo[n] = Rational(1);
  one_minus_x[0] = Rational(1);
  one_minus_x[1] = Rational(-1);
  CHECK(one_minus_x * geo == QSeries::constant(Rational(1), 5));
  CHECK(QSeries::constant(Rational(1), 5) / one_minus_x == geo);
  CHECK_THROWS_AS(f / QSeries::variable(3), Error);
}

TEST_CASE("products of Gauss series give the PROP7 coefficients") {
  const Rational s(1, 3);
  const QSeries F = hypergeometric_series({s, Rational(1) - s}, {Rational(1)}, 30);
  const QSeries sq = F * F;
  CHECK(sq[1] == Rational(4, 9));
  CHECK(sq == generating_series(make_spec(Family::PROP7, s), 30));
}

TEST_CASE("compose") {
  QSeries f({Rational(5), Rational(1, 2), Rational(-3)});
  CHECK(compose(f, QSeries::variable(2)) == f);
  // 1/(1-t) at t = -x/(1-108x) = -x - 108x^2: 1 + t + t^2 = 1 - x - 107x^2.
  QSeries geo({Rational(1), Rational(1), Rational(1)});
  QSeries inner({Rational(0), Rational(-1), Rational(-108)});
  CHECK(compose(geo, inner) == QSeries({Rational(1), Rational(-1), Rational(-107)}));
  CHECK_THROWS_AS(compose(geo, QSeries({Rational(1), Rational(1)})), Error);
}

TEST_CASE("pow_rational") {
  QSeries base({Rational(1), Rational(4), Rational(0), Rational(0)});
  const QSeries r = pow_rational(base, Rational(-1, 2));
  CHECK(r == QSeries({Rational(1), Rational(-2), Rational(6), Rational(-20)}));
  CHECK(pow_rational(base, Rational(0)) == QSeries::constant(Rational(1), 3));
  CHECK(r * r * base == QSeries::constant(Rational(1), 3));
  CHECK_THROWS_AS(pow_rational(QSeries({Rational(2), Rational(1)}), Rational(1, 2)), Error);
}

TEST_CASE("theta and the (a + b theta) form") {
  CHECK(theta(QSeries::constant(Rational(1), 4)).is_zero());
  CHECK(theta(QSeries::variable(4)) == QSeries::variable(4));
  const QSeries f = generating_series(make_spec(Family::HYP, Rational(1, 2), BigInt(64)), 8);
  const QSeries g = f * Rational(3) + theta(f) * Rational(7);
  for (std::size_t n = 0; n <= 8; ++n) CHECK(g[n] == f[n] * Rational(3 + 7 * static_cast<long>(n)));
}

TEST_CASE("polynomial helpers") {
  const Poly a = {Rational(-1), Rational(0), Rational(1)};  // x^2 - 1
  const Poly b = {Rational(1), Rational(1)};                // x + 1
  CHECK(poly_div_exact(a, b) == Poly({Rational(-1), Rational(1)}));
  CHECK(poly_gcd(a, b) == poly_trim(b));
  CHECK(poly_lcm(a, b) == poly_trim(a));
  CHECK_THROWS_AS(poly_div_exact(b, a), Error);
}

TEST_CASE("apply_ode on the zero series and on a solution") {
  // y' - y = 0 on exp(x) expressed as a first-order term list.
  Ode ode;
  ode.terms.push_back({1, {Rational(1)}, {Rational(1)}});
  ode.terms.push_back({0, {Rational(-1)}, {Rational(1)}});
  QSeries e(12);
  Rational fact(1);
  for (std::size_t n = 0; n <= 12; ++n) {
    if (n > 0) fact *= Rational(static_cast<long>(n));
    e[n] = fact.inverse();
  }
  CHECK(apply_ode(e, ode).residual.is_zero());
  CHECK(apply_ode(QSeries(12), ode).residual.is_zero());
  Ode bad = ode;
  bad.terms.push_back({-1, {Rational(1)}, {Rational(1)}});
  CHECK_THROWS_AS(apply_ode(e, bad), Error);
}
