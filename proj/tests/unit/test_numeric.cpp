#include <doctest.h>

#include <cmath>

#include "machin.hpp"
#include "piforge/catalog.hpp"
#include "piforge/errors.hpp"
#include "piforge/families.hpp"
#include "piforge/numeric.hpp"
#include "piforge/pi.hpp"

using namespace piforge;

TEST_CASE("pi digits against the Machin oracle") {
  CHECK(pi_digits(1) == "3.1");
  CHECK(pi_digits(30) == "3.141592653589793238462643383279");
  CHECK(pi_digits(30) == oracle::machin_pi(30));
  CHECK(pi_digits(5000) == oracle::machin_pi(5000));
  const BigFloat p = pi_reference(200);
  CHECK(p.correct_digits() >= 200);
}

TEST_CASE("pi does not depend on leaf size or workers") {
  const std::string ref = pi_digits(2000);
  CHECK(pi_digits(2000, PiOptions{1, 1}) == ref);
  CHECK(pi_digits(2000, PiOptions{7, 3}) == ref);
  CHECK(pi_digits(2000, PiOptions{1000, 2}) == ref);
}

TEST_CASE("sum_formula on catalog records") {
  const Catalog& cat = embedded_catalog();
  const VerificationReport intro = sum_formula(cat.at("intro-monstrous"), 30);
  CHECK(intro.pass);
  CHECK(intro.terms <= 5);
  const VerificationReport comp = sum_formula(cat.at("appx-ex1-hat"), 20);
  CHECK(comp.pass);
  CHECK(comp.digits_achieved >= 20);
  const VerificationReport chud = sum_formula(cat.at("intro-chudnovsky"), 200);
  CHECK(chud.pass);
}

TEST_CASE("comparator rejects a zero series against a nonzero rhs") {
  Formula f = embedded_catalog().at("appx-ex1");
  f.lin0 = 0;
  f.lin1 = 0;
  const VerificationReport r = sum_formula(f, 20);
  CHECK_FALSE(r.pass);
}

TEST_CASE("divergent formulas are refused") {
  const Formula& src = embedded_catalog().at("p1-s13-r9-src");
  REQUIRE_FALSE(src.convergent);
  CHECK_THROWS_AS(sum_formula(src, 10), Error);
}

TEST_CASE("slow factorized path") {
  const Catalog& cat = embedded_catalog();
  const VerificationReport r = slow_series_sum(cat.at("appx-ex3-hat"), 15, 100000);
  CHECK(r.pass);
  CHECK(r.terms < 2000);
  Formula zero = cat.at("appx-ex3-hat");
  zero.arg = 0;
  zero.lin0 = 1;
  zero.rhs = 0;
  const SeriesSum s = direct_sum(zero.family, zero.lin0, zero.lin1, zero.arg, 20);
  CHECK(s.value.to_double() == doctest::Approx(1.0));
  // A tiny cap cannot reach the requested digits.
  const VerificationReport capped = slow_series_sum(cat.at("appx-ex4-hat"), 6, 1000);
  CHECK_FALSE(capped.pass);
  CHECK(capped.note.find("TermCapReached") != std::string::npos);
}

TEST_CASE("hypergeometric evaluation") {
  const mpfr_prec_t prec = bits_for_digits(40);
  const BigFloat zero = BigFloat::from(0, prec);
  const BigFloat one = hyp_numeric({Rational(1, 3), Rational(2, 3)}, {Rational(1)}, zero);
  CHECK(one.to_double() == 1.0);
  // 2F1(1,1;2;x) = -log(1-x)/x.
  const BigFloat half = BigFloat::from(Rational(1, 2), prec);
  const BigFloat v = hyp_numeric({Rational(1), Rational(1)}, {Rational(2)}, half);
  CHECK(v.to_double() == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-15));
  CHECK(v.correct_digits() > 35);
}

TEST_CASE("tail bound term counts") {
  const BigFloat r = BigFloat::from(Rational(1, 10), 128);
  const std::size_t n = terms_for_tail(1, 1, r, 20);
  CHECK(n > 20);
  CHECK(n < 30);
  CHECK(terms_for_tail(1, 1, BigFloat::from(1, 128), 20) == 0);
}
