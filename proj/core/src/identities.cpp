#include "piforge/identities.hpp"

#include <sstream>

#include "piforge/errors.hpp"
#include "piforge/families.hpp"
#include "piforge/numeric.hpp"
#include "piforge/pi.hpp"
#include "piforge/transforms.hpp"

namespace piforge {

std::string status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "OK";
    case CheckStatus::Fail: return "FAIL";
    case CheckStatus::Finding: return "FINDING";
  }
  return "?";
}

const std::vector<std::string>& identity_names() {
  static const std::vector<std::string> names = {
      "prop2", "prop3", "prop3-step", "prop5", "prop6", "theta-square", "involution", "clausen",
      "euler", "pfaff", "quad",  "gauss2",     "ode-prop3", "ode-prop5", "ode-prop6", "ode-general"};
  return names;
}

namespace {

using R = Rational;

QSeries hyp(const std::vector<R>& up, const std::vector<R>& low, std::size_t order) {
  return hypergeometric_series(up, low, order);
}

// 1 + c x truncated at order.
QSeries linear(const R& c0, const R& c1, std::size_t order) {
  QSeries out = QSeries::constant(c0, order);
  if (order >= 1) out[1] = c1;
  return out;
}

QSeries x_series(std::size_t order) { return QSeries::variable(order); }

IdentityResult series_result(const std::string& name, const R& s, std::size_t order, const QSeries& lhs,
                             const QSeries& rhs) {
  IdentityResult r{name, s, order, CheckStatus::Fail, ""};
  const std::size_t n = std::min(lhs.order(), rhs.order());
  std::size_t first_bad = n + 1;
  for (std::size_t k = 0; k <= n; ++k)
    if (lhs[k] != rhs[k]) {
      first_bad = k;
      break;
    }
  if (first_bad > n) {
    r.status = CheckStatus::Pass;
    r.detail = "coefficients 0.." + std::to_string(n) + " agree";
  } else {
    r.detail = "first mismatch at x^" + std::to_string(first_bad) + ": " + lhs[first_bad].to_string() + " vs " +
               rhs[first_bad].to_string();
  }
  return r;
}

Poly poly(std::initializer_list<R> c) { return Poly(c); }

IdentityResult ode_result(const std::string& name, const R& s, std::size_t order, const QSeries& f, const Ode& ode,
                          const std::string& what) {
  IdentityResult r{name, s, order, CheckStatus::Finding, ""};
  try {
    OdeResidual res = apply_ode(f, ode);
    std::size_t first = res.checked_order + 1;
    for (std::size_t k = 0; k <= res.checked_order; ++k)
      if (!res.residual[k].is_zero()) {
        first = k;
        break;
      }
    if (first > res.checked_order) {
      r.status = CheckStatus::Pass;
      r.detail = what + ": residual vanishes through x^" + std::to_string(res.checked_order);
    } else {
      r.detail = "NonzeroResidual: " + what + " leaves " + res.residual[first].to_string() + " at x^" +
                 std::to_string(first);
    }
  } catch (const Error& e) {
    if (e.code() != Errc::MalformedOde) throw;
    r.detail = e.what();
  }
  return r;
}

BigFloat gamma_any(const BigFloat& x) {
  // Shift into x >= 2 where the MPFR gamma is monotone.
  BigFloat y = x;
  BigFloat divisor = BigFloat::from(1, x.precision());
  while (y.to_double() < 2) {
    divisor *= y;
    y += BigFloat::from(1, x.precision());
  }
  return gamma(y) / divisor;
}

}  // namespace

Ode ode_prop3(const R& s) {
  const R l = s * (R(1) - s);
  // y''' + 3(1+8x)/(x(1+4x)) y'' + (1+28x+(108+16l)x^2)/(x^2(1+4x)^2) y'
  //      + 2(1+(6+8l)x)/(x^2(1+4x)^2) y
  const Poly d1 = poly({R(0), R(1), R(4)});
  const Poly d2 = poly({R(0), R(0), R(1), R(8), R(16)});
  return {{{3, poly({R(1)}), poly({R(1)})},
           {2, poly({R(3), R(24)}), d1},
           {1, poly({R(1), R(28), R(108) + R(16) * l}), d2},
           {0, poly({R(2), R(2) * (R(6) + R(8) * l)}), d2}}};
}

Ode ode_prop5(const R& s) {
  const R l = s * (R(1) - s);
  // y''' + 3(2-5x)/(x(1-x)) y'' + (1-(10+l)x+(12+l)x^2)/(x^2(1-x)^2) y'
  //      - (1/2)(2+l-(6+3l)x)/(x^2(1-x)^2) y
  const Poly d1 = poly({R(0), R(1), R(-1)});
  const Poly d2 = poly({R(0), R(0), R(1), R(-2), R(1)});
  return {{{3, poly({R(1)}), poly({R(1)})},
           {2, poly({R(6), R(-15)}), d1},
           {1, poly({R(1), -(R(10) + l), R(12) + l}), d2},
           {0, poly({-(R(2) + l) / R(2), (R(6) + R(3) * l) / R(2)}), d2}}};
}

Ode ode_prop6(const R& s) {
  const R l = s * (R(1) - s);
  // y''' + (3/2)(2-3x)/(x(1-x)) y'' + (1-(3+l)x)/(x^2(1-x)) y' - (1/2) l/(x^2(1-x)) y
  const Poly d1 = poly({R(0), R(1), R(-1)});
  const Poly d2 = poly({R(0), R(0), R(1), R(-1)});
  return {{{3, poly({R(1)}), poly({R(1)})},
           {2, poly({R(3), R(-9, 2)}), d1},
           {1, poly({R(1), -(R(3) + l)}), d2},
           {0, poly({-l / R(2)}), d2}}};
}

Ode ode_general_s16() {
  // y''' + 3(1-3456x)/(x(1-1728x)) y'' + (1-11856x+20155392x^2)/(x^2(1-1728x)^2) y'
  //      - 24(31-93312x)/(x^2(1-1728x)^2)      <- printed without y
  const Poly d1 = poly({R(0), R(1), R(-1728)});
  const Poly d2 = poly({R(0), R(0), R(1), R(-3456), R(2985984)});
  return {{{3, poly({R(1)}), poly({R(1)})},
           {2, poly({R(3), R(-10368)}), d1},
           {1, poly({R(1), R(-11856), R(20155392)}), d2},
           {-1, poly({R(-744), R(2239488)}), d2}}};
}

IdentityResult check_identity(const std::string& name, const R& s, std::size_t order) {
  if (!supported_s(s)) throw Error(Errc::InvalidArgument, "s must be one of 1/2, 1/3, 1/4, 1/6");
  const R one(1), half(1, 2);
  const std::size_t N = order;
  if (name == "prop3") {
    // sum A_n x^n = (1+4x)^(-1/2) 3F2(1/2,s,1-s;1,1; -4x^2/(1+4x))
    const QSeries lhs = generating_series(make_spec(Family::PROP3, s), N);
    const QSeries p = linear(one, R(4), N);
    const QSeries inner = x_series(N) * x_series(N) * R(-4) / p;
    const QSeries rhs = pow_rational(p, R(-1, 2)) * compose(hyp({half, s, one - s}, {one, one}, N), inner);
    return series_result(name, s, N, lhs, rhs);
  }
  if (name == "prop3-step") {
    // F(s,1/2;1;-4x) = (1+4x)^(-s/2) F(s/2,(1-s)/2;1;-4x^2/(1+4x))
    const QSeries p = linear(one, R(4), N);
    const QSeries lhs = scale_argument(hyp({s, half}, {one}, N), R(-4));
    const QSeries inner = x_series(N) * x_series(N) * R(-4) / p;
    const QSeries rhs = pow_rational(p, -s / R(2)) * compose(hyp({s / R(2), (one - s) / R(2)}, {one}, N), inner);
    return series_result(name, s, N, lhs, rhs);
  }
  if (name == "prop5") {
    // sum A_n x^n = 1/(1-x) 3F2(1/2,s,1-s;1,1; -4x/(1-x)^2)
    const QSeries lhs = generating_series(make_spec(Family::PROP5, s), N);
    const QSeries m = linear(one, R(-1), N);
    const QSeries inner = x_series(N) * R(-4) / (m * m);
    const QSeries rhs = compose(hyp({half, s, one - s}, {one, one}, N), inner) / m;
    return series_result(name, s, N, lhs, rhs);
  }
  if (name == "prop6") {
    // F(s,1-s;1; (1 - sqrt(1-x))/2)^2 = 3F2(1/2,s,1-s;1,1;x)
    const QSeries root = pow_rational(linear(one, R(-1), N), half);
    const QSeries inner = (QSeries::constant(one, N) - root) * half;
    const QSeries F = compose(hyp({s, one - s}, {one}, N), inner);
    return series_result(name, s, N, F * F, hyp({half, s, one - s}, {one, one}, N));
  }
  if (name == "theta-square") {
    // theta F(s,1-s;1;x)^2 = 2 s(1-s) x F(s,1-s;1;x) F(1+s,2-s;2;x)
    const QSeries F = hyp({s, one - s}, {one}, N);
    const QSeries rhs = x_series(N) * F * hyp({one + s, R(2) - s}, {R(2)}, N) * (R(2) * s * (one - s));
    return series_result(name, s, N, theta(F * F), rhs);
  }
  if (name == "involution") {
    IdentityResult r{name, s, N, CheckStatus::Fail, ""};
    const FamilySpec hyp_spec = make_spec(Family::HYP, s, standard_M(s));
    const QSeries a = generating_series(hyp_spec, N);
    const QSeries A = generating_series(make_spec(Family::PROP1, s), N);
    const bool forward = general_substitution(a, hyp_spec.M) == A;
    const bool backward = general_substitution(A, hyp_spec.M) == a;
    const bool twice = involution_check(hyp_spec, N);
    r.status = forward && backward && twice ? CheckStatus::Pass : CheckStatus::Fail;
    r.detail = std::string("a->A ") + (forward ? "ok" : "mismatch") + ", A->a " + (backward ? "ok" : "mismatch") +
               ", twice " + (twice ? "ok" : "mismatch") + " (M=" + hyp_spec.M.get_str() + ")";
    return r;
  }
  if (name == "clausen") {
    // F(a,b;a+b+1/2;x)^2 = 3F2(2a,2b,a+b;a+b+1/2,2a+2b;x), a = s/2, b = (1-s)/2
    const R a = s / R(2), b = (one - s) / R(2);
    const QSeries F = hyp({a, b}, {a + b + half}, N);
    return series_result(name, s, N, F * F, hyp({R(2) * a, R(2) * b, a + b}, {a + b + half, R(2) * a + R(2) * b}, N));
  }
  if (name == "euler") {
    // F(a,b;c;x) = (1-x)^(c-a-b) F(c-a,c-b;c;x), (a,b,c) = (1/2, 1-s, 1)
    const R a = half, b = one - s, c = one;
    const QSeries rhs = pow_rational(linear(one, R(-1), N), c - a - b) * hyp({c - a, c - b}, {c}, N);
    return series_result(name, s, N, hyp({a, b}, {c}, N), rhs);
  }
  if (name == "pfaff") {
    // F(a,b;c;x) = (1-x)^(-a) F(a,c-b;c;x/(x-1)), (a,b,c) = (s, s, 1)
    const R a = s, b = s, c = one;
    const QSeries inner = x_series(N) / linear(R(-1), one, N);
    const QSeries rhs = pow_rational(linear(one, R(-1), N), -a) * compose(hyp({a, c - b}, {c}, N), inner);
    return series_result(name, s, N, hyp({a, b}, {c}, N), rhs);
  }
  if (name == "quad") {
    // F(2a,2b;a+b+1/2;w) = F(a,b;a+b+1/2;4w(1-w)), a = s/2, b = (1-s)/2
    const R a = s / R(2), b = (one - s) / R(2);
    const QSeries inner = x_series(N) * linear(R(4), R(-4), N);
    return series_result(name, s, N, hyp({R(2) * a, R(2) * b}, {a + b + half}, N),
                         compose(hyp({a, b}, {a + b + half}, N), inner));
  }
  if (name == "prop2" || name == "gauss2") {
    const long digits = static_cast<long>(order);
    IdentityResult r{name, s, order, CheckStatus::Fail, ""};
    const mpfr_prec_t prec = bits_for_digits(digits + 10, 32);
    BigFloat diff(prec);
    if (name == "prop2") {
      // sum n A_n / 2^n = 2 sin(pi s) / pi for the PROP7 coefficients
      SeriesSum sum = direct_sum(make_spec(Family::PROP7, s), SurdExpr(0), SurdExpr(1), SurdExpr(half), digits + 5);
      const BigFloat pi = pi_at(sum.value.precision());
      diff = sum.value - sin(pi * s) * Rational(2) / pi;
    } else {
      // F(a,b;(a+b+1)/2;1/2) = sqrt(pi) Gamma((a+b+1)/2) / (Gamma((a+1)/2) Gamma((b+1)/2)), (a,b) = (1/2, s)
      const R a = half, b = s, c = (a + b + one) / R(2);
      const BigFloat lhs = hyp_numeric({a, b}, {c}, BigFloat::from(half, prec));
      const BigFloat rhs = sqrt(pi_at(prec)) * gamma_any(BigFloat::from(c, prec)) /
                           (gamma_any(BigFloat::from((a + one) / R(2), prec)) *
                            gamma_any(BigFloat::from((b + one) / R(2), prec)));
      diff = lhs - rhs;
    }
    const double l = diff.log10_upper_abs();
    r.status = l < -static_cast<double>(digits) ? CheckStatus::Pass : CheckStatus::Fail;
    std::ostringstream os;
    os.precision(1);
    os << std::fixed << "|difference| <= 1e" << l;
    r.detail = os.str();
    return r;
  }
  if (name == "ode-prop3")
    return ode_result(name, s, N, generating_series(make_spec(Family::PROP3, s), N), ode_prop3(s),
                      "printed ODE on the convolution series");
  if (name == "ode-prop5")
    return ode_result(name, s, N, generating_series(make_spec(Family::PROP5, s), N), ode_prop5(s),
                      "printed ODE on the convolution series");
  if (name == "ode-prop6")
    return ode_result(name, s, N, hyp({half, s, one - s}, {one, one}, N), ode_prop6(s), "printed ODE on the 3F2");
  if (name == "ode-general") {
    if (s != R(1, 6)) throw Error(Errc::InvalidArgument, "the general-transformation ODE is printed for s=1/6 only");
    return ode_result(name, s, N, generating_series(make_spec(Family::HYP, s, standard_M(s)), N), ode_general_s16(),
                      "printed ODE on the hypergeometric series");
  }
  throw Error(Errc::InvalidArgument, "unknown identity '" + name + "'");
}

}  // namespace piforge
