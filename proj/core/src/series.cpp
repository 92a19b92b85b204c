#include "piforge/series.hpp"

namespace piforge {

QSeries hypergeometric_series(const std::vector<Rational>& upper, const std::vector<Rational>& lower,
                              std::size_t order) {
  QSeries out(order);
  Rational t(1);
  for (std::size_t n = 0; n <= order; ++n) {
    out[n] = t;
    const Rational k(static_cast<long>(n));
    Rational num(1), den(k + Rational(1));
    for (const Rational& a : upper) num *= a + k;
    for (const Rational& b : lower) den *= b + k;
    if (num.is_zero()) {
      for (std::size_t m = n + 1; m <= order; ++m) out[m] = Rational(0);
      break;
    }
    t = t * num / den;
  }
  return out;
}

Poly poly_trim(Poly p) {
  while (p.size() > 1 && p.back().is_zero()) p.pop_back();
  if (p.empty()) p.push_back(Rational(0));
  return p;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return poly_trim(out);
}

namespace {

bool is_zero_poly(const Poly& p) { return p.size() == 1 && p[0].is_zero(); }

void poly_divmod(const Poly& a_in, const Poly& b_in, Poly& q, Poly& r) {
  Poly b = poly_trim(b_in);
  r = poly_trim(a_in);
  if (is_zero_poly(b)) throw Error(Errc::DivisionByZero, "polynomial division by zero");
  q.assign(r.size() >= b.size() ? r.size() - b.size() + 1 : 1, Rational(0));
  while (!is_zero_poly(r) && r.size() >= b.size()) {
    std::size_t shift = r.size() - b.size();
    Rational c = r.back() / b.back();
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) r[shift + i] -= c * b[i];
    r = poly_trim(r);
  }
  q = poly_trim(q);
}

}  // namespace

Poly poly_div_exact(const Poly& a, const Poly& b) {
  Poly q, r;
  poly_divmod(a, b, q, r);
  if (!is_zero_poly(r)) throw Error(Errc::InvalidArgument, "polynomial does not divide exactly");
  return q;
}

Poly poly_gcd(Poly a, Poly b) {
  a = poly_trim(a);
  b = poly_trim(b);
  while (!is_zero_poly(b)) {
    Poly q, r;
    poly_divmod(a, b, q, r);
    a = b;
    b = r;
  }
  Rational lead = a.back();
  for (auto& c : a) c /= lead;
  return a;
}

Poly poly_lcm(const Poly& a, const Poly& b) { return poly_div_exact(poly_mul(a, b), poly_gcd(a, b)); }

OdeResidual apply_ode(const QSeries& f, const Ode& ode) {
  Poly clearing{Rational(1)};
  int max_derivative = 0;
  for (const OdeTerm& t : ode.terms) {
    if (t.derivative < 0) throw Error(Errc::MalformedOde, "term without a dependent variable");
    clearing = poly_lcm(clearing, t.den);
    max_derivative = std::max(max_derivative, t.derivative);
  }
  if (f.order() < static_cast<std::size_t>(max_derivative))
    throw Error(Errc::InvalidArgument, "series order below ODE order");
  const std::size_t out_order = f.order() - static_cast<std::size_t>(max_derivative);
  QSeries residual(out_order);
  for (const OdeTerm& t : ode.terms) {
    QSeries d = f;
    for (int k = 0; k < t.derivative; ++k) d = derivative(d);
    Poly factor = poly_mul(t.num, poly_div_exact(clearing, t.den));
    for (std::size_t i = 0; i < factor.size(); ++i) {
      if (factor[i].is_zero()) continue;
      for (std::size_t n = i; n <= out_order; ++n) residual[n] += factor[i] * d[n - i];
    }
  }
  return {residual, out_order, clearing};
}

}  // namespace piforge
