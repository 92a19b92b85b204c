#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "piforge/errors.hpp"
#include "piforge/rational.hpp"
#include "piforge/surd.hpp"

namespace piforge {

/// Truncated power series c_0 + c_1 x + ... + c_N x^N. Coefficients past
/// `order()` are unknown, never zero-by-assumption.
template <typename T>
class TruncSeries {
 public:
  explicit TruncSeries(std::size_t order = 0) : c_(order + 1, T(0)) {}
  TruncSeries(std::vector<T> coeffs) : c_(std::move(coeffs)) {  // NOLINT(google-explicit-constructor)
    if (c_.empty()) c_.push_back(T(0));
  }

  static TruncSeries constant(const T& v, std::size_t order) {
    TruncSeries out(order);
    out.c_[0] = v;
    return out;
  }
  /// The series `x` truncated at `order` (order >= 1 keeps the x term).
  static TruncSeries variable(std::size_t order) {
    TruncSeries out(order);
    if (order >= 1) out.c_[1] = T(1);
    return out;
  }

  std::size_t order() const { return c_.size() - 1; }
  const T& operator[](std::size_t n) const { return c_.at(n); }
  T& operator[](std::size_t n) { return c_.at(n); }
  const std::vector<T>& coeffs() const { return c_; }

  TruncSeries truncate(std::size_t order) const {
    TruncSeries out(std::min(order, this->order()));
    std::copy_n(c_.begin(), out.c_.size(), out.c_.begin());
    return out;
  }

  TruncSeries& operator+=(const TruncSeries& o) {
    shrink_to(o.order());
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  TruncSeries& operator-=(const TruncSeries& o) {
    shrink_to(o.order());
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  TruncSeries& operator*=(const T& k) {
    for (auto& v : c_) v *= k;
    return *this;
  }

  friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
  friend TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }
  friend TruncSeries operator*(TruncSeries a, const T& k) { return a *= k; }
  friend TruncSeries operator-(TruncSeries a) { return a *= T(-1); }

  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
    const std::size_t n = std::min(a.order(), b.order());
    TruncSeries out(n);
    for (std::size_t i = 0; i <= n; ++i) {
      if (a.c_[i] == T(0)) continue;
      for (std::size_t j = 0; i + j <= n; ++j) out.c_[i + j] += a.c_[i] * b.c_[j];
    }
    return out;
  }

  friend TruncSeries operator/(const TruncSeries& a, const TruncSeries& b) {
    if (b.c_[0] == T(0)) throw Error(Errc::NonUnitDivisor, "divisor has zero constant term");
    const std::size_t n = std::min(a.order(), b.order());
    TruncSeries out(n);
    for (std::size_t k = 0; k <= n; ++k) {
      T acc = a.c_[k];
      for (std::size_t j = 1; j <= k; ++j) acc -= b.c_[j] * out.c_[k - j];
      out.c_[k] = acc / b.c_[0];
    }
    return out;
  }

  friend bool operator==(const TruncSeries& a, const TruncSeries& b) { return a.c_ == b.c_; }
  friend bool operator!=(const TruncSeries& a, const TruncSeries& b) { return a.c_ != b.c_; }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const T& v) { return v == T(0); });
  }

 private:
  void shrink_to(std::size_t order) {
    if (order < this->order()) c_.resize(order + 1);
  }

  std::vector<T> c_;
};

using QSeries = TruncSeries<Rational>;
using SurdSeries = TruncSeries<SurdExpr>;

/// f(g(x)); g must have zero constant term. Horner in the truncated ring.
template <typename T>
TruncSeries<T> compose(const TruncSeries<T>& f, const TruncSeries<T>& g) {
  if (!(g[0] == T(0))) throw Error(Errc::NonzeroConstantInner, "inner series has a constant term");
  const std::size_t n = std::min(f.order(), g.order());
  TruncSeries<T> out = TruncSeries<T>::constant(f[n], n);
  for (std::size_t k = n; k-- > 0;) {
    out = out * g;
    out[0] += f[k];
  }
  return out;
}

/// f^e for f with constant term 1, via g' f = e f' g solved coefficientwise.
template <typename T>
TruncSeries<T> pow_rational(const TruncSeries<T>& f, const Rational& e) {
  if (!(f[0] == T(1))) throw Error(Errc::NonUnitBase, "base series must start with 1");
  const std::size_t n = f.order();
  TruncSeries<T> g = TruncSeries<T>::constant(T(1), n);
  for (std::size_t m = 1; m <= n; ++m) {
    T acc(0);
    for (std::size_t k = 1; k <= m; ++k) {
      Rational w = (e + Rational(1)) * Rational(static_cast<long>(k)) - Rational(static_cast<long>(m));
      acc += f[k] * g[m - k] * T(w);
    }
    g[m] = acc * T(Rational(1, static_cast<long>(m)));
  }
  return g;
}

template <typename T>
TruncSeries<T> theta(const TruncSeries<T>& f) {
  TruncSeries<T> out = f;
  for (std::size_t n = 0; n <= f.order(); ++n) out[n] = f[n] * T(Rational(static_cast<long>(n)));
  return out;
}

/// d/dx; the result has order one less (order 0 input gives the zero series).
template <typename T>
TruncSeries<T> derivative(const TruncSeries<T>& f) {
  if (f.order() == 0) return TruncSeries<T>(0);
  TruncSeries<T> out(f.order() - 1);
  for (std::size_t n = 0; n < f.order(); ++n) out[n] = f[n + 1] * T(Rational(static_cast<long>(n + 1)));
  return out;
}

/// Coefficient n multiplied by c^n, i.e. f(c x).
template <typename T>
TruncSeries<T> scale_argument(const TruncSeries<T>& f, const T& c) {
  TruncSeries<T> out = f;
  T p(1);
  for (std::size_t n = 0; n <= f.order(); ++n) {
    out[n] = f[n] * p;
    p *= c;
  }
  return out;
}

/// Lifts a rational series into another coefficient ring.
template <typename T>
TruncSeries<T> to_surd(const TruncSeries<Rational>& f) {
  TruncSeries<T> out(f.order());
  for (std::size_t n = 0; n <= f.order(); ++n) out[n] = T(f[n]);
  return out;
}

/// pFq(upper; lower; x) with the n! implicit; rational parameters only.
QSeries hypergeometric_series(const std::vector<Rational>& upper, const std::vector<Rational>& lower,
                              std::size_t order);

/// Dense polynomial over Q, lowest degree first.
using Poly = std::vector<Rational>;

Poly poly_trim(Poly p);
Poly poly_mul(const Poly& a, const Poly& b);
/// Exact quotient; throws InvalidArgument if b does not divide a.
Poly poly_div_exact(const Poly& a, const Poly& b);
Poly poly_gcd(Poly a, Poly b);
Poly poly_lcm(const Poly& a, const Poly& b);

/// One coefficient of y''' + p2 y'' + p1 y' + p0 y = 0 with p = num/den.
/// derivative < 0 encodes a printed term with no dependent variable.
struct OdeTerm {
  int derivative;
  Poly num;
  Poly den;
};

struct Ode {
  std::vector<OdeTerm> terms;
};

struct OdeResidual {
  QSeries residual;
  /// Residual coefficients 0..checked_order are trustworthy.
  std::size_t checked_order;
  Poly clearing;  // the polynomial multiplied through
};

/// Applies the ODE to f after multiplying through by the lcm of all
/// denominators. Throws MalformedOde for a term with no dependent variable.
OdeResidual apply_ode(const QSeries& f, const Ode& ode);

}  // namespace piforge
