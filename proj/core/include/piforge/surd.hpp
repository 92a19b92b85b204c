#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "piforge/bigfloat.hpp"
#include "piforge/rational.hpp"

namespace piforge {

enum class Cmp { LT, EQ, GT };

/// Finite sum of q_i * sqrt(d_i) with distinct squarefree d_i > 0; d = 1 is
/// the rational part. No stored coefficient is zero.
class SurdExpr {
 public:
  using Terms = std::map<BigInt, Rational>;

  SurdExpr() = default;
  SurdExpr(const Rational& q);  // NOLINT(google-explicit-constructor)
  SurdExpr(long n) : SurdExpr(Rational(n)) {}  // NOLINT(google-explicit-constructor)
  SurdExpr(int n) : SurdExpr(Rational(n)) {}   // NOLINT(google-explicit-constructor)

  /// q * sqrt(radicand), radicand >= 0 and not necessarily squarefree.
  static SurdExpr term(const Rational& q, const BigInt& radicand);
  static SurdExpr normalize(const std::vector<std::pair<Rational, BigInt>>& raw);
  /// `17/300*sqrt(51)-65/288*sqrt(3)`; positions in errors are 1-based columns.
  static SurdExpr parse(std::string_view text);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 1); }
  Rational rational_part() const;
  Rational coefficient(const BigInt& radicand) const;
  /// Radicands other than 1, ascending.
  std::vector<BigInt> radicands() const;

  std::string to_string() const;
  BigFloat to_bigfloat(mpfr_prec_t prec) const;
  double to_double() const;

  SurdExpr operator-() const;
  SurdExpr& operator+=(const SurdExpr& o);
  SurdExpr& operator-=(const SurdExpr& o);
  SurdExpr& operator*=(const SurdExpr& o);
  SurdExpr& operator/=(const SurdExpr& o);

  friend SurdExpr operator+(SurdExpr a, const SurdExpr& b) { return a += b; }
  friend SurdExpr operator-(SurdExpr a, const SurdExpr& b) { return a -= b; }
  friend SurdExpr operator*(SurdExpr a, const SurdExpr& b) { return a *= b; }
  friend SurdExpr operator/(SurdExpr a, const SurdExpr& b) { return a /= b; }
  friend bool operator==(const SurdExpr& a, const SurdExpr& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const SurdExpr& a, const SurdExpr& b) { return !(a == b); }

 private:
  void add_term(const Rational& q, const BigInt& squarefree);
  Terms terms_;
};

std::ostream& operator<<(std::ostream& os, const SurdExpr& x);

/// Flips the sign of every term whose radicand is divisible by the prime p.
SurdExpr conjugate(const SurdExpr& x, const BigInt& p);

/// EQ structurally; otherwise the sign of x - y by interval refinement.
Cmp compare(const SurdExpr& x, const SurdExpr& y);
int sign(const SurdExpr& x);
SurdExpr abs(const SurdExpr& x);

/// Positive square root when it is itself a SurdExpr of the supported shapes.
/// Throws NegativeRadicand for x < 0; nullopt means NotDenestable.
std::optional<SurdExpr> sqrt_denest(const SurdExpr& x);
/// sqrt_denest or throw NotDenestable.
SurdExpr sqrt_exact(const SurdExpr& x);

SurdExpr pow(const SurdExpr& x, unsigned n);

}  // namespace piforge
