#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "piforge/rational.hpp"
#include "piforge/series.hpp"

namespace piforge {

enum class Family { HYP, PROP1, PROP3, PROP5, PROP7 };

std::string family_name(Family f);
Family family_from_name(const std::string& name);

/// HYP carries M = 1 (plain (1/2)_n(s)_n(1-s)_n/n!^3) or M = standard_M(s)
/// (the integer-valued form). PROP1 always uses standard_M(s); the other
/// families ignore M and store 1.
struct FamilySpec {
  Family kind = Family::HYP;
  Rational s = Rational(1, 2);
  BigInt M = 1;

  friend bool operator==(const FamilySpec& a, const FamilySpec& b) {
    return a.kind == b.kind && a.s == b.s && a.M == b.M;
  }
};

/// 64, 108, 256, 1728 for s = 1/2, 1/3, 1/4, 1/6.
BigInt standard_M(const Rational& s);
bool supported_s(const Rational& s);
/// Validates s and fills in M for PROP1 / clears it for convolution families.
FamilySpec make_spec(Family kind, const Rational& s, const BigInt& M = 1);

Rational pochhammer(const Rational& a, unsigned long k);
/// a(a-1)...(a-k+1)/k!.
Rational frac_binomial(const Rational& a, unsigned long k);
BigInt binomial(unsigned long n, unsigned long k);

/// A_n = scale^n * sum_k u_k v_{n-k}, u_k = (ua)_k (ub)_k / k!^2 and
/// v_k = (va)_k (vb)_k / k!^2. The generating function is U(scale x) V(scale x)
/// with U, V Gauss series of unit lower parameter.
struct Factorization {
  Rational scale;
  Rational ua, ub, va, vb;
};
Factorization factorization(const FamilySpec& spec);

/// Per-family growth G with |A_n| <= (n+1) G^n; the series converges for
/// G |x| < 1.
Rational growth(const FamilySpec& spec);

/// HYP coefficient via the term ratio; exact.
Rational a_n(const FamilySpec& spec, std::size_t n);
/// Family coefficient, exact and cached.
Rational A_n(const FamilySpec& spec, std::size_t n);
/// Full-range convolution with no symmetry shortcut (for testing).
Rational A_n_full(const FamilySpec& spec, std::size_t n);
/// Coefficients 0..count-1.
std::vector<Rational> coefficients(const FamilySpec& spec, std::size_t count);

QSeries generating_series(const FamilySpec& spec, std::size_t order);

/// Integer closed form of the standard-M HYP coefficient as a binomial product.
BigInt hyp_binomial_form(const Rational& s, unsigned long n);

}  // namespace piforge
