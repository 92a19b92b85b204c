#pragma once

#include <cstddef>

#include "piforge/formula.hpp"
#include "piforge/series.hpp"

namespace piforge {

/// x -> -x/(1-Mx) with prefactor (1-Mx)^(-1/2); HYP (standard M) -> PROP1.
Formula prop1_transform(const Formula& f);
/// w0 = (-x0 +- sqrt(x0^2 - x0))/2; plain HYP -> PROP3.
Formula prop4_transform(const Formula& f, int sign);
/// w0 = 1 - (2/x0)(1 - sqrt(1-x0)); plain HYP -> PROP5.
Formula prop5_transform(const Formula& f);
/// w0 = (1 - sqrt(1-x0))/2; plain HYP -> PROP7.
Formula prop7_transform(const Formula& f);
/// Companion at w1 = 1 - w0; PROP7 with tau0 -> PROP7.
Formula appendix_hat_transform(const Formula& f);

/// 1/(4 sin^2(pi s)) for the four supported s.
Rational cs_squared(const Rational& s);

/// (1-Mx)^(-1/2) f(-x/(1-Mx)) to the order of f.
QSeries general_substitution(const QSeries& f, const BigInt& M);
/// Applying the substitution twice returns f.
bool involution_holds(const QSeries& f, const BigInt& M);
/// The substitution maps a to A and A back to a.
bool substitution_pair(const QSeries& a, const QSeries& A, const BigInt& M);
/// substitution_pair for the HYP and PROP1 series of spec.s (standard M),
/// plus the double application on the HYP side.
bool involution_check(const FamilySpec& spec, std::size_t order);

}  // namespace piforge
