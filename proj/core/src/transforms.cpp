#include "piforge/transforms.hpp"

#include "piforge/errors.hpp"

namespace piforge {

bool is_convergent(const FamilySpec& family, const SurdExpr& arg) {
  return compare(abs(arg) * SurdExpr(growth(family)), SurdExpr(1)) == Cmp::LT;
}

namespace {

void require_hyp(const Formula& f, bool scaled) {
  if (f.family.kind != Family::HYP)
    throw Error(Errc::InvalidArgument, f.id + ": source must be a HYP formula");
  const bool is_scaled = f.family.M != 1;
  if (is_scaled != scaled)
    throw Error(Errc::InvalidArgument,
                f.id + (scaled ? ": needs the integer-scaled HYP family" : ": needs the plain HYP family"));
}

Formula derived(const Formula& f, Family kind, const std::string& transform) {
  Formula out;
  out.family = make_spec(kind, f.family.s);
  out.rhs = f.rhs;
  out.derived_from = f.id;
  out.transform = transform;
  out.id = f.id + "-" + transform;
  return out;
}

void finish(Formula& out) { out.convergent = is_convergent(out.family, out.arg); }

}  // namespace

Formula prop1_transform(const Formula& f) {
  require_hyp(f, true);
  const SurdExpr M(Rational(f.family.M));
  const SurdExpr m = SurdExpr(1) - M * f.arg;
  if (m.is_zero()) throw Error(Errc::PoleAtArgument, f.id + ": 1 - M x0 = 0");
  const SurdExpr r = sqrt_exact(m);
  const SurdExpr m32 = m * r;
  Formula out = derived(f, Family::PROP1, "prop1");
  out.arg = -f.arg / m;
  out.lin0 = (SurdExpr(Rational(1, 2)) * f.lin1 * M * f.arg + f.lin0 * m) / m32;
  out.lin1 = f.lin1 / m32;
  finish(out);
  return out;
}

Formula prop4_transform(const Formula& f, int sign) {
  require_hyp(f, false);
  const SurdExpr& x0 = f.arg;
  const SurdExpr r = sqrt_exact(x0 * x0 - x0);
  const SurdExpr half(Rational(1, 2));
  Formula out = derived(f, Family::PROP3, sign > 0 ? "prop4+" : "prop4-");
  const SurdExpr w = half * (-x0 + (sign > 0 ? r : -r));
  const SurdExpr one(1);
  const SurdExpr p = one + SurdExpr(4) * w;
  const SurdExpr q = one + SurdExpr(2) * w;
  if (q.is_zero()) throw Error(Errc::PoleAtArgument, f.id + ": 1 + 2 w0 = 0");
  const SurdExpr rp = sqrt_exact(p);
  out.arg = w;
  out.lin0 = rp * (f.lin0 + f.lin1 * w / q);
  out.lin1 = f.lin1 * p * rp / (SurdExpr(2) * q);
  finish(out);
  return out;
}

Formula prop5_transform(const Formula& f) {
  require_hyp(f, false);
  const SurdExpr& x0 = f.arg;
  if (x0.is_zero()) throw Error(Errc::InvalidArgument, f.id + ": x0 = 0 is excluded");
  const SurdExpr one(1);
  const SurdExpr r = sqrt_exact(one - x0);
  Formula out = derived(f, Family::PROP5, "prop5");
  const SurdExpr w = one - SurdExpr(2) / x0 * (one - r);
  const SurdExpr q = one + w;
  if (q.is_zero()) throw Error(Errc::PoleAtArgument, f.id + ": 1 + w0 = 0");
  out.arg = w;
  out.lin0 = (one - w) * (f.lin0 - f.lin1 * w / q);
  out.lin1 = f.lin1 * (one - w) * (one - w) / q;
  finish(out);
  return out;
}

Formula prop7_transform(const Formula& f) {
  require_hyp(f, false);
  const SurdExpr one(1);
  const SurdExpr m = one - f.arg;
  if (m.is_zero()) throw Error(Errc::PoleAtArgument, f.id + ": x0 = 1");
  const SurdExpr r = sqrt_exact(m);
  Formula out = derived(f, Family::PROP7, "prop7");
  const SurdExpr w = SurdExpr(Rational(1, 2)) * (one - r);
  out.arg = w;
  out.lin0 = f.lin0;
  out.lin1 = f.lin1 * (one - w) / (one - SurdExpr(2) * w);
  finish(out);
  return out;
}

Rational cs_squared(const Rational& s) {
  if (s == Rational(1, 2)) return Rational(1, 4);
  if (s == Rational(1, 3)) return Rational(1, 3);
  if (s == Rational(1, 4)) return Rational(1, 2);
  if (s == Rational(1, 6)) return Rational(1);
  throw Error(Errc::InvalidArgument, "C_s^2 undefined for s = " + s.to_string());
}

Formula appendix_hat_transform(const Formula& f) {
  if (f.family.kind != Family::PROP7) throw Error(Errc::InvalidArgument, f.id + ": hat needs a PROP7 formula");
  if (!f.tau0_im_sq) throw Error(Errc::MissingTau, f.id + ": no tau0 recorded");
  const SurdExpr w1 = SurdExpr(1) - f.arg;
  if (compare(abs(w1), SurdExpr(1)) != Cmp::LT)
    throw Error(Errc::DivergentCompanion, f.id + ": |1 - w0| >= 1");
  const SurdExpr tau(*f.tau0_im_sq);
  const SurdExpr y = sqrt_exact(tau);
  const SurdExpr cs2(cs_squared(f.family.s));
  Formula out;
  out.family = f.family;
  out.id = f.id + "-hat";
  out.derived_from = f.id;
  out.transform = "hat";
  out.arg = w1;
  out.lin0 = f.lin0;
  out.lin1 = -f.lin1 * f.arg / w1;
  out.rhs = f.rhs * tau / cs2 - f.lin1 * y / (cs2 * w1);
  finish(out);
  return out;
}

QSeries general_substitution(const QSeries& f, const BigInt& M) {
  const std::size_t n = f.order();
  QSeries one_minus = QSeries::constant(Rational(1), n);
  if (n >= 1) one_minus[1] = -Rational(M);
  QSeries inner = -QSeries::variable(n) / one_minus;
  return pow_rational(one_minus, Rational(-1, 2)) * compose(f, inner);
}

bool involution_holds(const QSeries& f, const BigInt& M) {
  return general_substitution(general_substitution(f, M), M) == f;
}

bool substitution_pair(const QSeries& a, const QSeries& A, const BigInt& M) {
  return general_substitution(a, M) == A && general_substitution(A, M) == a;
}

bool involution_check(const FamilySpec& spec, std::size_t order) {
  if (spec.kind != Family::HYP && spec.kind != Family::PROP1)
    throw Error(Errc::InvalidArgument, "involution is defined for HYP/PROP1");
  const BigInt M = standard_M(spec.s);
  const QSeries a = generating_series(make_spec(Family::HYP, spec.s, M), order);
  const QSeries A = generating_series(make_spec(Family::PROP1, spec.s), order);
  return substitution_pair(a, A, M) && involution_holds(a, M);
}

}  // namespace piforge
