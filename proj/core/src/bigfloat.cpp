#include "piforge/bigfloat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "piforge/errors.hpp"

namespace piforge {

namespace {

constexpr mpfr_prec_t kErrPrec = 64;

struct Tmp {
  explicit Tmp(mpfr_prec_t p) { mpfr_init2(v, p); }
  ~Tmp() { mpfr_clear(v); }
  Tmp(const Tmp&) = delete;
  Tmp& operator=(const Tmp&) = delete;
  mpfr_t v;
};

// Interval image of a monotone increasing (sign=+1) or decreasing (-1)
// correctly rounded MPFR function on [lo, hi].
template <typename Fn>
BigFloat monotone(const BigFloat& x, int direction, Fn fn, mpfr_srcptr lo_in = nullptr) {
  const mpfr_prec_t p = x.precision();
  Tmp lo(p + 8), hi(p + 8), flo(p + 8), fhi(p + 8);
  if (lo_in) {
    mpfr_set(lo.v, lo_in, MPFR_RNDD);
  } else {
    mpfr_sub(lo.v, x.mid(), x.err(), MPFR_RNDD);
  }
  mpfr_add(hi.v, x.mid(), x.err(), MPFR_RNDU);
  if (direction > 0) {
    fn(flo.v, lo.v, MPFR_RNDD);
    fn(fhi.v, hi.v, MPFR_RNDU);
  } else {
    fn(flo.v, hi.v, MPFR_RNDD);
    fn(fhi.v, lo.v, MPFR_RNDU);
  }
  Tmp mid(p), e1(kErrPrec), e2(kErrPrec);
  mpfr_add(mid.v, flo.v, fhi.v, MPFR_RNDN);
  mpfr_div_2ui(mid.v, mid.v, 1, MPFR_RNDN);
  mpfr_sub(e1.v, fhi.v, mid.v, MPFR_RNDU);
  mpfr_sub(e2.v, mid.v, flo.v, MPFR_RNDU);
  mpfr_max(e1.v, e1.v, e2.v, MPFR_RNDU);
  return BigFloat::with_error(mid.v, e1.v, p);
}

}  // namespace

mpfr_prec_t bits_for_digits(long digits, long guard_bits) {
  return static_cast<mpfr_prec_t>(std::ceil(static_cast<double>(digits) * 3.3219280948873623)) + guard_bits;
}

BigFloat::BigFloat(mpfr_prec_t prec) : prec_(prec) {
  mpfr_init2(mid_, prec_);
  mpfr_init2(err_, kErrPrec);
  mpfr_set_zero(mid_, 1);
  mpfr_set_zero(err_, 1);
}

BigFloat::BigFloat(const BigFloat& o) : prec_(o.prec_) {
  mpfr_init2(mid_, prec_);
  mpfr_init2(err_, kErrPrec);
  mpfr_set(mid_, o.mid_, MPFR_RNDN);
  mpfr_set(err_, o.err_, MPFR_RNDU);
}

BigFloat::BigFloat(BigFloat&& o) noexcept : BigFloat(mpfr_prec_t{MPFR_PREC_MIN}) { *this = std::move(o); }

BigFloat& BigFloat::operator=(const BigFloat& o) {
  if (this == &o) return *this;
  prec_ = o.prec_;
  mpfr_set_prec(mid_, prec_);
  mpfr_set(mid_, o.mid_, MPFR_RNDN);
  mpfr_set(err_, o.err_, MPFR_RNDU);
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& o) noexcept {
  std::swap(prec_, o.prec_);
  mpfr_swap(mid_, o.mid_);
  mpfr_swap(err_, o.err_);
  return *this;
}

BigFloat::~BigFloat() {
  mpfr_clear(mid_);
  mpfr_clear(err_);
}

BigFloat BigFloat::from(const Rational& q, mpfr_prec_t prec) {
  BigFloat out(prec);
  if (mpfr_set_q(out.mid_, q.raw().get_mpq_t(), MPFR_RNDN) != 0) out.round_error();
  return out;
}

BigFloat BigFloat::with_error(const mpfr_t mid, const mpfr_t err, mpfr_prec_t prec) {
  BigFloat out(prec);
  if (mpfr_set(out.mid_, mid, MPFR_RNDN) != 0) out.round_error();
  out.add_error(err);
  return out;
}

void BigFloat::add_error(const mpfr_t e) {
  Tmp a(kErrPrec);
  mpfr_abs(a.v, e, MPFR_RNDU);
  mpfr_add(err_, err_, a.v, MPFR_RNDU);
}

void BigFloat::add_error_pow2(long exp2) {
  Tmp a(kErrPrec);
  mpfr_set_ui_2exp(a.v, 1, exp2, MPFR_RNDU);
  mpfr_add(err_, err_, a.v, MPFR_RNDU);
}

void BigFloat::round_error() {
  if (mpfr_zero_p(mid_)) return;
  add_error_pow2(mpfr_get_exp(mid_) - prec_);
}

int BigFloat::certain_sign() const {
  Tmp a(kErrPrec);
  mpfr_abs(a.v, mid_, MPFR_RNDD);
  if (mpfr_cmp(a.v, err_) <= 0) return 0;
  return mpfr_sgn(mid_) > 0 ? 1 : -1;
}

double BigFloat::log10_upper_abs() const {
  Tmp a(prec_ + 8);
  mpfr_abs(a.v, mid_, MPFR_RNDU);
  mpfr_add(a.v, a.v, err_, MPFR_RNDU);
  if (mpfr_zero_p(a.v)) return -std::numeric_limits<double>::infinity();
  mpfr_log10(a.v, a.v, MPFR_RNDU);
  return mpfr_get_d(a.v, MPFR_RNDU);
}

double BigFloat::correct_digits() const {
  if (mpfr_zero_p(err_)) return 1e9;
  Tmp a(kErrPrec);
  mpfr_log10(a.v, err_, MPFR_RNDU);
  return -mpfr_get_d(a.v, MPFR_RNDU);
}

std::string BigFloat::to_fixed(long digits) const {
  // Truncate |mid| * 10^digits toward zero, then place the decimal point.
  Tmp scaled(prec_ + 64);
  mpfr_abs(scaled.v, mid_, MPFR_RNDN);
  Tmp ten(prec_ + 64);
  mpfr_ui_pow_ui(ten.v, 10, static_cast<unsigned long>(digits), MPFR_RNDN);
  mpfr_mul(scaled.v, scaled.v, ten.v, MPFR_RNDN);
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), scaled.v, MPFR_RNDZ);
  std::string s = z.get_str();
  if (static_cast<long>(s.size()) <= digits) s.insert(0, static_cast<std::size_t>(digits + 1 - static_cast<long>(s.size())), '0');
  if (digits > 0) s.insert(s.size() - static_cast<std::size_t>(digits), ".");
  if (mpfr_sgn(mid_) < 0) s.insert(0, "-");
  return s;
}

std::string BigFloat::to_sci(int digits) const {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Re", digits - 1, mid_);
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

BigFloat BigFloat::operator-() const {
  BigFloat out(*this);
  mpfr_neg(out.mid_, out.mid_, MPFR_RNDN);
  return out;
}

BigFloat& BigFloat::operator+=(const BigFloat& o) {
  mpfr_add(err_, err_, o.err_, MPFR_RNDU);
  if (mpfr_add(mid_, mid_, o.mid_, MPFR_RNDN) != 0) round_error();
  return *this;
}

BigFloat& BigFloat::operator-=(const BigFloat& o) {
  mpfr_add(err_, err_, o.err_, MPFR_RNDU);
  if (mpfr_sub(mid_, mid_, o.mid_, MPFR_RNDN) != 0) round_error();
  return *this;
}

BigFloat& BigFloat::operator*=(const BigFloat& o) {
  Tmp ax(kErrPrec), ay(kErrPrec), t(kErrPrec), e(kErrPrec);
  mpfr_abs(ax.v, mid_, MPFR_RNDU);
  mpfr_abs(ay.v, o.mid_, MPFR_RNDU);
  mpfr_mul(e.v, ax.v, o.err_, MPFR_RNDU);
  mpfr_mul(t.v, ay.v, err_, MPFR_RNDU);
  mpfr_add(e.v, e.v, t.v, MPFR_RNDU);
  mpfr_mul(t.v, err_, o.err_, MPFR_RNDU);
  mpfr_add(err_, e.v, t.v, MPFR_RNDU);
  if (mpfr_mul(mid_, mid_, o.mid_, MPFR_RNDN) != 0) round_error();
  return *this;
}

BigFloat& BigFloat::operator/=(const BigFloat& o) {
  if (o.contains_zero()) throw Error(Errc::DivisionByZero, "divisor interval contains zero");
  Tmp ay(kErrPrec), q(kErrPrec), num(kErrPrec), t(kErrPrec);
  mpfr_abs(ay.v, o.mid_, MPFR_RNDD);
  mpfr_sub(ay.v, ay.v, o.err_, MPFR_RNDD);
  mpfr_div(q.v, mid_, o.mid_, MPFR_RNDU);
  mpfr_abs(q.v, q.v, MPFR_RNDU);
  mpfr_mul(t.v, q.v, o.err_, MPFR_RNDU);
  mpfr_add(num.v, err_, t.v, MPFR_RNDU);
  mpfr_div(err_, num.v, ay.v, MPFR_RNDU);
  if (mpfr_div(mid_, mid_, o.mid_, MPFR_RNDN) != 0) round_error();
  return *this;
}

BigFloat& BigFloat::operator*=(const Rational& q) {
  Tmp aq(kErrPrec);
  mpq_class mag = ::abs(q.raw());
  mpfr_set_q(aq.v, mag.get_mpq_t(), MPFR_RNDU);
  mpfr_mul(err_, err_, aq.v, MPFR_RNDU);
  if (mpfr_mul_q(mid_, mid_, q.raw().get_mpq_t(), MPFR_RNDN) != 0) round_error();
  return *this;
}

BigFloat& BigFloat::operator/=(const Rational& q) {
  if (q.is_zero()) throw Error(Errc::DivisionByZero, "BigFloat divided by zero rational");
  return *this *= q.inverse();
}

BigFloat abs(const BigFloat& x) {
  if (mpfr_sgn(x.mid()) >= 0) return x;
  return -x;
}

BigFloat sqrt(const BigFloat& x) {
  Tmp lo(x.precision() + 8);
  mpfr_sub(lo.v, x.mid(), x.err(), MPFR_RNDD);
  if (mpfr_sgn(lo.v) < 0) {
    Tmp hi(x.precision() + 8);
    mpfr_add(hi.v, x.mid(), x.err(), MPFR_RNDU);
    if (mpfr_sgn(hi.v) < 0) throw Error(Errc::NegativeRadicand, "sqrt of a negative interval");
    mpfr_set_zero(lo.v, 1);
    return monotone(x, 1, mpfr_sqrt, lo.v);
  }
  return monotone(x, 1, mpfr_sqrt);
}

BigFloat exp(const BigFloat& x) { return monotone(x, 1, mpfr_exp); }

BigFloat log(const BigFloat& x) {
  if (x.certain_sign() <= 0) throw Error(Errc::OutsideDomain, "log of a non-positive interval");
  return monotone(x, 1, mpfr_log);
}

BigFloat sin(const BigFloat& x) {
  Tmp v(x.precision());
  int inexact = mpfr_sin(v.v, x.mid(), MPFR_RNDN);
  // |sin'| <= 1.
  BigFloat out = BigFloat::with_error(v.v, x.err(), x.precision());
  if (inexact != 0 && !mpfr_zero_p(v.v)) out.add_error_pow2(mpfr_get_exp(v.v) - x.precision());
  return out;
}

BigFloat pow(const BigFloat& x, unsigned long n) {
  BigFloat out = BigFloat::from(1, x.precision());
  BigFloat base = x;
  while (n > 0) {
    if (n & 1UL) out *= base;
    n >>= 1;
    if (n > 0) base *= base;
  }
  return out;
}

BigFloat digamma(const BigFloat& x) {
  if (x.certain_sign() <= 0) throw Error(Errc::OutsideDomain, "digamma needs x > 0");
  return monotone(x, 1, mpfr_digamma);
}

BigFloat gamma(const BigFloat& x) {
  Tmp lo(x.precision());
  mpfr_sub(lo.v, x.mid(), x.err(), MPFR_RNDD);
  if (mpfr_cmp_ui(lo.v, 2) < 0) throw Error(Errc::OutsideDomain, "gamma needs x >= 2");
  return monotone(x, 1, mpfr_gamma);
}

}  // namespace piforge
