#include "piforge/modular.hpp"

#include <cmath>
#include <vector>

#include "piforge/errors.hpp"
#include "piforge/pi.hpp"
#include "piforge/transforms.hpp"

namespace piforge {

namespace {

double upper_abs(const BigFloat& x) {
  mpfr_t a;
  mpfr_init2(a, 64);
  mpfr_abs(a, x.mid(), MPFR_RNDU);
  mpfr_add(a, a, x.err(), MPFR_RNDU);
  double d = mpfr_get_d(a, MPFR_RNDU);
  mpfr_clear(a);
  return d;
}

void add_error_d(BigFloat& x, double e) {
  mpfr_t m;
  mpfr_init2(m, 64);
  mpfr_set_d(m, e, MPFR_RNDU);
  x.add_error(m);
  mpfr_clear(m);
}

// Truncation length so that q^(L+1) is far below the working precision.
long truncation(const BigFloat& q) {
  const double lq = -std::log2(upper_abs(q));
  return static_cast<long>(std::ceil(static_cast<double>(q.precision() + 16) / lq)) + 16;
}

// prod_{n>=1} (1 - q^(k n)) with the omitted factors folded into the radius:
// |log of the tail| <= 2 sum_{n>L} q^(kn) <= 2 q^(k(L+1)) / (1 - q)^2 for q <= 1/2.
BigFloat euler_product(const BigFloat& q, unsigned long k) {
  const mpfr_prec_t prec = q.precision();
  const long L = truncation(q) / static_cast<long>(k) + 2;
  BigFloat qk = pow(q, k);
  BigFloat qn = qk;
  BigFloat prod = BigFloat::from(1, prec);
  const BigFloat one = BigFloat::from(1, prec);
  for (long n = 1; n <= L; ++n) {
    prod *= one - qn;
    qn *= qk;
  }
  const double qu = upper_abs(q);
  const double tail = 2 * std::pow(qu, static_cast<double>(k * (L + 1))) / ((1 - qu) * (1 - qu));
  // (1 + delta) with |delta| <= e^tail - 1 <= 2 tail.
  add_error_d(prod, 2 * tail * upper_abs(prod));
  return prod;
}

}  // namespace

BigFloat TauPoint::im(mpfr_prec_t prec) const {
  if (im_sq.sign() <= 0) throw Error(Errc::OutsideDomain, "Im(tau)^2 must be positive");
  return sqrt(BigFloat::from(im_sq, prec));
}

BigFloat TauPoint::q(mpfr_prec_t prec) const { return q_of_im(im(prec)); }

BigFloat q_of_im(const BigFloat& y) {
  if (y.certain_sign() <= 0) throw Error(Errc::OutsideDomain, "Im(tau) must be positive");
  BigFloat q = exp(-(pi_at(y.precision()) * y * Rational(2)));
  if (upper_abs(q) > 0.5) throw Error(Errc::OutsideDomain, "Im(tau) too small for the q-expansion");
  return q;
}

BigFloat eta_at(const BigFloat& y) {
  const BigFloat q = q_of_im(y);
  // q^(1/24) = exp(-2 pi y / 24)
  BigFloat lead = exp(-(pi_at(y.precision()) * y * Rational(1, 12)));
  return lead * euler_product(q, 1);
}

BigFloat j_at(const BigFloat& y) {
  const BigFloat q = q_of_im(y);
  const mpfr_prec_t prec = q.precision();
  const long L = truncation(q);
  // sigma_3 table up to L.
  std::vector<BigInt> sigma3(static_cast<std::size_t>(L) + 1, BigInt(0));
  for (long d = 1; d <= L; ++d)
    for (long m = d; m <= L; m += d) sigma3[static_cast<std::size_t>(m)] += BigInt(d) * d * d;
  BigFloat e4 = BigFloat::from(1, prec);
  BigFloat qn = q;
  for (long n = 1; n <= L; ++n) {
    e4 += qn * Rational(BigInt(240 * sigma3[static_cast<std::size_t>(n)]));
    qn *= q;
  }
  // sigma_3(n) <= 1.21 n^3; tail ratio <= q (1 + 1/L)^3.
  const double qu = upper_abs(q);
  const double Ld = static_cast<double>(L + 1);
  const double rho = qu * std::pow(1 + 1 / Ld, 3);
  add_error_d(e4, 291 * Ld * Ld * Ld * std::pow(qu, Ld) / (1 - rho));
  BigFloat p = euler_product(q, 1);
  BigFloat delta = q * pow(p, 24);
  return pow(e4, 3) / delta;
}

int level_for(const Rational& s) {
  if (s == Rational(1, 2)) return 4;
  if (s == Rational(1, 3)) return 3;
  if (s == Rational(1, 4)) return 2;
  if (s == Rational(1, 6)) return 1;
  throw Error(Errc::InvalidArgument, "no level for s = " + s.to_string());
}

BigFloat t_N_at(int N, const BigFloat& y) {
  const mpfr_prec_t prec = y.precision();
  const BigFloat one = BigFloat::from(1, prec);
  if (N == 1) {
    const BigFloat j = j_at(y);
    return (one - sqrt(one - BigFloat::from(1728, prec) / j)) * Rational(1, 2);
  }
  long K, e;
  switch (N) {
    case 2: K = 64; e = 24; break;
    case 3: K = 27; e = 12; break;
    case 4: K = 16; e = 8; break;
    default: throw Error(Errc::InvalidArgument, "level must be 1..4");
  }
  // (eta(tau)/eta(N tau))^e = q^(-1) prod ((1-q^n)/(1-q^(Nn)))^e for these
  // (N, e), hence t_N = K q / (K q + P^e).
  const BigFloat q = q_of_im(y);
  const BigFloat P = euler_product(q, 1) / euler_product(q, static_cast<unsigned long>(N));
  const BigFloat Kq = q * Rational(K);
  return Kq / (Kq + pow(P, static_cast<unsigned long>(e)));
}

BigFloat eta(const TauPoint& tau, mpfr_prec_t prec) { return eta_at(tau.im(prec)); }

BigFloat j_invariant(const TauPoint& tau, mpfr_prec_t prec) { return j_at(tau.im(prec)); }

BigFloat t_N(int N, const TauPoint& tau, mpfr_prec_t prec) {
  BigFloat t = t_N_at(N, tau.im(prec));
  if (upper_abs(t) >= 1) throw Error(Errc::OutsideDomain, "|t| < 1 not certified");
  return t;
}

std::pair<BigFloat, BigFloat> F_and_G(const Rational& s, const BigFloat& t) {
  const mpfr_prec_t prec = t.precision();
  const double tu = upper_abs(t);
  if (tu >= 1 || t.certain_sign() < 0) throw Error(Errc::OutOfDisk, "F_and_G needs 0 <= t < 1");
  const Rational one(1);
  const double eps = std::ldexp(1.0, -static_cast<int>(prec) - 4);
  if (tu <= 0.5) {
    BigFloat F(prec), G(prec);
    BigFloat term = BigFloat::from(1, prec);
    for (long k = 0;; ++k) {
      F += term;
      G += term * Rational(k);
      const Rational kk(k), k1(k + 1);
      term *= (s + kk) * (one - s + kk) / (k1 * k1);
      term *= t;
      // Coefficient ratios are <= 1: tails <= |term|/(1-t), (k+1)|term|/(1-t(1+1/(k+1))).
      const double tm = upper_abs(term);
      const double rho = tu * (1 + 1.0 / static_cast<double>(k + 1));
      if (k > 2 && rho < 1 && tm * (k + 1) / (1 - rho) < eps) {
        add_error_d(F, tm / (1 - tu));
        add_error_d(G, tm * (k + 1) / (1 - rho));
        return {F, G};
      }
    }
  }
  // t > 1/2: with z = 1 - t and K = sin(pi s)/pi,
  //   F = K sum c_k [h_k - ln z] z^k,  h_k = 2 psi(k+1) - psi(k+s) - psi(k+1-s),
  //   dF/dt = K [1/z + sum_{k>=1} c_k z^(k-1) (1 - k (h_k - ln z))].
  const BigFloat pi = pi_at(prec);
  const BigFloat z = BigFloat::from(1, prec) - t;
  const double zu = upper_abs(z);
  const BigFloat lnz = log(z);
  const BigFloat Kc = sin(pi * s) / pi;
  BigFloat ps1 = digamma(BigFloat::from(1, prec));
  BigFloat pss = digamma(BigFloat::from(s, prec));
  BigFloat ps1s = digamma(BigFloat::from(one - s, prec));
  BigFloat c = BigFloat::from(1, prec);
  BigFloat zk = BigFloat::from(1, prec);  // z^k
  BigFloat sumF(prec), sumD(prec);
  for (long k = 0;; ++k) {
    const BigFloat hk = ps1 * Rational(2) - pss - ps1s;
    const BigFloat inner = hk - lnz;
    const BigFloat tf = c * inner * zk;
    sumF += tf;
    BigFloat td(prec);
    if (k >= 1) {
      td = c * (zk / z) * (BigFloat::from(1, prec) - inner * Rational(k));
      sumD += td;
    }
    // Term ratios of F are <= z; those of the derivative part are <= z(1+1/k).
    if (k > 2) {
      const double rho = zu * (1 + 1.0 / static_cast<double>(k));
      const double tF = upper_abs(tf) * zu / (1 - zu);
      const double tD = upper_abs(td) * rho / (1 - rho);
      if (rho < 1 && tF < eps && tD < eps) {
        add_error_d(sumF, tF);
        add_error_d(sumD, tD);
        break;
      }
    }
    const Rational kk(k), k1(k + 1);
    c *= (s + kk) * (one - s + kk) / (k1 * k1);
    zk *= z;
    ps1 += BigFloat::from(one / k1, prec);
    pss += BigFloat::from(one / (s + kk), prec);
    ps1s += BigFloat::from(one / (one - s + kk), prec);
  }
  BigFloat F = Kc * sumF;
  BigFloat dF = Kc * (BigFloat::from(1, prec) / z + sumD);
  return {F, t * dF};
}

TauRelation tau_relation_check(const Rational& s, int N, const TauPoint& tau, mpfr_prec_t prec) {
  const BigFloat y = tau.im(prec);
  const BigFloat t = t_N_at(N, y);
  const BigFloat one = BigFloat::from(1, prec);
  if (t.certain_sign() <= 0) throw Error(Errc::TooSlowAtBoundary, "t(tau) too close to 0 to test");
  const BigFloat Cs = sqrt(BigFloat::from(cs_squared(s), prec));
  auto [Ft, Gt] = F_and_G(s, t);
  auto [F1t, G1t] = F_and_G(s, one - t);
  (void)G1t;
  TauRelation out{abs(y - Cs * F1t / Ft), BigFloat(prec)};
  // q dt/dq = (dt/dy) / (-2 pi); centred difference with step h.
  const long hexp = -static_cast<long>(prec / 3);
  BigFloat h = BigFloat::from(1, prec);
  mpfr_mul_2si(h.mid_mut(), h.mid(), hexp, MPFR_RNDN);
  const BigFloat tp = t_N_at(N, y + h);
  const BigFloat tm = t_N_at(N, y - h);
  const BigFloat qdtdq = (tp - tm) / (h * Rational(2)) / (pi_at(prec) * Rational(-2));
  const BigFloat rhs = t * (one - t) * Ft * Ft;
  out.log_derivative_residual = abs((qdtdq - rhs) / rhs);
  return out;
}

}  // namespace piforge
