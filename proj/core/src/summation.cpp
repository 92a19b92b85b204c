#include "piforge/numeric.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <thread>

#include "piforge/errors.hpp"
#include "piforge/pi.hpp"

namespace piforge {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double upper_abs(const BigFloat& x) {
  mpfr_t a;
  mpfr_init2(a, 64);
  mpfr_abs(a, x.mid(), MPFR_RNDU);
  mpfr_add(a, a, x.err(), MPFR_RNDU);
  double d = mpfr_get_d(a, MPFR_RNDU);
  mpfr_clear(a);
  return d;
}

// log10 of (a + b n)(n+1) r^n / (1 - r (1+1/n)^2); +inf when not contracting.
double log10_tail(double a, double b, double log10_r, double r, std::size_t n) {
  const double nn = static_cast<double>(n);
  const double rho = r * (1 + 1 / nn) * (1 + 1 / nn);
  if (rho >= 1) return INFINITY;
  return std::log10(a + b * nn + 1e-300) + std::log10(nn + 1) + nn * log10_r - std::log10(1 - rho);
}

void add_tail_error(BigFloat& sum, double a, double b, double r, std::size_t n) {
  // Same bound as log10_tail, evaluated with upward rounding.
  mpfr_t t, rho, one;
  mpfr_inits2(64, t, rho, one, static_cast<mpfr_ptr>(nullptr));
  const double nn = static_cast<double>(n);
  mpfr_set_d(t, b, MPFR_RNDU);
  mpfr_mul_d(t, t, nn, MPFR_RNDU);
  mpfr_add_d(t, t, a, MPFR_RNDU);
  mpfr_mul_d(t, t, nn + 1, MPFR_RNDU);
  mpfr_set_d(rho, r, MPFR_RNDU);
  mpfr_pow_ui(rho, rho, n, MPFR_RNDU);
  mpfr_mul(t, t, rho, MPFR_RNDU);
  mpfr_set_ui(one, 1, MPFR_RNDN);
  mpfr_div_d(rho, one, nn, MPFR_RNDU);
  mpfr_add_ui(rho, rho, 1, MPFR_RNDU);
  mpfr_sqr(rho, rho, MPFR_RNDU);
  mpfr_mul_d(rho, rho, r, MPFR_RNDU);
  mpfr_ui_sub(rho, 1, rho, MPFR_RNDD);
  mpfr_div(t, t, rho, MPFR_RNDU);
  sum.add_error(t);
  mpfr_clears(t, rho, one, static_cast<mpfr_ptr>(nullptr));
}

BigFloat to_bf(const SurdExpr& x, mpfr_prec_t prec) { return x.to_bigfloat(prec); }

// u_k z^k for k < n via the Gauss term ratio.
std::vector<BigFloat> gauss_stream(const Rational& a, const Rational& b, const BigFloat& z, std::size_t n) {
  std::vector<BigFloat> out;
  out.reserve(n);
  BigFloat t = BigFloat::from(1, z.precision());
  for (std::size_t k = 0; k < n; ++k) {
    out.push_back(t);
    const Rational kk(static_cast<long>(k));
    const Rational k1 = kk + Rational(1);
    t *= (a + kk) * (b + kk) / (k1 * k1);
    t *= z;
  }
  return out;
}

}  // namespace

std::string VerificationReport::line() const {
  char buf[64];
  std::ostringstream os;
  std::snprintf(buf, sizeof buf, "%.1f", digits_achieved);
  os << id << '\t' << (pass ? "pass" : "fail") << '\t' << buf << '\t' << terms << '\t';
  std::snprintf(buf, sizeof buf, "%.3f", seconds);
  os << buf;
  return os.str();
}

std::size_t terms_for_tail(double a, double b, const BigFloat& r_bf, long digits) {
  const double r = upper_abs(r_bf);
  if (r >= 1) return 0;
  if (r == 0) return 1;
  const double lr = std::log10(r);
  const double target = -static_cast<double>(digits);
  std::size_t hi = 1;
  while (log10_tail(a, b, lr, r, hi) >= target) {
    hi *= 2;
    if (hi > (std::size_t{1} << 40)) return 0;
  }
  std::size_t lo = hi / 2;
  // The bound is decreasing once the contraction holds; bisect for the first N.
  while (lo + 1 < hi) {
    std::size_t mid = lo + (hi - lo) / 2;
    if (log10_tail(a, b, lr, r, mid) < target) hi = mid; else lo = mid;
  }
  return hi;
}

SeriesSum direct_sum(const FamilySpec& family, const SurdExpr& lin0, const SurdExpr& lin1, const SurdExpr& arg,
                     long digits, const SumOptions& opts) {
  const BigFloat x64 = arg.to_bigfloat(128);
  const double a = std::abs(lin0.to_double()) * (1 + 1e-12);
  const double b = std::abs(lin1.to_double()) * (1 + 1e-12);
  BigFloat r = abs(x64) * growth(family);
  const std::size_t N = terms_for_tail(a, b, r, digits + 3);
  if (N == 0) throw Error(Errc::DivergentFormula, "series does not converge at this argument");
  // Largest term bound sets the bits lost to cancellation.
  const double rr = upper_abs(r);
  double max_log2 = 0;
  for (std::size_t n = 0; n < N; n += std::max<std::size_t>(1, N / 64))
    max_log2 = std::max(max_log2, std::log2((a + b * n + 1) * (n + 1)) + n * std::log2(std::max(rr, 1e-300)));
  const mpfr_prec_t prec = bits_for_digits(digits + 4, 32) + static_cast<mpfr_prec_t>(std::log2(N + 1.0)) +
                           static_cast<mpfr_prec_t>(std::max(0.0, max_log2)) + opts.extra_bits;
  const BigFloat x = arg.to_bigfloat(prec);
  const BigFloat L0 = to_bf(lin0, prec), L1 = to_bf(lin1, prec);

  SeriesSum out{BigFloat(prec), N};
  if (family.kind == Family::HYP) {
    const Rational M(family.M), half(1, 2), one(1);
    BigFloat t = BigFloat::from(1, prec);
    for (std::size_t n = 0; n < N; ++n) {
      out.value += t * (L0 + L1 * Rational(static_cast<long>(n)));
      const Rational k(static_cast<long>(n));
      const Rational k1 = k + one;
      t *= M * (half + k) * (family.s + k) * (one - family.s + k) / (k1 * k1 * k1);
      t *= x;
    }
    add_tail_error(out.value, a, b, rr, N);
    return out;
  }

  const Factorization f = factorization(family);
  const BigFloat z = x * f.scale;
  const bool symmetric = family.kind == Family::PROP7;
  const std::vector<BigFloat> u = gauss_stream(f.ua, f.ub, z, N);
  const std::vector<BigFloat> v = symmetric ? std::vector<BigFloat>() : gauss_stream(f.va, f.vb, z, N);
  const std::vector<BigFloat>& vv = symmetric ? u : v;

  const std::size_t block = std::max<std::size_t>(1, opts.block);
  const std::size_t nblocks = (N + block - 1) / block;
  std::vector<BigFloat> partial(nblocks, BigFloat(prec));
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t bi = next++; bi < nblocks; bi = next++) {
      BigFloat acc(prec);
      for (std::size_t n = bi * block; n < std::min(N, (bi + 1) * block); ++n) {
        BigFloat conv(prec);
        if (symmetric) {
          for (std::size_t k = 0; 2 * k < n; ++k) conv += u[k] * u[n - k];
          conv *= Rational(2);
          if (n % 2 == 0) conv += u[n / 2] * u[n / 2];
        } else {
          for (std::size_t k = 0; k <= n; ++k) conv += u[k] * vv[n - k];
        }
        acc += conv * (L0 + L1 * Rational(static_cast<long>(n)));
      }
      partial[bi] = std::move(acc);
    }
  };
  const unsigned workers = std::max(1U, std::min<unsigned>(opts.workers, static_cast<unsigned>(nblocks)));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < workers; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (const BigFloat& p : partial) out.value += p;
  add_tail_error(out.value, a, b, rr, N);
  return out;
}

namespace {

VerificationReport compare_to_rhs(const Formula& f, long digits, const BigFloat& value, std::size_t terms) {
  VerificationReport rep;
  rep.id = f.id;
  rep.digits_requested = digits;
  rep.terms = terms;
  const mpfr_prec_t prec = value.precision();
  BigFloat residual = value - f.rhs.to_bigfloat(prec) / pi_at(prec);
  const double l = residual.log10_upper_abs();
  rep.digits_achieved = std::isinf(l) ? static_cast<double>(prec) / 3.32 : -l;
  rep.pass = l < -static_cast<double>(digits);
  return rep;
}

}  // namespace

VerificationReport sum_formula(const Formula& f, long digits, const SumOptions& opts) {
  if (!f.convergent) throw Error(Errc::DivergentFormula, f.id + " is not convergent");
  const auto t0 = Clock::now();
  SumOptions o = opts;
  for (int attempt = 0; attempt < 2; ++attempt) {
    SeriesSum s = direct_sum(f.family, f.lin0, f.lin1, f.arg, digits, o);
    if (s.value.correct_digits() > static_cast<double>(digits) + 1) {
      VerificationReport rep = compare_to_rhs(f, digits, s.value, s.terms);
      rep.seconds = seconds_since(t0);
      return rep;
    }
    o.extra_bits += s.value.precision();  // precision doubled once
  }
  VerificationReport rep;
  rep.id = f.id;
  rep.digits_requested = digits;
  rep.note = "PrecisionExhausted";
  rep.seconds = seconds_since(t0);
  return rep;
}

VerificationReport slow_series_sum(const Formula& f, long digits, std::size_t max_terms) {
  if (!f.convergent) throw Error(Errc::DivergentFormula, f.id + " is not convergent");
  const auto t0 = Clock::now();
  if (f.arg.is_zero()) {
    BigFloat v = f.lin0.to_bigfloat(bits_for_digits(digits + 8));
    VerificationReport rep = compare_to_rhs(f, digits, v, 1);
    rep.seconds = seconds_since(t0);
    return rep;
  }
  if (f.family.kind == Family::HYP) {
    VerificationReport rep = sum_formula(f, digits);
    rep.seconds = seconds_since(t0);
    return rep;
  }
  const Factorization fac = factorization(f.family);
  const double zabs = std::abs(f.arg.to_double() * fac.scale.to_double());
  if (zabs >= 1) throw Error(Errc::DivergentFormula, f.id + ": factor argument outside the disk");
  const mpfr_prec_t prec = bits_for_digits(digits + 6, 48) + static_cast<mpfr_prec_t>(std::log2(max_terms + 2.0)) +
                           static_cast<mpfr_prec_t>(std::log2(1 / (1 - zabs)));
  const BigFloat z = f.arg.to_bigfloat(prec) * fac.scale;
  const double zu = upper_abs(z);
  const bool symmetric = f.family.kind == Family::PROP7;
  const BigFloat A = f.lin0.to_bigfloat(prec), B = f.lin1.to_bigfloat(prec);
  const double aA = upper_abs(A), aB = upper_abs(B);
  const double eps = std::pow(10.0, -static_cast<double>(digits) - 2);

  struct Factor {
    Rational a, b;
    BigFloat t, s0, s1;
    double tail0 = 0, tail1 = 0;
  };
  auto make = [&](const Rational& a, const Rational& b) {
    return Factor{a, b, BigFloat::from(1, prec), BigFloat(prec), BigFloat(prec)};
  };
  Factor U = make(fac.ua, fac.ub);
  Factor V = make(fac.va, fac.vb);
  auto step = [&](Factor& F, std::size_t k) {
    F.s0 += F.t;
    F.s1 += F.t * Rational(static_cast<long>(k));
    const Rational kk(static_cast<long>(k));
    const Rational k1 = kk + Rational(1);
    F.t *= (F.a + kk) * (F.b + kk) / (k1 * k1);
    F.t *= z;
  };
  // After summing k < K the next term is t = u_K z^K; |u| ratios are <= 1.
  auto tails = [&](Factor& F, std::size_t K) {
    const double t = upper_abs(F.t);
    const double rho = zu * (1 + 1.0 / static_cast<double>(K));
    F.tail0 = t / (1 - zu);
    F.tail1 = rho < 1 ? static_cast<double>(K) * t / (1 - rho) : INFINITY;
  };
  std::size_t K = 0;
  bool capped = false;
  for (;;) {
    step(U, K);
    if (!symmetric) step(V, K);
    ++K;
    if (K % 256 == 0 || K == max_terms) {
      tails(U, K);
      if (!symmetric) tails(V, K); else V = U;
      const double u0 = upper_abs(U.s0) + U.tail0, u1 = upper_abs(U.s1) + U.tail1;
      const double v0 = upper_abs(V.s0) + V.tail0, v1 = upper_abs(V.s1) + V.tail1;
      const double err = aA * (U.tail0 * v0 + V.tail0 * u0) +
                         aB * (U.tail1 * v0 + V.tail0 * u1 + U.tail0 * v1 + V.tail1 * u0);
      if (err < eps) break;
      if (K >= max_terms) {
        capped = true;
        break;
      }
    }
  }
  auto finish = [&](Factor& F) {
    mpfr_t e;
    mpfr_init2(e, 64);
    mpfr_set_d(e, F.tail0 * (1 + 1e-12), MPFR_RNDU);
    F.s0.add_error(e);
    mpfr_set_d(e, F.tail1 * (1 + 1e-12), MPFR_RNDU);
    F.s1.add_error(e);
    mpfr_clear(e);
  };
  if (std::isinf(U.tail1) || std::isinf(V.tail1)) {
    VerificationReport rep;
    rep.id = f.id;
    rep.digits_requested = digits;
    rep.terms = K;
    rep.note = "TermCapReached";
    rep.seconds = seconds_since(t0);
    return rep;
  }
  finish(U);
  if (symmetric) V = U; else finish(V);
  BigFloat value = A * U.s0 * V.s0 + B * (U.s1 * V.s0 + U.s0 * V.s1);
  VerificationReport rep = compare_to_rhs(f, digits, value, K);
  if (capped) rep.note = "TermCapReached";
  rep.seconds = seconds_since(t0);
  return rep;
}

}  // namespace piforge
