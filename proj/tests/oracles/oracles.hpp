#pragma once

// Independent reference computations for the tests. These use closed
// binomial forms and plain GMP/MPFR, never the library's own recurrences.

#include <gmpxx.h>
#include <mpfr.h>

#include <string>
#include <utility>
#include <vector>

namespace oracle {

inline mpz_class binom(unsigned long n, unsigned long k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

/// a(a-1)...(a-k+1)/k!
inline mpq_class falling_binom(const mpq_class& a, unsigned long k) {
  mpq_class r = 1;
  for (unsigned long i = 0; i < k; ++i) {
    r *= (a - static_cast<long>(i));
    r /= static_cast<long>(i + 1);
  }
  r.canonicalize();
  return r;
}

/// s encoded by its denominator: 2, 3, 4, 6.
inline mpz_class hyp_integer(int sden, unsigned long n) {
  switch (sden) {
    case 2: return binom(2 * n, n) * binom(2 * n, n) * binom(2 * n, n);
    case 3: return binom(2 * n, n) * binom(2 * n, n) * binom(3 * n, n);
    case 4: return binom(2 * n, n) * binom(2 * n, n) * binom(4 * n, 2 * n);
    default: return binom(2 * n, n) * binom(3 * n, n) * binom(6 * n, 3 * n);
  }
}

/// (s)_k (1-s)_k / k!^2 as binomial products.
inline mpq_class gauss_coeff(int sden, unsigned long k) {
  mpz_class num;
  mpz_class den;
  switch (sden) {
    case 2: num = binom(2 * k, k) * binom(2 * k, k); den = 16; break;
    case 3: num = binom(2 * k, k) * binom(3 * k, k); den = 27; break;
    case 4: num = binom(2 * k, k) * binom(4 * k, 2 * k); den = 64; break;
    default: num = binom(3 * k, k) * binom(6 * k, 3 * k); den = 432; break;
  }
  mpz_class d;
  mpz_pow_ui(d.get_mpz_t(), den.get_mpz_t(), k);
  mpq_class r(num, d);
  r.canonicalize();
  return r;
}

inline mpq_class s_of(int sden) { return mpq_class(1, sden); }

inline mpq_class prop7(int sden, unsigned long n) {
  mpq_class sum = 0;
  for (unsigned long k = 0; k <= n; ++k) sum += gauss_coeff(sden, k) * gauss_coeff(sden, n - k);
  return sum;
}

inline mpq_class prop5(int sden, unsigned long n) {
  const mpq_class s = s_of(sden);
  mpq_class sum = 0;
  for (unsigned long k = 0; k <= n; ++k) {
    const mpq_class l = falling_binom(-s, k), r = falling_binom(s - 1, n - k);
    sum += l * l * r * r;
  }
  return sum;
}

inline mpq_class prop3(int sden, unsigned long n) {
  const mpq_class s = s_of(sden);
  mpq_class sum = 0;
  for (unsigned long k = 0; k <= n; ++k)
    sum += mpq_class(binom(2 * k, k) * binom(2 * (n - k), n - k)) * falling_binom(-s, k) *
           falling_binom(s - 1, n - k);
  return sum;
}

/// M^n sum binom(-p1,k) binom(-p2,k) binom(-p3,n-k) binom(-p4,n-k).
inline mpq_class prop1(int sden, unsigned long n) {
  mpq_class p[4];
  long M = 0;
  switch (sden) {
    case 2: p[0] = mpq_class(1, 4); p[1] = mpq_class(3, 4); p[2] = mpq_class(1, 4); p[3] = mpq_class(3, 4); M = 64; break;
    case 3: p[0] = mpq_class(2, 3); p[1] = mpq_class(1, 6); p[2] = mpq_class(1, 3); p[3] = mpq_class(5, 6); M = 108; break;
    case 4: p[0] = mpq_class(1, 8); p[1] = mpq_class(5, 8); p[2] = mpq_class(3, 8); p[3] = mpq_class(7, 8); M = 256; break;
    default: p[0] = mpq_class(1, 12); p[1] = mpq_class(7, 12); p[2] = mpq_class(5, 12); p[3] = mpq_class(11, 12); M = 1728; break;
  }
  for (auto& v : p) v.canonicalize();
  mpq_class sum = 0;
  for (unsigned long k = 0; k <= n; ++k)
    sum += falling_binom(-p[0], k) * falling_binom(-p[1], k) * falling_binom(-p[2], n - k) *
           falling_binom(-p[3], n - k);
  mpz_class Mn;
  mpz_ui_pow_ui(Mn.get_mpz_t(), static_cast<unsigned long>(M), n);
  return sum * mpq_class(Mn);
}

/// sum_{n<p} a_n (lin0 + lin1 n) / base^n reduced mod p^3, exactly.
inline mpz_class congruence_sum(int sden, long lin0, long lin1, long base, unsigned long p) {
  mpq_class sum = 0;
  mpq_class inv = 1;
  for (unsigned long n = 0; n < p; ++n) {
    sum += mpq_class(hyp_integer(sden, n) * (lin0 + lin1 * static_cast<long>(n))) * inv;
    inv /= base;
  }
  sum.canonicalize();
  const mpz_class m = mpz_class(p) * p * p;
  mpz_class den_inv;
  mpz_invert(den_inv.get_mpz_t(), sum.get_den().get_mpz_t(), m.get_mpz_t());
  mpz_class r = (sum.get_num() * den_inv) % m;
  if (r < 0) r += m;
  return r;
}

/// Value of sum q_i sqrt(d_i) at `bits` precision, rounded to nearest.
inline double surd_value(const std::vector<std::pair<mpq_class, unsigned long>>& terms, long bits) {
  mpfr_t acc, t;
  mpfr_inits2(bits, acc, t, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_ui(acc, 0, MPFR_RNDN);
  for (const auto& [q, d] : terms) {
    mpfr_sqrt_ui(t, d, MPFR_RNDN);
    mpfr_mul_q(t, t, q.get_mpq_t(), MPFR_RNDN);
    mpfr_add(acc, acc, t, MPFR_RNDN);
  }
  const double v = mpfr_get_d(acc, MPFR_RNDN);
  mpfr_clears(acc, t, static_cast<mpfr_ptr>(nullptr));
  return v;
}

/// eta(i) = Gamma(1/4) / (2 pi^(3/4)) as a decimal string with `digits` digits.
inline std::string eta_i(long digits) {
  const long bits = static_cast<long>(digits * 3.33) + 64;
  mpfr_t g, pi, r;
  mpfr_inits2(bits, g, pi, r, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_ui(g, 1, MPFR_RNDN);
  mpfr_div_ui(g, g, 4, MPFR_RNDN);
  mpfr_gamma(g, g, MPFR_RNDN);
  mpfr_const_pi(pi, MPFR_RNDN);
  mpfr_set_d(r, 0.75, MPFR_RNDN);
  mpfr_pow(pi, pi, r, MPFR_RNDN);
  mpfr_mul_ui(pi, pi, 2, MPFR_RNDN);
  mpfr_div(r, g, pi, MPFR_RNDN);
  mpfr_exp_t e;
  char* s = mpfr_get_str(nullptr, &e, 10, static_cast<size_t>(digits), r, MPFR_RNDZ);
  std::string out = std::string("0.") + s;
  mpfr_free_str(s);
  mpfr_clears(g, pi, r, static_cast<mpfr_ptr>(nullptr));
  return out;
}

}  // namespace oracle
