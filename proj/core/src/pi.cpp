#include "piforge/pi.hpp"

#include <cmath>
#include <future>
#include <map>
#include <mutex>

#include "piforge/errors.hpp"

namespace piforge {

namespace {

// Chudnovsky terms: t_k = (-1)^k (6k)! (13591409 + 545140134 k) /
// ((3k)! k!^3 640320^(3k)); ratio p_k / q_k with
// p_k = -(6k-5)(2k-1)(6k-1), q_k = k^3 640320^3 / 24.
const BigInt kC3Over24 = BigInt("10939058860032000");
constexpr unsigned long kA = 13591409;
constexpr unsigned long kB = 545140134;

struct PQT {
  BigInt P, Q, T;
};

PQT leaf(unsigned long k) {
  if (k == 0) return {1, 1, BigInt(kA)};
  PQT r;
  r.P = BigInt(6 * k - 5) * BigInt(2 * k - 1) * BigInt(6 * k - 1);
  r.P = -r.P;
  r.Q = BigInt(k) * BigInt(k) * BigInt(k) * kC3Over24;
  r.T = r.P * (BigInt(kA) + BigInt(kB) * BigInt(k));
  return r;
}

// [a, b) merged from [a, m) and [m, b); exact integers, so the tree shape
// cannot change the result.
PQT merge(const PQT& l, const PQT& r) {
  return {l.P * r.P, l.Q * r.Q, l.T * r.Q + l.P * r.T};
}

PQT split(unsigned long a, unsigned long b, std::size_t leaf_size, unsigned workers) {
  if (b - a <= leaf_size) {
    PQT acc = leaf(a);
    for (unsigned long k = a + 1; k < b; ++k) acc = merge(acc, leaf(k));
    return acc;
  }
  const unsigned long m = a + (b - a) / 2;
  if (workers > 1) {
    auto left = std::async(std::launch::async, split, a, m, leaf_size, workers / 2);
    PQT right = split(m, b, leaf_size, workers - workers / 2);
    return merge(left.get(), right);
  }
  return merge(split(a, m, leaf_size, 1), split(m, b, leaf_size, 1));
}

}  // namespace

BigFloat pi_reference(long digits, const PiOptions& opts) {
  if (digits < 1) throw Error(Errc::InvalidArgument, "digits must be >= 1");
  if (opts.leaf_size == 0) throw Error(Errc::InvalidArgument, "leaf size must be >= 1");
  // Each term contributes log10(151931373056000) ~ 14.18 digits.
  const unsigned long terms = static_cast<unsigned long>(static_cast<double>(digits) / 14.18) + 2;
  const mpfr_prec_t prec = bits_for_digits(digits, 64);
  PQT r = split(0, terms, opts.leaf_size, std::max(1U, opts.workers));

  // pi = 426880 sqrt(10005) Q / T
  BigFloat q(prec), t(prec);
  {
    mpfr_t tmp;
    mpfr_init2(tmp, prec);
    mpfr_set_z(tmp, r.Q.get_mpz_t(), MPFR_RNDN);
    mpfr_t zero;
    mpfr_init2(zero, 64);
    mpfr_set_zero(zero, 1);
    q = BigFloat::with_error(tmp, zero, prec);
    mpfr_set_z(tmp, r.T.get_mpz_t(), MPFR_RNDN);
    t = BigFloat::with_error(tmp, zero, prec);
    mpfr_clear(tmp);
    mpfr_clear(zero);
  }
  BigFloat pi = sqrt(BigFloat::from(10005, prec)) * Rational(426880) * q / t;
  // Truncation: the tail alternates with decreasing magnitude, and the first
  // omitted term is below 40 terms 10^(-14.18 terms) relative to the sum.
  const long tail_bits = static_cast<long>(std::floor(static_cast<double>(terms) * 14.18 * 3.3219280948873623));
  const long slack = static_cast<long>(std::ceil(std::log2(64.0 * static_cast<double>(terms)))) + 6;
  pi.add_error_pow2(-tail_bits + slack);
  return pi;
}

BigFloat pi_at(mpfr_prec_t prec) {
  static std::mutex mutex;
  static std::map<mpfr_prec_t, BigFloat> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(prec);
  if (it != cache.end()) return it->second;
  const long digits = static_cast<long>(static_cast<double>(prec) / 3.3219280948873623) + 4;
  BigFloat full = pi_reference(digits);
  // Round to the requested precision; the rounding goes into the radius.
  BigFloat out = BigFloat::with_error(full.mid(), full.err(), prec);
  cache.emplace(prec, out);
  return out;
}

std::string pi_digits(long digits, const PiOptions& opts) {
  for (long guard = 16;; guard *= 2) {
    BigFloat pi = pi_reference(digits + guard, opts);
    BigFloat lo = pi, hi = pi;
    // Both interval ends must truncate to the same string.
    mpfr_sub(lo.mid_mut(), pi.mid(), pi.err(), MPFR_RNDD);
    mpfr_add(hi.mid_mut(), pi.mid(), pi.err(), MPFR_RNDU);
    std::string a = lo.to_fixed(digits), b = hi.to_fixed(digits);
    if (a == b) return a;
  }
}

}  // namespace piforge
