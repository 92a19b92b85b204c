#include "piforge/congruence.hpp"

#include <atomic>
#include <thread>

#include "piforge/errors.hpp"

namespace piforge {

namespace {

BigInt mod(const BigInt& a, const BigInt& m) {
  BigInt r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

void check_prime(const CongruenceClaim& c, unsigned long p) {
  if (p < 3 || !is_prime(p)) throw Error(Errc::NotOddPrime, std::to_string(p) + " is not an odd prime");
  if (mpz_divisible_ui_p(c.base.get_mpz_t(), p))
    throw Error(Errc::PrimeDividesBase, std::to_string(p) + " divides " + c.base.get_str());
}

}  // namespace

bool is_prime(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

int legendre(const BigInt& a, unsigned long p) {
  if (p < 3 || !is_prime(p)) throw Error(Errc::NotOddPrime, std::to_string(p) + " is not an odd prime");
  const BigInt P(p);
  BigInt r;
  const BigInt e((p - 1) / 2);
  BigInt base = mod(a, P);
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), P.get_mpz_t());
  if (r == 0) return 0;
  return r == 1 ? 1 : -1;
}

std::pair<BigInt, BigInt> claim_residues(const CongruenceClaim& c, unsigned long p) {
  check_prime(c, p);
  const BigInt m = BigInt(p) * p * p;
  BigInt inv;
  const BigInt b = mod(c.base, m);
  mpz_invert(inv.get_mpz_t(), b.get_mpz_t(), m.get_mpz_t());
  BigInt sum = 0, pw = 1;
  for (unsigned long n = 0; n < p; ++n) {
    // n < p keeps the binomial product free of factorials of multiples of p.
    const BigInt an = mod(hyp_binomial_form(c.family.s, n), m);
    sum = mod(sum + an * mod(c.lin0 + c.lin1 * n, m) * pw, m);
    pw = mod(pw * inv, m);
  }
  const BigInt rhs = mod(c.rhs_mult * BigInt(p) * legendre(c.character_disc, p), m);
  return {sum, rhs};
}

bool check_claim(const CongruenceClaim& c, unsigned long p) {
  auto [lhs, rhs] = claim_residues(c, p);
  return lhs == rhs;
}

BigInt exact_residue(const CongruenceClaim& c, unsigned long p) {
  check_prime(c, p);
  const FamilySpec spec = make_spec(Family::HYP, c.family.s, standard_M(c.family.s));
  Rational sum(0);
  for (unsigned long n = 0; n < p; ++n)
    sum += a_n(spec, n) * Rational(BigInt(c.lin0 + c.lin1 * n)) / pow(Rational(c.base), static_cast<long>(n));
  const BigInt m = BigInt(p) * p * p;
  BigInt inv;
  const BigInt den = mod(sum.denominator(), m);
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t());
  return mod(sum.numerator() * inv, m);
}

std::vector<std::pair<unsigned long, bool>> sweep(const CongruenceClaim& c, unsigned long pmax, unsigned workers) {
  std::vector<unsigned long> primes;
  for (unsigned long p = 5; p <= pmax; ++p)
    if (is_prime(p) && !mpz_divisible_ui_p(c.base.get_mpz_t(), p)) primes.push_back(p);
  std::vector<std::pair<unsigned long, bool>> out(primes.size());
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (std::size_t i = next++; i < primes.size(); i = next++) out[i] = {primes[i], check_claim(c, primes[i])};
  };
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < std::max(1U, workers); ++i) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return out;
}

}  // namespace piforge
