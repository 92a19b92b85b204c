#include "piforge/rational.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <ostream>

#include "piforge/errors.hpp"

namespace piforge {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::NegativeRadicand: return "NegativeRadicand";
    case Errc::NotDenestable: return "NotDenestable";
    case Errc::NonUnitDivisor: return "NonUnitDivisor";
    case Errc::NonzeroConstantInner: return "NonzeroConstantInner";
    case Errc::NonUnitBase: return "NonUnitBase";
    case Errc::MalformedOde: return "MalformedOde";
    case Errc::PoleAtArgument: return "PoleAtArgument";
    case Errc::MissingTau: return "MissingTau";
    case Errc::DivergentCompanion: return "DivergentCompanion";
    case Errc::DivergentFormula: return "DivergentFormula";
    case Errc::PrecisionExhausted: return "PrecisionExhausted";
    case Errc::TermCapReached: return "TermCapReached";
    case Errc::OutOfDisk: return "OutOfDisk";
    case Errc::OutsideDomain: return "OutsideDomain";
    case Errc::TooSlowAtBoundary: return "TooSlowAtBoundary";
    case Errc::NotOddPrime: return "NotOddPrime";
    case Errc::PrimeDividesBase: return "PrimeDividesBase";
    case Errc::ParseError: return "ParseError";
    case Errc::DuplicateId: return "DuplicateId";
    case Errc::UnknownId: return "UnknownId";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw Error(Errc::DivisionByZero, "rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational::Rational(long num, long den) : Rational(BigInt(num), BigInt(den)) {}

Rational Rational::inverse() const {
  if (is_zero()) throw Error(Errc::DivisionByZero, "inverse of zero");
  return Rational(mpq_class(1 / q_));
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error(Errc::DivisionByZero, "rational division by zero");
  q_ /= o.q_;
  return *this;
}

Rational Rational::parse(std::string_view text) {
  auto digits = [](std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  };
  std::string_view num = text, den;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    num = text.substr(0, slash);
    den = text.substr(slash + 1);
    if (!digits(den)) throw ParseError("bad denominator in '" + std::string(text) + "'", 1, slash + 2);
  }
  std::string_view mag = num;
  if (!mag.empty() && (mag.front() == '-' || mag.front() == '+')) mag.remove_prefix(1);
  if (!digits(mag)) throw ParseError("bad integer in '" + std::string(text) + "'", 1, 1);
  BigInt n(std::string(num.front() == '+' ? num.substr(1) : num));
  BigInt d = den.empty() ? BigInt(1) : BigInt(std::string(den));
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'", 1, num.size() + 2);
  return Rational(n, d);
}

std::string Rational::to_string() const {
  if (q_.get_den() == 1) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

Rational pow(const Rational& base, long exponent) {
  if (exponent < 0) return pow(base.inverse(), -exponent);
  BigInt num, den;
  mpz_pow_ui(num.get_mpz_t(), base.numerator().get_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(den.get_mpz_t(), base.denominator().get_mpz_t(), static_cast<unsigned long>(exponent));
  return Rational(num, den);
}

namespace {

constexpr unsigned long kTrialLimit = 20000;

// Pollard-Brent; n is odd, composite and not a perfect power of a small prime.
BigInt pollard_brent(const BigInt& n) {
  for (unsigned long c = 1;; ++c) {
    BigInt y = 2, x, g = 1, q = 1, ys;
    unsigned long r = 1;
    const unsigned long m = 128;
    auto f = [&](const BigInt& v) {
      BigInt out = v * v + c;
      mpz_mod(out.get_mpz_t(), out.get_mpz_t(), n.get_mpz_t());
      return out;
    };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          BigInt diff = abs(x - y);
          q = q * diff;
          mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        BigInt diff = abs(x - ys);
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(const BigInt& n, std::map<BigInt, unsigned>& out) {
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30) > 0) {
    ++out[n];
    return;
  }
  if (mpz_perfect_square_p(n.get_mpz_t())) {
    BigInt r = sqrt(n);
    factor_into(r, out);
    factor_into(r, out);
    return;
  }
  BigInt d = pollard_brent(n);
  factor_into(d, out);
  factor_into(BigInt(n / d), out);
}

std::map<BigInt, unsigned> factorize(BigInt n) {
  std::map<BigInt, unsigned> out;
  if (n < 0) n = -n;
  if (n == 0) return out;
  for (unsigned long p = 2; p <= kTrialLimit; p += (p == 2 ? 1 : 2)) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      unsigned e = 0;
      while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
        mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
        ++e;
      }
      out[BigInt(p)] += e;
    }
    if (BigInt(p) * p > n) break;
  }
  if (n > 1) factor_into(n, out);
  return out;
}

}  // namespace

SquarefreeSplit squarefree_split(const BigInt& n) {
  SquarefreeSplit s{1, 1};
  for (const auto& [p, e] : factorize(n)) {
    BigInt pe;
    mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e / 2);
    s.square *= pe;
    if (e % 2) s.core *= p;
  }
  return s;
}

std::vector<BigInt> prime_factors(const BigInt& n) {
  std::vector<BigInt> out;
  for (const auto& [p, e] : factorize(n)) out.push_back(p);
  return out;
}

bool is_perfect_square(const Rational& r) {
  if (r.sign() < 0) return false;
  return mpz_perfect_square_p(r.numerator().get_mpz_t()) &&
         mpz_perfect_square_p(r.denominator().get_mpz_t());
}

Rational exact_sqrt(const Rational& r) {
  return Rational(BigInt(sqrt(r.numerator())), BigInt(sqrt(r.denominator())));
}

}  // namespace piforge
