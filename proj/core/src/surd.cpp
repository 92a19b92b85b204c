#include "piforge/surd.hpp"

#include <cctype>
#include <ostream>
#include <set>

#include "piforge/errors.hpp"

namespace piforge {

SurdExpr::SurdExpr(const Rational& q) {
  if (!q.is_zero()) terms_.emplace(BigInt(1), q);
}

void SurdExpr::add_term(const Rational& q, const BigInt& squarefree) {
  if (q.is_zero()) return;
  auto [it, inserted] = terms_.emplace(squarefree, q);
  if (inserted) return;
  it->second += q;
  if (it->second.is_zero()) terms_.erase(it);
}

SurdExpr SurdExpr::term(const Rational& q, const BigInt& radicand) {
  if (radicand < 0) throw Error(Errc::NegativeRadicand, "radicand " + radicand.get_str());
  SurdExpr out;
  if (radicand == 0 || q.is_zero()) return out;
  SquarefreeSplit split = squarefree_split(radicand);
  out.add_term(q * Rational(split.square), split.core);
  return out;
}

SurdExpr SurdExpr::normalize(const std::vector<std::pair<Rational, BigInt>>& raw) {
  SurdExpr out;
  for (const auto& [q, d] : raw) out += term(q, d);
  return out;
}

Rational SurdExpr::rational_part() const { return coefficient(1); }

Rational SurdExpr::coefficient(const BigInt& radicand) const {
  auto it = terms_.find(radicand);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::vector<BigInt> SurdExpr::radicands() const {
  std::vector<BigInt> out;
  for (const auto& [d, q] : terms_)
    if (d != 1) out.push_back(d);
  return out;
}

std::string SurdExpr::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [d, q] : terms_) {
    std::string mag = q.abs().to_string();
    if (out.empty()) {
      if (q.sign() < 0) out += "-";
    } else {
      out += q.sign() < 0 ? "-" : "+";
    }
    if (d == 1) {
      out += mag;
    } else {
      if (mag != "1") out += mag + "*";
      out += "sqrt(" + d.get_str() + ")";
    }
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const SurdExpr& x) { return os << x.to_string(); }

BigFloat SurdExpr::to_bigfloat(mpfr_prec_t prec) const {
  BigFloat sum(prec);
  for (const auto& [d, q] : terms_) {
    if (d == 1) {
      sum += BigFloat::from(q, prec);
    } else {
      sum += sqrt(BigFloat::from(Rational(d), prec)) * q;
    }
  }
  return sum;
}

double SurdExpr::to_double() const { return to_bigfloat(80).to_double(); }

SurdExpr SurdExpr::operator-() const {
  SurdExpr out = *this;
  for (auto& [d, q] : out.terms_) q = -q;
  return out;
}

SurdExpr& SurdExpr::operator+=(const SurdExpr& o) {
  for (const auto& [d, q] : o.terms_) add_term(q, d);
  return *this;
}

SurdExpr& SurdExpr::operator-=(const SurdExpr& o) {
  for (const auto& [d, q] : o.terms_) add_term(-q, d);
  return *this;
}

SurdExpr& SurdExpr::operator*=(const SurdExpr& o) {
  SurdExpr out;
  for (const auto& [a, qa] : terms_) {
    for (const auto& [b, qb] : o.terms_) {
      // sqrt(a) sqrt(b) = g sqrt((a/g)(b/g)) for squarefree a, b with g = gcd.
      BigInt g;
      mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      BigInt core = (a / g) * (b / g);
      out.add_term(qa * qb * Rational(g), core);
    }
  }
  *this = std::move(out);
  return *this;
}

SurdExpr conjugate(const SurdExpr& x, const BigInt& p) {
  SurdExpr out;
  for (const auto& [d, q] : x.terms()) {
    out += SurdExpr::term(mpz_divisible_p(d.get_mpz_t(), p.get_mpz_t()) ? -q : q, d);
  }
  return out;
}

SurdExpr& SurdExpr::operator/=(const SurdExpr& o) {
  if (o.is_zero()) throw Error(Errc::DivisionByZero, "surd division by zero");
  std::set<BigInt> primes;
  for (const BigInt& d : o.radicands())
    for (const BigInt& p : prime_factors(d)) primes.insert(p);
  SurdExpr num = *this;
  SurdExpr den = o;
  // Each conjugation removes one prime from every denominator radicand.
  for (const BigInt& p : primes) {
    if (den.is_rational()) break;
    SurdExpr c = conjugate(den, p);
    num *= c;
    den *= c;
  }
  Rational r = den.rational_part();
  SurdExpr inv(r.inverse());
  num *= inv;
  *this = std::move(num);
  return *this;
}

Cmp compare(const SurdExpr& x, const SurdExpr& y) {
  SurdExpr d = x - y;
  if (d.is_zero()) return Cmp::EQ;
  if (d.is_rational()) return d.rational_part().sign() < 0 ? Cmp::LT : Cmp::GT;
  // d != 0 structurally, hence as a real number; refinement terminates.
  for (mpfr_prec_t prec = 64;; prec *= 2) {
    int s = d.to_bigfloat(prec).certain_sign();
    if (s != 0) return s < 0 ? Cmp::LT : Cmp::GT;
  }
}

int sign(const SurdExpr& x) {
  switch (compare(x, SurdExpr())) {
    case Cmp::LT: return -1;
    case Cmp::EQ: return 0;
    case Cmp::GT: return 1;
  }
  return 0;
}

SurdExpr abs(const SurdExpr& x) { return sign(x) < 0 ? -x : x; }

SurdExpr pow(const SurdExpr& x, unsigned n) {
  SurdExpr out(1);
  for (unsigned i = 0; i < n; ++i) out *= x;
  return out;
}

namespace {

// sqrt(n/d) = (s_n/(s_d c_d)) sqrt(c_n c_d) without factoring n*d jointly.
SurdExpr sqrt_rational(const Rational& q) {
  if (q.sign() < 0) throw Error(Errc::NegativeRadicand, "sqrt of " + q.to_string());
  if (q.is_zero()) return SurdExpr();
  SquarefreeSplit n = squarefree_split(q.numerator());
  SquarefreeSplit d = squarefree_split(q.denominator());
  Rational coeff(n.square, BigInt(d.square * d.core));
  return SurdExpr::term(coeff, BigInt(n.core * d.core));
}

}  // namespace

std::optional<SurdExpr> sqrt_denest(const SurdExpr& x) {
  int sx = sign(x);
  if (sx < 0) throw Error(Errc::NegativeRadicand, "sqrt of negative " + x.to_string());
  if (sx == 0) return SurdExpr();
  if (x.is_rational()) return sqrt_rational(x.rational_part());
  const auto& t = x.terms();
  if (t.size() != 2 || t.begin()->first != 1) return std::nullopt;
  const Rational alpha = t.begin()->second;
  const BigInt d = std::next(t.begin())->first;
  const Rational beta = std::next(t.begin())->second;
  Rational disc = alpha * alpha - beta * beta * Rational(d);
  if (!is_perfect_square(disc)) return std::nullopt;
  Rational c = exact_sqrt(disc);
  SurdExpr y = sqrt_rational((alpha + c) / Rational(2));
  SurdExpr z = sqrt_rational((alpha - c) / Rational(2));
  return beta.sign() > 0 ? y + z : y - z;
}

SurdExpr sqrt_exact(const SurdExpr& x) {
  auto r = sqrt_denest(x);
  if (!r) throw Error(Errc::NotDenestable, "sqrt(" + x.to_string() + ")");
  return *r;
}

namespace {

class SurdParser {
 public:
  explicit SurdParser(std::string_view s) : s_(s) {}

  SurdExpr parse() {
    skip_ws();
    if (pos_ == s_.size()) fail("empty expression");
    SurdExpr out = signed_term(true);
    for (;;) {
      skip_ws();
      if (pos_ == s_.size()) break;
      char c = s_[pos_];
      if (c != '+' && c != '-') fail("expected '+' or '-'");
      out += signed_term(false);
    }
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " in surd literal '" + std::string(s_) + "'", 1, pos_ + 1);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(std::string_view tok) {
    skip_ws();
    if (s_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  BigInt uint() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return BigInt(std::string(s_.substr(start, pos_ - start)));
  }

  SurdExpr sqrt_call(const Rational& coeff) {
    if (!accept("(")) fail("expected '('");
    BigInt d = uint();
    if (!accept(")")) fail("expected ')'");
    if (d == 0) return SurdExpr();
    return SurdExpr::term(coeff, d);
  }

  SurdExpr signed_term(bool first) {
    skip_ws();
    int sgn = 1;
    if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) {
      sgn = s_[pos_] == '-' ? -1 : 1;
      ++pos_;
    } else if (!first) {
      fail("expected sign");
    }
    if (accept("sqrt")) return sqrt_call(Rational(sgn));
    BigInt num = uint();
    BigInt den = 1;
    if (accept("/")) {
      std::size_t at = pos_;
      den = uint();
      if (den == 0) {
        pos_ = at;
        fail("zero denominator");
      }
    }
    Rational q(BigInt(sgn * num), den);
    if (accept("*")) {
      if (!accept("sqrt")) fail("expected 'sqrt'");
      return sqrt_call(q);
    }
    return SurdExpr(q);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

SurdExpr SurdExpr::parse(std::string_view text) { return SurdParser(text).parse(); }

}  // namespace piforge
