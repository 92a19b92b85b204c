#include "piforge/families.hpp"

#include <map>
#include <mutex>
#include <tuple>

#include "piforge/errors.hpp"

namespace piforge {

std::string family_name(Family f) {
  switch (f) {
    case Family::HYP: return "HYP";
    case Family::PROP1: return "PROP1";
    case Family::PROP3: return "PROP3";
    case Family::PROP5: return "PROP5";
    case Family::PROP7: return "PROP7";
  }
  return "?";
}

Family family_from_name(const std::string& name) {
  for (Family f : {Family::HYP, Family::PROP1, Family::PROP3, Family::PROP5, Family::PROP7})
    if (family_name(f) == name) return f;
  throw Error(Errc::InvalidArgument, "unknown family '" + name + "'");
}

bool supported_s(const Rational& s) {
  return s == Rational(1, 2) || s == Rational(1, 3) || s == Rational(1, 4) || s == Rational(1, 6);
}

BigInt standard_M(const Rational& s) {
  if (s == Rational(1, 2)) return 64;
  if (s == Rational(1, 3)) return 108;
  if (s == Rational(1, 4)) return 256;
  if (s == Rational(1, 6)) return 1728;
  throw Error(Errc::InvalidArgument, "s must be one of 1/2, 1/3, 1/4, 1/6, got " + s.to_string());
}

FamilySpec make_spec(Family kind, const Rational& s, const BigInt& M) {
  BigInt standard = standard_M(s);
  FamilySpec spec{kind, s, 1};
  if (kind == Family::PROP1) {
    spec.M = standard;
  } else if (kind == Family::HYP) {
    if (M != 1 && M != standard)
      throw Error(Errc::InvalidArgument, "HYP M must be 1 or " + standard.get_str());
    spec.M = M;
  }
  return spec;
}

Rational pochhammer(const Rational& a, unsigned long k) {
  Rational out(1);
  for (unsigned long i = 0; i < k; ++i) out *= a + Rational(static_cast<long>(i));
  return out;
}

Rational frac_binomial(const Rational& a, unsigned long k) {
  Rational out(1);
  for (unsigned long i = 0; i < k; ++i)
    out *= (a - Rational(static_cast<long>(i))) / Rational(static_cast<long>(i + 1));
  return out;
}

BigInt binomial(unsigned long n, unsigned long k) {
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

Factorization factorization(const FamilySpec& spec) {
  const Rational& s = spec.s;
  const Rational one(1), half(1, 2);
  switch (spec.kind) {
    case Family::PROP1:
      return {Rational(spec.M), s / Rational(2), (one + s) / Rational(2), (one - s) / Rational(2),
              one - s / Rational(2)};
    case Family::PROP3:
      return {Rational(-4), half, s, half, one - s};
    case Family::PROP5:
      return {one, s, s, one - s, one - s};
    case Family::PROP7:
      return {one, s, one - s, s, one - s};
    case Family::HYP:
      break;
  }
  throw Error(Errc::InvalidArgument, "HYP has no convolution factorization");
}

Rational growth(const FamilySpec& spec) {
  switch (spec.kind) {
    case Family::HYP: return Rational(spec.M);
    case Family::PROP1: return Rational(spec.M);
    case Family::PROP3: return Rational(4);
    case Family::PROP5:
    case Family::PROP7: return Rational(1);
  }
  return Rational(1);
}

namespace {

using Key = std::tuple<int, mpq_class, mpz_class>;

struct Stream {
  std::vector<Rational> u, v, A;
};

// Append-only cache; the mutex makes concurrent callers safe.
std::mutex g_mutex;
std::map<Key, Stream>& cache() {
  static std::map<Key, Stream> c;
  return c;
}

Key key_of(const FamilySpec& spec) { return {static_cast<int>(spec.kind), spec.s.raw(), spec.M}; }

void extend_gauss(std::vector<Rational>& t, const Rational& a, const Rational& b, std::size_t upto) {
  if (t.empty()) t.push_back(Rational(1));
  while (t.size() <= upto) {
    const Rational k(static_cast<long>(t.size() - 1));
    const Rational k1 = k + Rational(1);
    t.push_back(t.back() * (a + k) * (b + k) / (k1 * k1));
  }
}

void extend(const FamilySpec& spec, Stream& st, std::size_t upto) {
  if (st.A.size() > upto) return;
  if (spec.kind == Family::HYP) {
    if (st.A.empty()) st.A.push_back(Rational(1));
    const Rational M(spec.M), half(1, 2), one(1);
    while (st.A.size() <= upto) {
      const Rational k(static_cast<long>(st.A.size() - 1));
      const Rational k1 = k + one;
      st.A.push_back(st.A.back() * M * (half + k) * (spec.s + k) * (one - spec.s + k) / (k1 * k1 * k1));
    }
    return;
  }
  Factorization f = factorization(spec);
  extend_gauss(st.u, f.ua, f.ub, upto);
  extend_gauss(st.v, f.va, f.vb, upto);
  const bool symmetric = spec.kind == Family::PROP7;
  while (st.A.size() <= upto) {
    const std::size_t n = st.A.size();
    Rational sum(0);
    if (symmetric) {
      for (std::size_t k = 0; 2 * k < n; ++k) sum += st.u[k] * st.u[n - k];
      sum *= Rational(2);
      if (n % 2 == 0) sum += st.u[n / 2] * st.u[n / 2];
    } else {
      for (std::size_t k = 0; k <= n; ++k) sum += st.u[k] * st.v[n - k];
    }
    st.A.push_back(sum * pow(f.scale, static_cast<long>(n)));
  }
}

}  // namespace

Rational a_n(const FamilySpec& spec, std::size_t n) {
  if (spec.kind != Family::HYP) throw Error(Errc::InvalidArgument, "a_n needs a HYP spec");
  return A_n(spec, n);
}

Rational A_n(const FamilySpec& spec, std::size_t n) {
  std::lock_guard<std::mutex> lock(g_mutex);
  Stream& st = cache()[key_of(spec)];
  extend(spec, st, n);
  return st.A[n];
}

std::vector<Rational> coefficients(const FamilySpec& spec, std::size_t count) {
  if (count == 0) return {};
  std::lock_guard<std::mutex> lock(g_mutex);
  Stream& st = cache()[key_of(spec)];
  extend(spec, st, count - 1);
  return {st.A.begin(), st.A.begin() + static_cast<std::ptrdiff_t>(count)};
}

Rational A_n_full(const FamilySpec& spec, std::size_t n) {
  if (spec.kind == Family::HYP) return a_n(spec, n);
  Factorization f = factorization(spec);
  Rational sum(0);
  for (std::size_t k = 0; k <= n; ++k) {
    Rational u = pochhammer(f.ua, k) * pochhammer(f.ub, k) / pow(pochhammer(Rational(1), k), 2);
    Rational v = pochhammer(f.va, n - k) * pochhammer(f.vb, n - k) / pow(pochhammer(Rational(1), n - k), 2);
    sum += u * v;
  }
  return sum * pow(f.scale, static_cast<long>(n));
}

QSeries generating_series(const FamilySpec& spec, std::size_t order) {
  return QSeries(coefficients(spec, order + 1));
}

BigInt hyp_binomial_form(const Rational& s, unsigned long n) {
  const BigInt c2 = binomial(2 * n, n);
  if (s == Rational(1, 2)) return c2 * c2 * c2;
  if (s == Rational(1, 3)) return c2 * c2 * binomial(3 * n, n);
  if (s == Rational(1, 4)) return c2 * c2 * binomial(4 * n, 2 * n);
  if (s == Rational(1, 6)) return c2 * binomial(3 * n, n) * binomial(6 * n, 3 * n);
  throw Error(Errc::InvalidArgument, "unsupported s " + s.to_string());
}

}  // namespace piforge
