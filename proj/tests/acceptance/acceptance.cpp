// Acceptance runner: `piforge_acceptance C1 [C2 ...]` or `piforge_acceptance all`.
// Each criterion prints its sub-checks and then exactly one line
// `C<k>: PASS|FAIL  <title>  (<seconds> s)`. Exit status is nonzero when any
// requested criterion fails.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "machin.hpp"
#include "oracles.hpp"
#include "piforge/catalog.hpp"
#include "piforge/config.hpp"
#include "piforge/congruence.hpp"
#include "piforge/identities.hpp"
#include "piforge/modular.hpp"
#include "piforge/numeric.hpp"
#include "piforge/pi.hpp"
#include "piforge/suite.hpp"
#include "piforge/transforms.hpp"
#include "properties.hpp"

using namespace piforge;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string num(double v, int prec = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", prec, v);
  return buf;
}

class Criterion {
 public:
  explicit Criterion(std::string id) : id_(std::move(id)) {}

  void check(bool ok, const std::string& what) {
    std::cout << "    " << (ok ? "ok      " : "FAILED  ") << what << "\n";
    ok_ = ok_ && ok;
  }
  void info(const std::string& what) { std::cout << "    info    " << what << "\n"; }
  bool ok() const { return ok_; }
  const std::string& id() const { return id_; }

 private:
  std::string id_;
  bool ok_ = true;
};

struct Context {
  RunConfig cfg;
  const Catalog* cat = nullptr;
  double pi_budget = 10.0;
};

// ---- C1 ------------------------------------------------------------------

void c1(Criterion& c, const Context& ctx) {
  const auto t0 = Clock::now();
  const SuiteResult res = run_suite(SuiteKind::Tables, ctx.cfg, *ctx.cat);
  const double secs = since(t0);

  std::map<std::string, const ReportLine*> by_id;
  for (const auto& l : res.lines) by_id[l.id] = &l;

  // Rows per (table, s); prop4 rows come in +/- pairs.
  const std::regex row(R"((p1|p4|p5|p7)-s(\d+)-r(\d+)(-plus|-minus)?)");
  std::map<std::string, std::set<std::string>> rows;
  std::size_t expected_mismatch = 0;
  for (const auto& f : ctx.cat->formulas) {
    std::smatch m;
    if (!std::regex_match(f.id, m, row)) continue;
    rows[m[1].str() + " s=1/" + std::string(1, m[2].str()[1])].insert(m[3].str());
    const ReportLine* l = by_id.at(f.id);
    c.check(l->status == "OK" || l->status == "EXPECTED-MISMATCH",
            f.id + " reproduces exactly (" + l->status + ")");
    if (l->status == "EXPECTED-MISMATCH") ++expected_mismatch;
  }
  c.info(std::to_string(expected_mismatch) + " flagged rows reported as EXPECTED-MISMATCH");

  const std::vector<std::pair<std::string, std::size_t>> counts = {
      {"p1 s=1/3", 9},  {"p1 s=1/4", 13}, {"p1 s=1/6", 11}, {"p4 s=1/2", 2},
      {"p4 s=1/3", 6},  {"p4 s=1/4", 6},  {"p4 s=1/6", 7},  {"p7 s=1/2", 4},
      {"p7 s=1/3", 9},  {"p7 s=1/4", 12}, {"p7 s=1/6", 11}};
  for (const auto& [table, n] : counts)
    c.check(rows[table].size() == n, table + ": " + std::to_string(rows[table].size()) + " rows (want " +
                                         std::to_string(n) + ")");
  c.info("the s=1/6 PROP7 source table has 11 rows; a 12-row count for it does not match the table text");
  const std::size_t p5 = rows["p5 s=1/3"].size() + rows["p5 s=1/4"].size();
  c.check(p5 == 3, "p5: " + std::to_string(p5) + " rows (want 3)");

  c.check(res.count("FAIL") == 0, "tables suite: " + res.summary());
  c.check(secs < 5.0, "runtime " + num(secs) + " s < 5 s");
}

// ---- C2 ------------------------------------------------------------------

void c2(Criterion& c, const Context& ctx) {
  const Formula& printed = ctx.cat->at("intro-monstrous-printed");
  const auto t0 = Clock::now();
  const VerificationReport r = sum_formula(printed, 30);
  const double secs = since(t0);
  c.check(r.pass, "printed P(n) sums to 13803981511092062440689/(pi sqrt163): " + num(r.digits_achieved, 1) +
                      "/30 digits");
  c.check(r.terms <= 5, std::to_string(r.terms) + " terms <= 5");
  c.check(secs < 1.0, "runtime " + num(secs, 3) + " s < 1 s");

  const Formula& corrected = ctx.cat->at("intro-monstrous");
  const VerificationReport rc = sum_formula(corrected, 30);
  c.info("exact transform of the Chudnovsky series, P(n) = 344160238522569487557 + 13803981511091971584000 n: " +
         std::string(rc.pass ? "matches" : "does not match") + " to " + num(rc.digits_achieved, 1) + " digits in " +
         std::to_string(rc.terms) + " terms");
}

// ---- C3 ------------------------------------------------------------------

void c3(Criterion& c, const Context& ctx) {
  const long digits = ctx.cfg.pi_digits;
  const auto t0 = Clock::now();
  const std::string got = pi_digits(digits, PiOptions{ctx.cfg.leaf_size, ctx.cfg.workers});
  const double secs = since(t0);
  const auto t1 = Clock::now();
  const std::string want = oracle::machin_pi(digits);
  c.info("Machin oracle took " + num(since(t1)) + " s");
  c.check(got.size() == want.size(), std::to_string(digits) + " digits produced");
  const std::string tail_got = got.substr(got.size() - 20), tail_want = want.substr(want.size() - 20);
  c.check(tail_got == tail_want, "final 20 digits " + tail_got + " (oracle " + tail_want + ")");
  c.check(got == want, "all digits agree with the oracle");
  c.check(secs <= ctx.pi_budget, "wall time " + num(secs) + " s <= " + num(ctx.pi_budget, 1) + " s");
}

// ---- C4 ------------------------------------------------------------------

void c4(Criterion& c, const Context& ctx) {
  // Companions run on the factorized path under the term cap.
  const std::map<std::string, long> companions = {
      {"appx-ex1-hat", 15}, {"appx-ex3-hat", 15}, {"appx-ex2-hat", 6}, {"appx-ex4-hat", 6}};
  for (const auto& [id, want] : companions) {
    bool slow = false;
    const long d = numeric_digits(ctx.cat->at(id), ctx.cfg, &slow);
    c.check(d == want && slow, id + " runs at " + std::to_string(d) + " digits on the capped factorized path");
  }
  c.check(ctx.cfg.term_cap == 5000000, "term cap " + std::to_string(ctx.cfg.term_cap));
  c.check(ctx.cfg.digits_numeric == 50, "ordinary formulas at " + std::to_string(ctx.cfg.digits_numeric) + " digits");

  const SuiteResult res = run_suite(SuiteKind::Numeric, ctx.cfg, *ctx.cat);
  std::size_t ok = 0, skipped = 0;
  for (const auto& l : res.lines) {
    const Formula& f = ctx.cat->at(l.id);
    if (!f.convergent) {
      ++skipped;
      continue;
    }
    if (f.status == "false") {
      c.info(l.id + " excluded (stored as published and flagged false): " + l.status + ", " + l.detail);
      continue;
    }
    if (l.status == "OK") ++ok;
    else c.check(false, l.id + ": " + l.status + ", " + l.detail);
  }
  c.check(res.count("FAIL") == 0, std::to_string(ok) + " convergent formulas verified, " + std::to_string(skipped) +
                                      " divergent skipped; " + res.summary());

  // Closed-form evidence for the companions that the capped sum cannot reach.
  for (const char* id : {"appx-ex2", "appx-ex4"}) {
    const Formula h = appendix_hat_transform(ctx.cat->at(id));
    const mpfr_prec_t prec = bits_for_digits(60, 64);
    const BigFloat w1 = h.arg.to_bigfloat(prec);
    const auto [F1, G1] = F_and_G(h.family.s, w1);
    const BigFloat r = h.lin0.to_bigfloat(prec) * F1 * F1 + h.lin1.to_bigfloat(prec) * F1 * G1 * Rational(2) -
                       h.rhs.to_bigfloat(prec) / pi_at(prec);
    c.info(std::string(id) + "-hat: A^ F(w1)^2 + 2 B^ F(w1) G(w1) - C^/pi bounded by 1e" +
           num(r.log10_upper_abs(), 1) + " via the logarithmic expansion at t = 1; 1 - w1 = " +
           (BigFloat::from(1, prec) - w1).to_sci(3));
  }
}

// ---- C5 ------------------------------------------------------------------

void c5(Criterion& c, const Context&) {
  const std::vector<Rational> all_s = {Rational(1, 2), Rational(1, 3), Rational(1, 4), Rational(1, 6)};
  const std::vector<std::pair<std::string, std::size_t>> pinned = {
      {"prop3", 40},      {"prop3-step", 40}, {"prop5", 40}, {"prop6", 40}, {"theta-square", 40},
      {"involution", 30}, {"clausen", 25},    {"euler", 25}, {"pfaff", 25}, {"quad", 25},
      {"prop2", 30}};
  for (const auto& [name, order] : pinned) {
    for (const auto& s : all_s) {
      const IdentityResult r = check_identity(name, s, order);
      const std::string unit = name == "prop2" ? " digits" : " order";
      c.check(r.status == CheckStatus::Pass,
              name + " s=" + s.to_string() + " at " + std::to_string(order) + unit + ": " + r.detail);
    }
  }
  // The printed differential equations are reported, not asserted.
  for (const std::string name : {"ode-prop3", "ode-prop5", "ode-prop6"})
    for (const auto& s : all_s) {
      const IdentityResult r = check_identity(name, s, 20);
      c.info(name + " s=" + s.to_string() + ": " + status_name(r.status) + ", " + r.detail);
    }
  const IdentityResult g = check_identity("ode-general", Rational(1, 6), 20);
  c.info("ode-general s=1/6: " + status_name(g.status) + ", " + g.detail);
}

// ---- C6 ------------------------------------------------------------------

void c6(Criterion& c, const Context& ctx) {
  const auto t0 = Clock::now();
  for (const auto& claim : ctx.cat->claims) {
    const auto res = sweep(claim, 499, ctx.cfg.workers);
    std::size_t good = 0;
    std::string bad;
    for (const auto& [p, ok] : res) {
      if (ok) ++good;
      else bad += " " + std::to_string(p);
    }
    c.check(bad.empty() && res.size() == 93,
            claim.id + ": holds for " + std::to_string(good) + "/" + std::to_string(res.size()) +
                " primes 5 <= p <= 499" + (bad.empty() ? "" : ", fails at" + bad));

    const int den = static_cast<int>(claim.family.s.denominator().get_si());
    std::size_t agree = 0, primes = 0;
    for (unsigned long p = 5; p <= 31; ++p) {
      if (!is_prime(p)) continue;
      ++primes;
      const mpz_class lhs = oracle::congruence_sum(den, claim.lin0.get_si(), claim.lin1.get_si(),
                                                   claim.base.get_si(), p);
      const mpz_class m = mpz_class(p) * p * p;
      const mpz_class pz(p);
      mpz_class want = claim.rhs_mult * p * mpz_kronecker(claim.character_disc.get_mpz_t(), pz.get_mpz_t());
      want %= m;
      if (want < 0) want += m;
      const auto [fast, expected] = claim_residues(claim, p);
      if (lhs == fast && lhs == want && expected == want) ++agree;
      else c.check(false, claim.id + " p=" + std::to_string(p) + ": oracle " + lhs.get_str() + ", library " +
                              fast.get_str() + ", expected " + want.get_str());
    }
    c.check(agree == primes, claim.id + ": independent exact oracle agrees for " + std::to_string(agree) + "/" +
                                 std::to_string(primes) + " primes <= 31");
  }
  const double secs = since(t0);
  c.check(secs < 30.0, "runtime " + num(secs) + " s < 30 s");
}

// ---- C7 ------------------------------------------------------------------

Formula example(const char* id, const Rational& s, const char* arg, SurdExpr a, SurdExpr b, SurdExpr rhs,
                const Rational& im_sq) {
  Formula f;
  f.id = id;
  f.family = make_spec(Family::PROP7, s);
  f.arg = SurdExpr::parse(arg);
  f.lin0 = std::move(a);
  f.lin1 = std::move(b);
  f.rhs = std::move(rhs);
  f.tau0_im_sq = im_sq;
  f.convergent = true;
  return f;
}

void c7(Criterion& c, const Context&) {
  const mpfr_prec_t prec = bits_for_digits(80, 64);
  const TauPoint i_point{Rational(1)};

  const BigFloat t2 = t_N(2, i_point, prec) - BigFloat::from(Rational(1, 9), prec);
  c.check(t2.log10_upper_abs() < -40, "|t_2(i) - 1/9| <= 1e" + num(t2.log10_upper_abs(), 1));
  const BigFloat j = j_invariant(i_point, prec) - BigFloat::from(1728, prec);
  c.check(j.log10_upper_abs() < -30, "|j(i) - 1728| <= 1e" + num(j.log10_upper_abs(), 1));

  const auto P = [](const char* t) { return SurdExpr::parse(t); };
  struct Case {
    Formula input;
    SurdExpr w1, a, b, rhs;
  };
  const std::vector<Case> cases = {
      {example("ex1", Rational(1, 4), "1/9", 1, 8, Rational(9, 2), Rational(1)), Rational(8, 9), 1, -1, -9},
      {example("ex2", Rational(1, 4), "1/2-910/9801*sqrt(29)", P("2206/9801*sqrt(2)"),
               (P("52780*sqrt(2)") + P("9801*sqrt(58)")) / SurdExpr(19602), 1, Rational(29, 2)),
       P("1/2+910/9801*sqrt(29)"), P("2206/9801*sqrt(2)"),
       (P("52780*sqrt(2)") - P("9801*sqrt(58)")) / SurdExpr(19602), -29},
      {example("ex3", Rational(1, 2), "1/2-1/4*sqrt(3)", Rational(1, 4), (SurdExpr(3) + P("2*sqrt(3)")) / SurdExpr(4),
               1, Rational(3, 4)),
       P("1/2+1/4*sqrt(3)"), Rational(1, 4), (SurdExpr(3) - P("2*sqrt(3)")) / SurdExpr(4), -3},
      {example("ex4", Rational(1, 6), "1/2-171/14450*sqrt(1785)", P("144/7225*sqrt(255)"),
               P("sqrt(7)") + P("1197/7225*sqrt(255)"), 1, Rational(7)),
       P("1/2+171/14450*sqrt(1785)"), P("144/7225*sqrt(255)"), -P("sqrt(7)") + P("1197/7225*sqrt(255)"), -7},
  };
  for (const auto& k : cases) {
    const Formula h = appendix_hat_transform(k.input);
    c.check(h.arg == k.w1 && h.lin0 == k.a && h.lin1 == k.b && h.rhs == k.rhs,
            k.input.id + " companion: w1 = " + h.arg.to_string() + ", A^ = " + h.lin0.to_string() +
                ", B^ = " + h.lin1.to_string() + ", C^ = " + h.rhs.to_string());
  }
  for (std::size_t idx : {std::size_t{0}, std::size_t{2}}) {
    const Formula& f = cases[idx].input;
    const int N = level_for(f.family.s);
    const TauRelation r = tau_relation_check(f.family.s, N, TauPoint{*f.tau0_im_sq}, prec);
    c.check(r.residual.log10_upper_abs() < -20,
            f.id + " tau relation residual <= 1e" + num(r.residual.log10_upper_abs(), 1));
  }
}

// ---- C8 ------------------------------------------------------------------

void c8(Criterion& c, const Context&) {
  for (const auto& o : proptest::run_all())
    c.check(o.pass, o.name + " (" + std::to_string(o.cases) + " cases)" + (o.pass ? "" : ": " + o.detail));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"piforge acceptance criteria"};
  std::vector<std::string> which;
  std::optional<std::string> config;
  double pi_budget = 10.0;
  app.add_option("criteria", which, "C1..C8 or all")->required();
  app.add_option("--config", config, "run configuration file");
  app.add_option("--pi-seconds", pi_budget, "wall-time budget for the pi criterion");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::pair<std::string, std::function<void(Criterion&, const Context&)>>>>
      criteria = {
          {"C1", {"exact table reproduction", c1}},
          {"C2", {"intro formula as printed", c2}},
          {"C3", {"pi engine against the Machin oracle", c3}},
          {"C4", {"numeric verification of the catalog", c4}},
          {"C5", {"identity suite", c5}},
          {"C6", {"supercongruences", c6}},
          {"C7", {"modular checks and companion transform", c7}},
          {"C8", {"property suites", c8}},
      };

  Context ctx;
  try {
    ctx.cfg = RunConfig::resolve(config ? std::optional<std::filesystem::path>(*config) : std::nullopt);
    ctx.cat = &embedded_catalog();
  } catch (const std::exception& e) {
    std::cerr << "setup failed: " << e.what() << "\n";
    return 2;
  }
  ctx.pi_budget = pi_budget;

  std::set<std::string> wanted(which.begin(), which.end());
  const bool all = wanted.count("all") > 0;
  int failures = 0, ran = 0;
  for (const auto& [id, entry] : criteria) {
    if (!all && !wanted.count(id)) continue;
    ++ran;
    Criterion c(id);
    std::cout << id << " " << entry.first << "\n";
    const auto t0 = Clock::now();
    try {
      entry.second(c, ctx);
    } catch (const std::exception& e) {
      c.check(false, std::string("uncaught error: ") + e.what());
    }
    std::cout << id << ": " << (c.ok() ? "PASS" : "FAIL") << "  " << entry.first << "  (" << num(since(t0)) << " s)\n"
              << std::flush;
    if (!c.ok()) ++failures;
  }
  if (ran == 0) {
    std::cerr << "no criterion matched\n";
    return 2;
  }
  return failures == 0 ? 0 : 1;
}
