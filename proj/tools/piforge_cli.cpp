#include <CLI11.hpp>

#include <chrono>
#include <iostream>
#include <optional>
#include <string>

#include "piforge/catalog.hpp"
#include "piforge/config.hpp"
#include "piforge/errors.hpp"
#include "piforge/identities.hpp"
#include "piforge/modular.hpp"
#include "piforge/numeric.hpp"
#include "piforge/pi.hpp"
#include "piforge/suite.hpp"
#include "piforge/transforms.hpp"

using namespace piforge;

namespace {

struct Globals {
  std::string config_path;
  std::string catalog_path;

  RunConfig config() const {
    return RunConfig::resolve(config_path.empty() ? std::nullopt
                                                  : std::optional<std::filesystem::path>(config_path));
  }
  Catalog catalog() const { return catalog_path.empty() ? embedded_catalog() : load_catalog(catalog_path); }
};

std::string check_prop_name(const std::string& p) {
  static const std::map<std::string, std::string> alias = {{"2", "prop2"}, {"3", "prop3"}, {"5", "prop5"},
                                                           {"6", "prop6"}};
  const auto it = alias.find(p);
  return it == alias.end() ? p : it->second;
}

int cmd_pi(long digits, const std::string& engine, const RunConfig& cfg, const Globals& g) {
  if (engine == "chudnovsky") {
    PiOptions opts;
    opts.leaf_size = cfg.leaf_size;
    opts.workers = cfg.workers;
    std::cout << pi_digits(digits, opts) << '\n';
    return 0;
  }
  const std::string prefix = "catalog:";
  if (engine.rfind(prefix, 0) != 0) throw Error(Errc::InvalidArgument, "engine must be chudnovsky or catalog:<id>");
  const Catalog cat = g.catalog();
  const Formula& f = cat.at(engine.substr(prefix.size()));
  if (!f.convergent) throw Error(Errc::DivergentFormula, f.id + " is not convergent");
  // pi = rhs / S with the certified radius of S carried through.
  const SeriesSum sum = direct_sum(f.family, f.lin0, f.lin1, f.arg, digits + 10);
  const BigFloat pi = f.rhs.to_bigfloat(sum.value.precision()) / sum.value;
  if (pi.correct_digits() < static_cast<double>(digits))
    throw Error(Errc::PrecisionExhausted, "could not certify the requested digits");
  std::cout << pi.to_fixed(digits) << '\n';
  return 0;
}

void print_formula(const Formula& f) { std::cout << serialize(f); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification and transformation engine for Ramanujan-type series for 1/pi"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.config_path, "flat key=value config file (else $PIFORGE_CONFIG)");
  app.add_option("--catalog", g.catalog_path, "catalog file to use instead of the embedded one");

  long pi_n = 100;
  std::string engine = "chudnovsky";
  auto* pi = app.add_subcommand("pi", "print pi to N digits");
  pi->add_option("--digits", pi_n, "decimal digits after the point")->check(CLI::PositiveNumber);
  pi->add_option("--engine", engine, "chudnovsky or catalog:<id>");

  std::string vid;
  long vdigits = 0;
  auto* verify = app.add_subcommand("verify", "numeric verification of one catalog formula");
  verify->add_option("--id", vid, "formula id")->required();
  verify->add_option("--digits", vdigits, "digits (default from config)");
  std::size_t vcap = 0;
  verify->add_option("--max-terms", vcap, "use the capped factorized summation with this term cap");

  long adigits = 0;
  auto* verify_all = app.add_subcommand("verify-all", "numeric verification of every convergent formula");
  verify_all->add_option("--digits", adigits, "digits for ordinary formulas (default from config)");

  std::string tprop, tid, tsign = "+";
  auto* transform = app.add_subcommand("transform", "apply a transformation to a catalog source row");
  transform->add_option("--prop", tprop, "1, 4, 5, 7 or hat")->required()->check(CLI::IsMember({"1", "4", "5", "7", "hat"}));
  transform->add_option("--id", tid, "source formula id")->required();
  transform->add_option("--sign", tsign, "branch for --prop 4")->check(CLI::IsMember({"+", "-"}));

  std::string iprop, is = "1/3";
  std::size_t iorder = 0;
  auto* ident = app.add_subcommand("check-identity", "series identity check");
  ident->add_option("--prop", iprop, "2, 3, 5, 6, involution, clausen, euler, pfaff, quad, ...")->required();
  ident->add_option("--s", is, "one of 1/2, 1/3, 1/4, 1/6");
  ident->add_option("--order", iorder, "series order (digits for 2 and gauss2)");

  std::string claim;
  unsigned long pmax = 0;
  auto* cong = app.add_subcommand("congruence", "supercongruence sweep mod p^3");
  cong->add_option("--claim", claim, "s13 or s14")->required();
  cong->add_option("--pmax", pmax, "largest prime tested (default from config)");

  std::string mfn, mtau = "1";
  long mdigits = 30;
  int mexample = 0;
  auto* modular = app.add_subcommand("modular", "modular function values and appendix checks");
  modular->add_option("--fn", mfn, "eta, j, t1, t2, t3 or t4")->check(CLI::IsMember({"eta", "j", "t1", "t2", "t3", "t4"}));
  modular->add_option("--tau-im-sq", mtau, "tau = i sqrt(value)");
  modular->add_option("--digits", mdigits, "digits to print");
  modular->add_option("--check-example", mexample, "run the end-to-end check of example 1-4")->check(CLI::Range(1, 4));

  bool clist = false, cdump = false;
  std::string cshow;
  auto* catalog = app.add_subcommand("catalog", "inspect the formula catalog");
  auto* list_opt = catalog->add_flag("--list", clist, "one line per formula");
  catalog->add_option("--show", cshow, "print one formula record")->excludes(list_opt);
  catalog->add_flag("--dump", cdump, "print the whole catalog in canonical form");

  std::string which;
  auto* suite = app.add_subcommand("suite", "run a verification suite");
  suite->add_option("which", which, "tables, numeric, identities, congruences, appendix or all")
      ->required()
      ->check(CLI::IsMember({"tables", "numeric", "identities", "congruences", "appendix", "all"}));

  CLI11_PARSE(app, argc, argv);

  try {
    const RunConfig cfg = g.config();
    if (*pi) return cmd_pi(pi_n, engine, cfg, g);

    if (*verify) {
      const Catalog cat = g.catalog();
      const Formula& f = cat.at(vid);
      bool slow = false;
      const long digits = vdigits > 0 ? vdigits : numeric_digits(f, cfg, &slow);
      const VerificationReport rep =
          slow || vcap > 0 ? slow_series_sum(f, digits, vcap > 0 ? vcap : cfg.term_cap) : sum_formula(f, digits);
      std::cout << rep.line() << '\n';
      return rep.pass ? 0 : 1;
    }

    if (*verify_all) {
      RunConfig c = cfg;
      if (adigits > 0) c.digits_numeric = adigits;
      const Catalog cat = g.catalog();
      bool ok = true;
      for (const auto& f : cat.formulas) {
        if (!f.convergent) continue;
        bool slow = false;
        const long digits = numeric_digits(f, c, &slow);
        const VerificationReport rep = slow ? slow_series_sum(f, digits, c.term_cap) : sum_formula(f, digits);
        std::cout << rep.line() << '\n';
        ok = ok && (rep.pass || f.status == "false");
      }
      return ok ? 0 : 1;
    }

    if (*transform) {
      const Catalog cat = g.catalog();
      const Formula& src = cat.at(tid);
      Formula out;
      if (tprop == "1") out = prop1_transform(src);
      else if (tprop == "4") out = prop4_transform(src, tsign == "+" ? 1 : -1);
      else if (tprop == "5") out = prop5_transform(src);
      else if (tprop == "7") out = prop7_transform(src);
      else out = appendix_hat_transform(src);
      print_formula(out);
      return 0;
    }

    if (*ident) {
      const std::string name = check_prop_name(iprop);
      std::size_t order = iorder;
      if (order == 0) order = name == "prop2" ? 30 : name == "involution" ? cfg.order_involution : cfg.order_rational;
      const IdentityResult r = check_identity(name, Rational::parse(is), order);
      std::cout << r.name << '\t' << r.s << '\t' << r.order << '\t' << status_name(r.status) << '\t' << r.detail
                << '\n';
      return r.status == CheckStatus::Fail ? 1 : 0;
    }

    if (*cong) {
      const Catalog cat = g.catalog();
      const CongruenceClaim& c = cat.claim(claim);
      const auto res = sweep(c, pmax > 0 ? pmax : cfg.pmax, cfg.workers);
      std::size_t passed = 0;
      for (const auto& [p, ok] : res) {
        std::cout << p << '\t' << (ok ? "pass" : "fail") << '\n';
        passed += ok;
      }
      std::cout << "# " << c.id << ": " << passed << "/" << res.size() << " primes pass (p = 2, 3 excluded)\n";
      return passed == res.size() ? 0 : 1;
    }

    if (*modular) {
      if (mexample > 0) {
        const Catalog cat = g.catalog();
        Catalog sub;
        sub.version = cat.version;
        const std::string id = "appx-ex" + std::to_string(mexample);
        sub.formulas.push_back(cat.at(id));
        if (const Formula* h = cat.find(id + "-hat")) sub.formulas.push_back(*h);
        const SuiteResult res = run_suite(SuiteKind::Appendix, cfg, sub);
        for (const auto& l : res.lines) std::cout << l.tsv() << '\n';
        std::cout << res.summary() << '\n';
        return res.exit_code();
      }
      if (mfn.empty()) throw Error(Errc::InvalidArgument, "give --fn or --check-example");
      const TauPoint tau{Rational::parse(mtau)};
      if (tau.im_sq.sign() <= 0) throw Error(Errc::OutsideDomain, "tau-im-sq must be positive");
      const mpfr_prec_t prec = bits_for_digits(mdigits + 10, 64);
      BigFloat v(prec);
      if (mfn == "eta") v = eta(tau, prec);
      else if (mfn == "j") v = j_invariant(tau, prec);
      else v = t_N(mfn[1] - '0', tau, prec);
      std::cout << v.to_sci(static_cast<int>(mdigits)) << '\n';
      return 0;
    }

    if (*catalog) {
      const Catalog cat = g.catalog();
      if (cdump) {
        std::cout << serialize(cat);
      } else if (!cshow.empty()) {
        print_formula(cat.at(cshow));
      } else {
        for (const auto& f : cat.formulas)
          std::cout << f.id << '\t' << family_name(f.family.kind) << '\t' << f.family.s << '\t'
                    << (f.convergent ? "convergent" : "divergent") << '\t' << f.status << '\n';
        std::cout << "# " << cat.formulas.size() << " formulas, " << cat.claims.size() << " claims, "
                  << cat.identities.size() << " identity checks, version " << cat.version << '\n';
      }
      return 0;
    }

    if (*suite) {
      const SuiteResult res = run_suite(suite_from_name(which), cfg, g.catalog());
      for (const auto& l : res.lines) std::cout << l.tsv() << '\n';
      std::cout << res.summary() << '\n';
      return res.exit_code();
    }
  } catch (const ParseError& e) {
    std::cerr << "piforge: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "piforge: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
