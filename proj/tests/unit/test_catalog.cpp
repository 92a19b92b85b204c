#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "piforge/catalog.hpp"
#include "piforge/config.hpp"
#include "piforge/errors.hpp"
#include "piforge/suite.hpp"

using namespace piforge;

namespace {

const char* kTwoRows =
    "version: 1\n"
    "\n"
    "formula: a-src\n"
    "provenance: unit test\n"
    "family: HYP\n"
    "s: 1/2\n"
    "M: 1\n"
    "arg: 1/4\n"
    "lin0: 1/4\n"
    "lin1: 3/2\n"
    "rhs: 1\n"
    "convergent: true\n"
    "status: ok\n"
    "\n"
    "formula: a\n"
    "provenance: unit test\n"
    "family: PROP7\n"
    "s: 1/2\n"
    "arg: 1/2-1/4*sqrt(3)\n"
    "lin0: 1/4\n"
    "lin1: 3/4+1/2*sqrt(3)\n"
    "rhs: 1\n"
    "convergent: true\n"
    "status: ok\n"
    "derived_from: a-src\n"
    "transform: prop7\n"
    "\n";

}  // namespace

TEST_CASE("embedded catalog contents") {
  const Catalog& cat = embedded_catalog();
  CHECK(cat.formulas.size() >= 60);
  CHECK(cat.claims.size() == 2);
  CHECK(cat.find("p1-s13-r5") != nullptr);
  CHECK(cat.find("nope") == nullptr);
  CHECK_THROWS_AS(cat.at("nope"), Error);
  for (const auto& f : cat.formulas) {
    CHECK_MESSAGE(f.convergent == is_convergent(f.family, f.arg), f.id);
    if (!f.convergent) CHECK_MESSAGE((!f.notes.empty() || f.status != "ok"), f.id);
  }
}

TEST_CASE("round trip is byte-identical") {
  CHECK(serialize(parse_catalog(embedded_catalog_text())) == embedded_catalog_text());
  CHECK(serialize(parse_catalog(kTwoRows)) == kTwoRows);
}

TEST_CASE("empty and comment-only files") {
  const Catalog e = parse_catalog("");
  CHECK(e.formulas.empty());
  CHECK(e.claims.empty());
  CHECK(parse_catalog("# nothing here\n\n").formulas.empty());
}

TEST_CASE("parse errors carry positions") {
  std::string bad = kTwoRows;
  bad.replace(bad.find("lin1: 3/2"), 9, "lin1: 3/2*sqrt(x)");
  try {
    parse_catalog(bad);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 10);
    CHECK(e.column() > 6);
  }
  CHECK_THROWS_AS(parse_catalog("formula: x\nfamily: NOPE\n"), ParseError);
  CHECK_THROWS_AS(parse_catalog("formula: x\nbogus_key: 1\n"), ParseError);
}

TEST_CASE("structural validation") {
  std::string dup = std::string(kTwoRows);
  dup.replace(dup.find("formula: a\n"), 11, "formula: a-src\n");
  try {
    parse_catalog(dup);
    FAIL("expected DuplicateId");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DuplicateId);
  }
  std::string unknown = kTwoRows;
  unknown.replace(unknown.find("derived_from: a-src"), 19, "derived_from: zzz");
  try {
    parse_catalog(unknown);
    FAIL("expected UnknownId");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::UnknownId);
  }
  std::string flag = kTwoRows;
  flag.replace(flag.find("convergent: true"), 16, "convergent: false");
  CHECK_THROWS_AS(parse_catalog(flag), Error);
}

TEST_CASE("load from disk") {
  const auto path = std::filesystem::temp_directory_path() / "piforge_unit_catalog.txt";
  {
    std::ofstream out(path);
    out << kTwoRows;
  }
  const Catalog c = load_catalog(path);
  CHECK(c.formulas.size() == 2);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_catalog(path), Error);
}

TEST_CASE("config round trip and validation") {
  RunConfig c;
  CHECK(RunConfig::parse(c.serialize()) == c);
  c.digits_numeric = 77;
  c.workers = 3;
  c.slow_gap = 2.5e-4;
  CHECK(RunConfig::parse(c.serialize()) == c);
  const RunConfig d = RunConfig::parse("# comment\npmax = 101\n");
  CHECK(d.pmax == 101);
  CHECK(d.digits_numeric == 50);
  CHECK_THROWS_AS(RunConfig::parse("no_such_key = 1\n"), ParseError);
  CHECK_THROWS_AS(RunConfig::parse("pmax = -3\n"), ParseError);
  CHECK_THROWS_AS(RunConfig::parse("pmax 3\n"), ParseError);
}

TEST_CASE("tables suite on a small catalog, then on a corrupted one") {
  RunConfig cfg;
  const Catalog good = parse_catalog(kTwoRows);
  const SuiteResult r = run_suite(SuiteKind::Tables, cfg, good);
  CHECK(r.count("OK") == 2);
  CHECK(r.exit_code() == 0);

  std::string bad = kTwoRows;
  bad.replace(bad.find("lin1: 3/4+1/2*sqrt(3)"), 21, "lin1: 3/4+1/3*sqrt(3)");
  const Catalog corrupted = parse_catalog(bad);
  const SuiteResult t = run_suite(SuiteKind::Tables, cfg, corrupted);
  CHECK(t.count("FAIL") == 1);
  CHECK(t.exit_code() != 0);
  const SuiteResult all = run_suite(SuiteKind::All, cfg, corrupted);
  CHECK(all.exit_code() != 0);
  CHECK(all.summary().rfind("# ", 0) == 0);
}

TEST_CASE("report line format") {
  const ReportLine l{"table", "x", "OK", "detail", 0.25};
  CHECK(l.tsv().find("table\tx\tOK\tdetail\t") == 0);
  CHECK_FALSE(l.failed());
  CHECK(suite_from_name("appendix") == SuiteKind::Appendix);
  CHECK_THROWS_AS(suite_from_name("nope"), Error);
}
