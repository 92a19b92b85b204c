#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "piforge/catalog.hpp"
#include "piforge/config.hpp"

namespace piforge {

enum class SuiteKind { Tables, Numeric, Identities, Congruences, Appendix, All };
SuiteKind suite_from_name(const std::string& name);
std::string suite_name(SuiteKind k);

/// One report row: `kind  id  status  detail  seconds`, tab separated.
/// status is OK, FAIL, EXPECTED-MISMATCH, SKIP or FINDING.
struct ReportLine {
  std::string kind;
  std::string id;
  std::string status;
  std::string detail;
  double seconds = 0;

  std::string tsv() const;
  bool failed() const { return status == "FAIL"; }
};

struct SuiteResult {
  std::vector<ReportLine> lines;

  std::size_t count(const std::string& status) const;
  bool ok() const { return count("FAIL") == 0; }
  int exit_code() const { return ok() ? 0 : 1; }
  /// `# N OK, ...` human summary line.
  std::string summary() const;
};

/// Exact reproduction of one derived row (or the flag report of a source row).
ReportLine table_check(const Catalog& cat, const Formula& f);
/// Numeric verification at the digits the config assigns to this formula.
ReportLine numeric_check(const Formula& f, const RunConfig& cfg);
/// Digits and whether the factorized slow path is used for f.
long numeric_digits(const Formula& f, const RunConfig& cfg, bool* slow = nullptr);

/// Lines are emitted in catalog order whatever the worker count.
SuiteResult run_suite(SuiteKind which, const RunConfig& cfg, const Catalog& cat);

}  // namespace piforge
