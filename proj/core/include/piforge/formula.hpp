#pragma once

#include <map>
#include <optional>
#include <string>

#include "piforge/families.hpp"
#include "piforge/surd.hpp"

namespace piforge {

/// One claimed identity  sum_n c_n (lin0 + lin1 n) arg^n = rhs / pi, where
/// c_n is the family coefficient.
struct Formula {
  std::string id;
  std::string provenance;
  FamilySpec family;
  SurdExpr arg;
  SurdExpr lin0;
  SurdExpr lin1;
  SurdExpr rhs = SurdExpr(1);
  std::optional<Rational> tau0_im_sq;  // tau0 = i sqrt(tau0_im_sq)
  bool convergent = false;
  std::string notes;

  // Catalog metadata.
  std::string derived_from;  // id of the source row, empty for sources
  std::string transform;     // prop1, prop4+, prop4-, prop5, prop7, hat
  std::string status = "ok"; // ok | typo | suspect | false
  std::map<std::string, std::string> printed;  // field -> printed literal when it differs
};

/// growth(family) * |arg| < 1, decided exactly.
bool is_convergent(const FamilySpec& family, const SurdExpr& arg);

}  // namespace piforge
