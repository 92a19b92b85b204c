#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "piforge/rational.hpp"
#include "piforge/series.hpp"

namespace piforge {

enum class CheckStatus { Pass, Fail, Finding };
std::string status_name(CheckStatus s);

struct IdentityResult {
  std::string name;  // prop2, prop3, ..., clausen, euler, pfaff, quad, ode-*
  Rational s;
  std::size_t order = 0;  // series order, or digits for numeric checks
  CheckStatus status = CheckStatus::Fail;
  std::string detail;
};

/// Names accepted by check_identity.
const std::vector<std::string>& identity_names();

/// Runs one named check; `order` is the series order (or digits for the
/// numeric checks prop2 and gauss2).
IdentityResult check_identity(const std::string& name, const Rational& s, std::size_t order);

/// The printed third-order ODEs as data, for the residual checks.
Ode ode_prop3(const Rational& s);
Ode ode_prop5(const Rational& s);
Ode ode_prop6(const Rational& s);
/// The s = 1/6 general-transformation ODE as printed (its last term has no y).
Ode ode_general_s16();

}  // namespace piforge
