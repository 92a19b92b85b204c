#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "piforge/congruence.hpp"
#include "piforge/formula.hpp"

namespace piforge {

struct IdentityDescriptor {
  std::string name;  // see identity_names()
  std::vector<Rational> s;
  std::size_t order = 0;
};

/// Line-group text format: each record starts with `formula: <id>`,
/// `claim: <id>` or `identity: <name>` and continues with `key: value`
/// lines until the next record. `#` starts a comment line. Values use the
/// surd literal grammar where a number is expected.
struct Catalog {
  std::string version;
  std::vector<Formula> formulas;
  std::vector<CongruenceClaim> claims;
  std::vector<IdentityDescriptor> identities;

  const Formula* find(std::string_view id) const;
  /// Throws UnknownId.
  const Formula& at(std::string_view id) const;
  const CongruenceClaim& claim(std::string_view id) const;
};

Catalog parse_catalog(std::string_view text);
Catalog load_catalog(const std::filesystem::path& path);
/// The catalog compiled into the library.
const Catalog& embedded_catalog();
std::string_view embedded_catalog_text();

/// Canonical text; parse_catalog(serialize(c)) reproduces c and
/// serialize(parse_catalog(t)) == t for canonical t.
std::string serialize(const Catalog& c);
std::string serialize(const Formula& f);

}  // namespace piforge
