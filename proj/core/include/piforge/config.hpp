#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace piforge {

/// Engineering defaults for every check class. Flat `key = value` text;
/// unknown keys are errors, `#` starts a comment.
struct RunConfig {
  long digits_numeric = 50;    // ordinary convergent formulas
  long digits_companion = 15;  // companion series with moderate |w1|
  long digits_slow = 6;        // companion series with 1 - |w1| < slow_gap
  double slow_gap = 1e-3;
  std::size_t order_rational = 40;
  std::size_t order_surd = 25;
  std::size_t order_involution = 30;
  std::size_t term_cap = 5000000;
  std::size_t leaf_size = 32;
  unsigned workers = 1;
  long pi_digits = 100000;
  unsigned long pmax = 499;
  unsigned long oracle_pmax = 31;
  long modular_digits = 40;

  static RunConfig parse(std::string_view text);
  static RunConfig load(const std::filesystem::path& path);
  /// `--config` path if given, else $PIFORGE_CONFIG, else defaults.
  static RunConfig resolve(const std::optional<std::filesystem::path>& explicit_path);

  std::string serialize() const;
  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

}  // namespace piforge
