#pragma once

#include <cstddef>
#include <string>

#include "piforge/bigfloat.hpp"

namespace piforge {

struct PiOptions {
  /// Ranges of at most this many terms are multiplied out directly.
  std::size_t leaf_size = 32;
  /// Top-level subtrees evaluated concurrently; the result is identical for
  /// any value.
  unsigned workers = 1;
};

/// pi with a certified radius below 10^-digits.
BigFloat pi_reference(long digits, const PiOptions& opts = {});
/// pi at a given binary precision (cached per precision).
BigFloat pi_at(mpfr_prec_t prec);
/// "3." followed by `digits` correctly truncated decimals.
std::string pi_digits(long digits, const PiOptions& opts = {});

}  // namespace piforge
