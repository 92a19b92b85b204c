#pragma once

// Randomized algebraic properties. Each check draws from a seeded mt19937 so
// failures reproduce; none of them evaluates a catalog formula numerically.

#include <string>
#include <vector>

namespace proptest {

struct Outcome {
  std::string name;
  bool pass = true;
  int cases = 0;
  std::string detail;  // first counterexample when pass is false
};

Outcome surd_field_laws(unsigned seed, int cases);
Outcome denesting_soundness(unsigned seed, int cases);
Outcome series_ring_laws(unsigned seed, int cases);
Outcome convolution_symmetry(std::size_t max_n);
Outcome catalog_round_trip(unsigned seed, int cases);
Outcome deterministic_parallel_summation(unsigned seed, int cases);

/// All of the above with the default seed.
std::vector<Outcome> run_all(unsigned seed = 20240601u);

}  // namespace proptest
