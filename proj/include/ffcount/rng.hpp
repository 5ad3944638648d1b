// Seedable deterministic randomness. Every probabilistic operation in the
// library takes one of these explicitly; same seed, same draws.
#pragma once

#include <gmpxx.h>

#include "ffcount/bigint.hpp"

namespace ffcount {

class Rng {
 public:
  explicit Rng(unsigned long seed = 0) : state_(gmp_randinit_mt) {
    state_.seed(seed);
  }

  // uniform in [0, n), n > 0
  Int below(const Int& n) { return state_.get_z_range(n); }

  unsigned long below_ulong(unsigned long n) {
    return to_ulong(below(Int(n)));
  }

  bool coin() { return below_ulong(2) == 1; }

 private:
  gmp_randclass state_;
};

}  // namespace ffcount
