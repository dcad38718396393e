// Deterministic randomness. mt19937_64 output is pinned by the standard, and
// the bounded draw is hand-rolled rejection sampling because
// std::uniform_int_distribution is implementation-defined and would break
// trace reproducibility across platforms.
#pragma once

#include <cstdint>
#include <random>

#include "oraclesim/errors.hpp"

namespace oraclesim {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Unbiased draw from [0, n). n must be positive.
    std::uint64_t next_below(std::uint64_t n) {
        if (n == 0) throw InvariantError("Rng::next_below: empty range");
        if (n == 1) return 0;
        const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % n);
        for (;;) {
            const std::uint64_t draw = gen_();
            if (draw < limit) return draw % n;
        }
    }

  private:
    std::mt19937_64 gen_;
};

}  // namespace oraclesim
