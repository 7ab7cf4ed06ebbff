#pragma once

#include <random>

#include "flowlab/types.hpp"

namespace flowlab {

// Deterministic random stream: mt19937_64 raw draws mapped explicitly so
// sequences are identical across standard library implementations.
class Rng {
  public:
    explicit Rng(unsigned long long seed) : eng_(seed) {}

    Real uniform() {  // [0, 1)
        return Real(eng_() >> 11) * 0x1.0p-53;
    }

    Real uniform(Real lo, Real hi) { return lo + (hi - lo) * uniform(); }

    Real normal() {  // Box-Muller with cached spare
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        Real u1 = uniform(), u2 = uniform();
        while (u1 == 0) u1 = uniform();
        const Real r = std::sqrt(-2.0 * std::log(u1));
        const Real a = kTwoPi * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

  private:
    std::mt19937_64 eng_;
    bool has_spare_ = false;
    Real spare_ = 0;
};

}  // namespace flowlab
