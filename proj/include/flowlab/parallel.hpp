#pragma once

#include <algorithm>
#include <cstdlib>
#include <thread>

namespace flowlab {

// Worker cap: FLOWLAB_THREADS if set, otherwise the hardware count.
// Results must never depend on this value, only wall time may.
inline int max_workers() {
    if (const char* env = std::getenv("FLOWLAB_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return std::max(1u, hw);
}

}  // namespace flowlab
