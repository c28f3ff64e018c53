#pragma once

#include <cstdlib>
#include <thread>

namespace silab {

// Worker count for sharded enumerations: SILAB_THREADS if set and positive,
// otherwise the hardware concurrency (at least 1).
inline int worker_count() {
    if (const char* env = std::getenv("SILAB_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace silab
