#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace portrisk {

// Global worker cap, settable once from the CLI (--threads). 0 = hardware.
inline unsigned& max_threads() {
    static unsigned cap = 0;
    return cap;
}

inline unsigned effective_threads(std::size_t n) {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    unsigned cap = max_threads() == 0 ? hw : std::min(max_threads(), hw);
    return static_cast<unsigned>(std::min<std::size_t>(cap, std::max<std::size_t>(n, 1)));
}

// Runs fn(i) for i in [0, n). Each index owns its output slot, so results
// are identical for any thread count.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const unsigned workers = effective_threads(n);
    if (workers <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t lo = static_cast<std::size_t>(w) * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace portrisk
