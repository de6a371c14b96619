#pragma once

#include <cstddef>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace pubcausal {

// Worker count: PUBCAUSAL_THREADS env var wins, else hardware concurrency.
inline unsigned thread_count() {
    if (const char* env = std::getenv("PUBCAUSAL_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : hc;
}

// Index-sharded parallel map. Results must be written to pre-sized slots
// keyed by index so scheduling cannot reorder output.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const unsigned workers = thread_count();
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const unsigned k = static_cast<unsigned>(std::min<std::size_t>(workers, n));
    std::vector<std::thread> pool;
    pool.reserve(k);
    for (unsigned w = 0; w < k; ++w) {
        pool.emplace_back([&, w]() {
            for (std::size_t i = w; i < n; i += k) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace pubcausal
