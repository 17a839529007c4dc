#pragma once

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace steinpp {

// Worker cap: STEINPP_THREADS if set, else hardware concurrency.
inline unsigned thread_cap() {
    if (const char* env = std::getenv("STEINPP_THREADS")) {
        long v = std::atol(env);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

// Runs fn(i) for i in [0, n). Callers write results into index-addressed
// storage and reduce sequentially afterwards, so output is independent of
// the thread count.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
    unsigned workers = thread_cap();
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    if (workers > n) workers = static_cast<unsigned>(n);
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                fn(i);
            }
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace steinpp
