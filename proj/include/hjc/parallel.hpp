#pragma once

// Deterministic work-item parallelism: items are dispatched by an atomic
// counter and must write results only into their own pre-allocated slot,
// so output is independent of scheduling and thread count.

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace hjc {

inline unsigned available_parallelism() {
    const unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
}

// Runs fn(0..n_items-1); fn must not throw (catch inside and record).
inline void parallel_for(std::size_t n_items, int n_threads,
                         const std::function<void(std::size_t)>& fn) {
    if (n_threads <= 1 || n_items <= 1) {
        for (std::size_t i = 0; i < n_items; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    const std::size_t workers =
        std::min<std::size_t>(static_cast<std::size_t>(n_threads), n_items);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n_items) return;
                fn(i);
            }
        });
    for (auto& t : pool) t.join();
}

} // namespace hjc
