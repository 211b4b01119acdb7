#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace bellsim {

// Runs fn(i) for i in [0, n) on up to `threads` workers. Units must write
// only to their own output slots; combined with per-unit seed derivation
// this keeps results identical for any thread count.
template <typename Fn>
void parallel_for_units(std::size_t n, unsigned threads, Fn&& fn) {
    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    const unsigned count = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    pool.reserve(count);
    for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

}  // namespace bellsim
