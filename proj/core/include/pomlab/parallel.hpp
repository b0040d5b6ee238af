#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace pomlab {

/// `requested` when nonzero; otherwise POMLAB_THREADS when set to a positive
/// integer; otherwise the hardware concurrency (at least 1).
unsigned resolve_thread_count(unsigned requested = 0);

/// Calls body(i) for i in [0, count) on up to `threads` workers. Work item i
/// always goes to worker i % threads; results must not depend on scheduling.
template <class Body>
void parallel_for(std::size_t count, unsigned threads, Body &&body) {
    std::size_t workers = std::min<std::size_t>(std::max(1u, threads), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            body(i);
        }
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += workers) {
                body(i);
            }
        });
    }
    for (auto &t : pool) {
        t.join();
    }
}

}  // namespace pomlab
