#pragma once

#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

// Deterministic data parallelism: the index space is statically chunked and
// every task writes only to its own preassigned slot, so results are
// identical for any worker count.

namespace dramlat {

template <typename Fn>
void parallel_for(std::size_t count, int workers, Fn&& fn) {
    if (count == 0) return;
    if (workers <= 1 || count == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    const std::size_t thread_count = std::min<std::size_t>(workers, count);
    std::vector<std::exception_ptr> errors(thread_count);
    std::vector<std::thread> threads;
    threads.reserve(thread_count);
    for (std::size_t t = 0; t < thread_count; ++t) {
        threads.emplace_back([&, t] {
            try {
                for (std::size_t i = t; i < count; i += thread_count) fn(i);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (std::thread& th : threads) th.join();
    for (const std::exception_ptr& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace dramlat
