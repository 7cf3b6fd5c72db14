#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace spt {

/// Resolves a requested worker count; 0 means "one per hardware thread".
inline unsigned resolve_workers(unsigned requested)
{
    if (requested != 0)
        return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1u : hw;
}

/// Runs body(i) for every i in [0, count) on up to `workers` threads.
///
/// Each index is visited exactly once and callers write results into
/// per-index slots, so the outcome never depends on scheduling. If several
/// bodies throw, the exception from the lowest index is rethrown.
template <typename Body>
void parallel_for(std::size_t count, unsigned workers, Body&& body)
{
    const unsigned n_threads =
        static_cast<unsigned>(std::min<std::size_t>(resolve_workers(workers), count));
    if (n_threads <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            body(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;
    std::size_t first_error_index = count;

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= count)
                return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (i < first_error_index) {
                    first_error_index = i;
                    first_error = std::current_exception();
                }
            }
        }
    };

    {
        std::vector<std::jthread> pool;
        pool.reserve(n_threads);
        for (unsigned t = 0; t < n_threads; ++t)
            pool.emplace_back(worker);
    }
    if (first_error)
        std::rethrow_exception(first_error);
}

} // namespace spt
