#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace sumsets {

/// Resolves a requested worker count; 0 means "use the hardware".
inline unsigned resolve_workers(unsigned requested) {
    if (requested != 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

/// Runs body(chunk) for every chunk in [0, chunks) on up to `workers` threads
/// and returns the per-chunk results in chunk order. The result never depends
/// on the worker count or the schedule.
template <class Body>
auto map_chunks(std::size_t chunks, unsigned workers, Body&& body) {
    using Result = decltype(body(std::size_t{0}));
    std::vector<Result> results(chunks);
    workers = std::min<unsigned>(resolve_workers(workers), static_cast<unsigned>(std::max<std::size_t>(chunks, 1)));

    if (workers <= 1) {
        for (std::size_t c = 0; c < chunks; ++c) results[c] = body(c);
        return results;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                std::size_t c = next.fetch_add(1);
                if (c >= chunks) return;
                try {
                    results[c] = body(c);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    next.store(chunks);
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    return results;
}

/// Splits [0, n) into `chunks` contiguous ranges; returns the bounds of one.
inline std::pair<std::size_t, std::size_t> chunk_range(std::size_t n, std::size_t chunks, std::size_t index) {
    std::size_t base = n / chunks, extra = n % chunks;
    std::size_t begin = index * base + std::min(index, extra);
    std::size_t end = begin + base + (index < extra ? 1 : 0);
    return {begin, end};
}

}  // namespace sumsets
