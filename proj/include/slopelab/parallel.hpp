#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace slopelab {

// Thread-count resolution ladder: an explicit request (>= 1) wins, then the
// SLOPELAB_THREADS environment variable, then 1. Never returns less than 1.
inline int resolve_threads(int requested) {
    if (requested >= 1) return requested;
    if (const char* env = std::getenv("SLOPELAB_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<int>(v);
    }
    return 1;
}

// Runs body(0..n-1) on up to `threads` workers. Tasks are claimed from an
// atomic counter, so the schedule is nondeterministic — callers must make each
// task independent (own seed, own output slot) and merge by index, which keeps
// every result byte-identical across thread counts. The first exception thrown
// by any task is rethrown on the calling thread after all workers join.
inline void parallel_for(long n, int threads, const std::function<void(long)>& body) {
    if (n <= 0) return;
    threads = resolve_threads(threads);
    if (threads > n) threads = static_cast<int>(n);
    if (threads == 1) {
        for (long i = 0; i < n; ++i) body(i);
        return;
    }

    std::atomic<long> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto worker = [&] {
        while (!failed.load(std::memory_order_relaxed)) {
            const long i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= n) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                failed.store(true, std::memory_order_relaxed);
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace slopelab
