#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace hardylab {

// Worker count from HARDYLAB_THREADS; 1 when unset or invalid.
int worker_count();

// Runs f(i) for i in [0, n) on up to `workers` threads. The first exception is rethrown after all workers stop.
template <class F>
void parallel_for(std::size_t n, int workers, F&& f) {
    const std::size_t w = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, workers)));
    if (w <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (std::size_t k = 0; k < w; ++k) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    f(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace hardylab
