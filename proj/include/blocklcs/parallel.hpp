#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace blocklcs {

/// 0 means one worker per hardware thread.
inline unsigned resolve_jobs(unsigned jobs) noexcept {
    if (jobs != 0) return jobs;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1U : hw;
}

/// Calls body(i) for every i in [0, count) on up to `jobs` threads. Work is
/// handed out by index; the caller writes results into index-addressed slots,
/// so aggregation order never depends on scheduling. The exception of the
/// smallest failing index is rethrown after all workers stop.
template <typename Body>
void parallel_for(std::size_t count, unsigned jobs, Body&& body) {
    const std::size_t workers = std::min<std::size_t>(resolve_jobs(jobs), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::size_t error_index = count;
    std::exception_ptr error;
    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (i < error_index) {
                    error_index = i;
                    error = std::current_exception();
                }
            }
        }
    };
    std::vector<std::thread> threads;
    threads.reserve(workers - 1);
    for (std::size_t t = 1; t < workers; ++t) threads.emplace_back(worker);
    worker();
    for (auto& t : threads) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace blocklcs
