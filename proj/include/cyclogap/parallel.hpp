#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace cyclogap {

inline unsigned default_thread_count() {
    return std::max(1u, std::thread::hardware_concurrency());
}

/**
 * Applies fn to every task on a pool of workers and returns the results in
 * task order, so the output does not depend on the thread count. The first
 * exception thrown by any worker is rethrown after all workers stop.
 */
template <class Task, class Fn>
auto parallel_map(const std::vector<Task>& tasks, unsigned threads, Fn fn)
    -> std::vector<decltype(fn(tasks.front()))> {
    using Result = decltype(fn(tasks.front()));
    std::vector<Result> results(tasks.size());
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto worker = [&] {
        while (!failed.load(std::memory_order_relaxed)) {
            const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= tasks.size()) {
                return;
            }
            try {
                results[i] = fn(tasks[i]);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
                failed = true;
            }
        }
    };

    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(tasks.size(), 1))));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
    }
    if (error) {
        std::rethrow_exception(error);
    }
    return results;
}

} // namespace cyclogap
