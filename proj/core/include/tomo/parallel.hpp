#pragma once

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace tomo {

// Worker count: TOMO_THREADS if set and positive, else hardware concurrency.
int thread_count();

/**
 * Run f(i) for i in [begin, end) over contiguous chunks on thread_count() threads.
 * Iterations must be independent. The first exception thrown is rethrown.
 */
template <typename F>
void parallel_for(int begin, int end, F&& f) {
    const int n = end - begin;
    if (n <= 0) return;
    const int workers = std::min(thread_count(), n);
    if (workers <= 1) {
        for (int i = begin; i < end; ++i) f(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    const int chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const int lo = begin + w * chunk;
        const int hi = std::min(end, lo + chunk);
        pool.emplace_back([&, lo, hi, w] {
            try {
                for (int i = lo; i < hi; ++i) f(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace tomo
