#ifndef PLSE_PARALLEL_HPP
#define PLSE_PARALLEL_HPP

#include <algorithm>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace plse {

inline int default_workers() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs f(i) for i in [begin, end) over `workers` threads in static chunks.
// Tasks must not share mutable state; determinism comes from per-task seeds,
// not from scheduling.
template <typename F>
void parallel_for(std::int64_t begin, std::int64_t end, int workers, F&& f) {
    const std::int64_t count = end - begin;
    if (count <= 0) return;
    workers = static_cast<int>(std::max<std::int64_t>(1, std::min<std::int64_t>(workers, count)));
    if (workers == 1) {
        for (std::int64_t i = begin; i < end; ++i) f(i);
        return;
    }

    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(workers));
    std::exception_ptr error;
    std::mutex error_mutex;
    const std::int64_t chunk = (count + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const std::int64_t lo = begin + w * chunk;
        const std::int64_t hi = std::min(end, lo + chunk);
        if (lo >= hi) break;
        threads.emplace_back([&, lo, hi] {
            try {
                for (std::int64_t i = lo; i < hi; ++i) f(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace plse

#endif  // PLSE_PARALLEL_HPP
