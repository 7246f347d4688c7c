#ifndef FAACALC_PARALLEL_HPP
#define FAACALC_PARALLEL_HPP

// Deterministic work splitting: each worker owns a contiguous index range,
// and any reduction happens after the join, in index order, so results are
// bit-identical regardless of the worker count.

#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace faacalc {

inline int default_jobs() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Calls fn(i) for i in [0, n). With jobs <= 1 this is a plain loop; otherwise
// the range is split into contiguous chunks, one thread per chunk. fn must be
// safe to call concurrently on distinct indices (e.g. writing to slot i of a
// pre-sized buffer). The first exception thrown by any worker is rethrown.
template <typename Fn>
void parallel_for(size_t n, int jobs, Fn&& fn) {
    if (n == 0) return;
    if (jobs < 1) jobs = 1;
    const size_t workers = std::min<size_t>(static_cast<size_t>(jobs), n);
    if (workers <= 1) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> threads;
    threads.reserve(workers);
    const size_t chunk = (n + workers - 1) / workers;
    for (size_t w = 0; w < workers; ++w) {
        const size_t lo = w * chunk;
        const size_t hi = std::min(n, lo + chunk);
        threads.emplace_back([&, w, lo, hi] {
            try {
                for (size_t i = lo; i < hi; ++i) fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace faacalc

#endif
