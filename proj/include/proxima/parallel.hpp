#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace proxima {

struct ScanOptions {
    /// Worker threads for pairwise scans; 0 means hardware concurrency.
    unsigned threads = 1;
};

inline unsigned resolve_threads(unsigned requested) {
    if (requested != 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1u : hw;
}

/// Splits [0, n) into contiguous chunks, runs `body(begin, end)` for each chunk
/// on its own thread and returns the per-chunk results in chunk order. The
/// caller merges them, so any order-sensitive reduction stays deterministic.
/// The first exception thrown by a chunk (in chunk order) is rethrown.
template <typename Result, typename Body>
std::vector<Result> parallel_chunks(std::size_t n, const ScanOptions& options, Body body) {
    const std::size_t workers =
        std::max<std::size_t>(1, std::min<std::size_t>(resolve_threads(options.threads), n));
    std::vector<Result> results(workers);
    if (workers == 1) {
        results[0] = body(std::size_t{0}, n);
        return results;
    }

    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t step = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = std::min(n, w * step);
        const std::size_t end = std::min(n, begin + step);
        pool.emplace_back([&, w, begin, end] {
            try {
                results[w] = body(begin, end);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return results;
}

}  // namespace proxima
