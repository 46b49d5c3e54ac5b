// Chunked parallel execution helper. Work is split into one contiguous
// range per worker; callers merge per-worker results in worker order, so
// the outcome never depends on the worker count.

#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace rtl {

inline unsigned resolve_workers(unsigned requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

/// Runs fn(worker_index, begin, end) over a partition of [0, total).
/// Exceptions thrown by workers are rethrown (first one wins).
template <class Fn>
void parallel_chunks(std::uint64_t total, unsigned workers, Fn&& fn) {
    workers = resolve_workers(workers);
    if (total > 0 && static_cast<std::uint64_t>(workers) > total)
        workers = static_cast<unsigned>(total);
    if (workers <= 1 || total == 0) {
        fn(0u, std::uint64_t{0}, total);
        return;
    }

    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> threads;
    threads.reserve(workers);
    const std::uint64_t base = total / workers;
    const std::uint64_t rem = total % workers;
    std::uint64_t begin = 0;
    for (unsigned w = 0; w < workers; ++w) {
        const std::uint64_t len = base + (w < rem ? 1 : 0);
        const std::uint64_t end = begin + len;
        threads.emplace_back([&fn, &errors, w, begin, end] {
            try {
                fn(w, begin, end);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
        begin = end;
    }
    for (std::thread& t : threads) t.join();
    for (const std::exception_ptr& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace rtl
