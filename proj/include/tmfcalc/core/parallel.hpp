#ifndef TMFCALC_CORE_PARALLEL_HPP
#define TMFCALC_CORE_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace tmfcalc
{

namespace detail
{

inline std::atomic<unsigned> &thread_count_storage()
{
    static std::atomic<unsigned> n{1};
    return n;
}

} // namespace detail

// Number of worker threads used by the parallel kernels. Results never depend on it.
inline unsigned thread_count()
{
    return detail::thread_count_storage().load(std::memory_order_relaxed);
}

inline void set_thread_count(unsigned n)
{
    detail::thread_count_storage().store(std::max(1u, n), std::memory_order_relaxed);
}

// Runs body(chunk_index, begin, end) over a static partition of [0, n).
// Chunk boundaries depend only on n and the thread count; callers combine
// per-chunk results in chunk order.
template <typename Body>
std::size_t parallel_chunks(std::size_t n, std::size_t min_chunk, Body &&body)
{
    const std::size_t workers = std::min<std::size_t>(thread_count(), std::max<std::size_t>(1, n / std::max<std::size_t>(1, min_chunk)));
    if (workers <= 1) {
        body(std::size_t(0), std::size_t(0), n);
        return 1;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    const std::size_t step = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t b = std::min(n, w * step), e = std::min(n, b + step);
        pool.emplace_back([&, w, b, e] {
            try {
                body(w, b, e);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto &t : pool) {
        t.join();
    }
    for (auto &err : errors) {
        if (err) {
            std::rethrow_exception(err);
        }
    }
    return workers;
}

// Chunk count parallel_chunks will use for n items.
inline std::size_t chunk_count(std::size_t n, std::size_t min_chunk)
{
    return std::min<std::size_t>(thread_count(), std::max<std::size_t>(1, n / std::max<std::size_t>(1, min_chunk)));
}

} // namespace tmfcalc

#endif
