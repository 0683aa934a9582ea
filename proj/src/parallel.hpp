#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace topomodal::detail
{

/// Runs fn(i) for i in [0, count) on up to `jobs` threads. Callers write
/// results into per-index slots so output order never depends on scheduling.
template < class Fn >
void parallel_for(std::size_t count, unsigned jobs, Fn&& fn)
{
    if (jobs <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::atomic< std::size_t > next{ 0 };
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector< std::jthread > workers;
        const unsigned n = static_cast< unsigned >(std::min< std::size_t >(jobs, count));
        for (unsigned w = 0; w < n; ++w) {
            workers.emplace_back([&] {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= count)
                        return;
                    try {
                        fn(i);
                    } catch (...) {
                        std::lock_guard lock{ failure_mutex };
                        if (!failure)
                            failure = std::current_exception();
                        next.store(count);
                        return;
                    }
                }
            });
        }
    }
    if (failure)
        std::rethrow_exception(failure);
}

} // namespace topomodal::detail
