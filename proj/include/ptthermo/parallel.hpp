#pragma once

#include <exception>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ptthermo::detail {

inline int resolve_threads(int requested)
{
    if (requested > 0)
        return requested;
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

/// Runs body(i) for i in [0, n) over OpenMP threads. The first exception
/// raised by any iteration is rethrown on the calling thread after the join.
template <typename Body>
void parallel_for(long n, int threads, Body&& body)
{
    std::exception_ptr failure;
    std::mutex guard;
    const int team = resolve_threads(threads);
#pragma omp parallel for schedule(static) num_threads(team) if (team > 1)
    for (long i = 0; i < n; ++i) {
        try {
            body(i);
        } catch (...) {
            const std::lock_guard<std::mutex> lock(guard);
            if (!failure)
                failure = std::current_exception();
        }
    }
    if (failure)
        std::rethrow_exception(failure);
}

} // namespace ptthermo::detail
