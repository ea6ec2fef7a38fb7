#pragma once

#include <cstddef>
#include <cstdlib>
#include <string>

#ifdef INTEGRALIS_HAVE_OPENMP
#include <omp.h>
#endif

namespace integralis {

enum class Exec { Serial, Parallel };

inline int maxThreads() {
    if (const char* env = std::getenv("INTEGRALIS_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
#ifdef INTEGRALIS_HAVE_OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

// Serial reference loop. The parallel kernels below must produce identical
// results; tests compare the two paths.
template <class F>
inline void serialFor(std::size_t n, F&& body) {
    for (std::size_t i = 0; i < n; ++i) body(i);
}

// Data-parallel map over independent cells. Bodies write into disjoint
// preallocated slots, so scheduling order never affects the result.
template <class F>
inline void parallelFor(std::size_t n, F&& body, Exec policy = Exec::Parallel) {
    if (policy == Exec::Serial || n <= 1) {
        serialFor(n, body);
        return;
    }
#ifdef INTEGRALIS_HAVE_OPENMP
    const int nt = maxThreads();
    if (nt <= 1) {
        serialFor(n, body);
        return;
    }
#pragma omp parallel for schedule(dynamic) num_threads(nt)
    for (long long i = 0; i < static_cast<long long>(n); ++i) body(static_cast<std::size_t>(i));
#else
    serialFor(n, body);
#endif
}

} // namespace integralis
