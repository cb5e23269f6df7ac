#ifndef MGC_PARALLEL_HPP
#define MGC_PARALLEL_HPP

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mgc {

/// Execution lane for the data-parallel verification kernels. Every kernel
/// has a serial reference path; OpenMP only changes how the index space is
/// walked, never the result. Tests assert Serial == OpenMP bitwise.
enum class Exec { Serial, OpenMP };

inline int thread_count() {
#ifdef _OPENMP
    int n = 1;
#pragma omp parallel
    {
#pragma omp single
        n = omp_get_num_threads();
    }
    return n;
#else
    return 1;
#endif
}

/// Run body(i) for i in [0, n). Bodies must write only to their own slot of
/// any shared output.
template <typename Body>
void for_each_index(std::size_t n, Exec mode, Body&& body) {
    if (mode == Exec::Serial) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(n); ++i)
        body(static_cast<std::size_t>(i));
#else
    for (std::size_t i = 0; i < n; ++i) body(i);
#endif
}

} // namespace mgc

#endif
