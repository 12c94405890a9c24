#pragma once

#include <vector>

#include "eclab/family.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace eclab::experiments {

/// Data-parallel family sweep with a deterministic reduction: the member
/// list is cut into fixed-size chunks (independent of the worker count),
/// each chunk accumulates serially in index order, and the chunk partials
/// fold in chunk order.  Exact accumulators are order-free; floating
/// accumulators come out bit-identical for any number of threads.
///
/// MakeWorker yields a fresh callable per chunk (owning any scratch
/// buffers); the callable is invoked as worker(member, accumulator).
template <typename Acc, typename MakeWorker>
Acc chunked_sweep(const std::vector<family::Discriminant>& members, MakeWorker make_worker,
                  Acc init, int chunk_size = 1024) {
    const long long n = static_cast<long long>(members.size());
    if (n == 0) return init;
    const long long chunks = (n + chunk_size - 1) / chunk_size;
    std::vector<Acc> partial(static_cast<size_t>(chunks), init);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (long long c = 0; c < chunks; ++c) {
        auto worker = make_worker();
        Acc acc = init;
        const long long lo = c * chunk_size;
        const long long hi = std::min(n, lo + chunk_size);
        for (long long i = lo; i < hi; ++i) worker(members[static_cast<size_t>(i)], acc);
        partial[static_cast<size_t>(c)] = acc;
    }
    Acc total = init;
    for (long long c = 0; c < chunks; ++c) total += partial[static_cast<size_t>(c)];
    return total;
}

/// Serial reference: a plain left fold over the members in order.  Kept
/// for testing the parallel kernel and as the benchmark baseline.
template <typename Acc, typename MakeWorker>
Acc serial_sweep(const std::vector<family::Discriminant>& members, MakeWorker make_worker, Acc init) {
    auto worker = make_worker();
    Acc acc = init;
    for (const auto& u : members) worker(u, acc);
    return acc;
}

}  // namespace eclab::experiments
