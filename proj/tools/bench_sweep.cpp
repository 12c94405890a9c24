// Benchmark: the OpenMP chunked family sweep against the serial reference,
// checking that the exact results agree bit for bit.
#include <chrono>
#include <cstdio>
#include <string>

#include "eclab/experiments.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using Clock = std::chrono::steady_clock;

static double timed(bool parallel, int k, int q, int n, eclab::experiments::MomentResult& out) {
    auto t0 = Clock::now();
    out = eclab::experiments::empirical_moment(k, q, n, parallel);
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

int main(int argc, char** argv) {
    int q = 4, n = 4, k = 1;
    for (int a = 1; a + 1 < argc; a += 2) {
        std::string f = argv[a];
        int v = std::atoi(argv[a + 1]);
        if (f == "--q") q = v;
        else if (f == "--n") n = v;
        else if (f == "--k") k = v;
        else {
            std::fprintf(stderr, "usage: eclab_bench [--q Q] [--n N] [--k K]\n");
            return 2;
        }
    }
#ifdef _OPENMP
    int threads = omp_get_max_threads();
#else
    int threads = 1;
#endif
    std::printf("moment sweep k=%d over I_n, q=%d, n=%d (%d threads)\n", k, q, n, threads);
    eclab::experiments::MomentResult serial_r, parallel_r;
    double ts = timed(false, k, q, n, serial_r);
    double tp = timed(true, k, q, n, parallel_r);
    bool same = serial_r.exact == parallel_r.exact;
    std::printf("serial reference: %8.3f s   value %.12g\n", ts, serial_r.value);
    std::printf("chunked parallel: %8.3f s   value %.12g\n", tp, parallel_r.value);
    std::printf("speedup %.2fx, exact sums %s\n", ts / tp, same ? "identical" : "DIFFER");
    return same ? 0 : 1;
}
