// Compares the serial reference path against the OpenMP kernels on the
// f(N,1) h-sum.  Run: bench_kernels [N_lo N_hi]
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ceresa/volume.hpp"

using Clock = std::chrono::steady_clock;

static double time_scan(std::int64_t lo, std::int64_t hi, int threads,
                        bool serial, double* checksum) {
    ceresa::volume::EvalOptions opts;
    opts.threads = threads;
    double sum = 0.0;
    const auto t0 = Clock::now();
    for (std::int64_t n = lo; n <= hi; ++n) {
        const auto fv = serial ? ceresa::volume::f_value_serial(n, 1, opts)
                               : ceresa::volume::f_value(n, 1, opts);
        sum += fv.frac_distance;
    }
    *checksum = sum;
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

int main(int argc, char** argv) {
    std::int64_t lo = 5, hi = 120;
    if (argc == 3) {
        lo = std::atoll(argv[1]);
        hi = std::atoll(argv[2]);
    }
#ifdef _OPENMP
    const int hw = omp_get_max_threads();
#else
    const int hw = 1;
#endif
    double ref_sum = 0.0, par_sum = 0.0;
    const double t_serial = time_scan(lo, hi, 1, true, &ref_sum);
    const double t_parallel = time_scan(lo, hi, hw, false, &par_sum);
    std::printf("f(N,1) scan, N in [%lld, %lld]\n", (long long)lo, (long long)hi);
    std::printf("  serial reference : %8.3f s\n", t_serial);
    std::printf("  OpenMP (%2d thr)  : %8.3f s   speedup %.2fx\n", hw, t_parallel,
                t_serial / t_parallel);
    if (ref_sum != par_sum) {
        std::printf("  MISMATCH: serial and parallel results differ\n");
        return 1;
    }
    std::printf("  results bit-identical across paths\n");
    return 0;
}
