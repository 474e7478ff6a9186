// Compares the serial reference against the segment-parallel counting kernel
// and reports the table-build cost. Usage: bench_count [x [y]]

#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "smoothphi/count.hpp"
#include "smoothphi/spf_table.hpp"

using namespace smoothphi;
using clk = std::chrono::steady_clock;

static double secs(clk::time_point a, clk::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

int main(int argc, char** argv) {
    std::uint64_t x = 10'000'000;
    std::uint64_t y = 100;
    if (argc > 1) x = std::strtoull(argv[1], nullptr, 10);
    if (argc > 2) y = std::strtoull(argv[2], nullptr, 10);

    std::printf("x=%" PRIu64 " y=%" PRIu64 "\n", x, y);

    auto t0 = clk::now();
    const SpfTable tbl = build_spf_table(x);
    auto t1 = clk::now();
    std::printf("spf table build          %8.3f s\n", secs(t0, t1));

    t0 = clk::now();
    const TripleCounts ref = reference_counts(x, y, tbl);
    t1 = clk::now();
    const double serial = secs(t0, t1);
    std::printf("serial reference         %8.3f s\n", serial);

    int max_threads = 1;
#ifdef _OPENMP
    max_threads = omp_get_max_threads();
#endif
    for (int threads = 1; threads <= max_threads; threads *= 2) {
        CountOptions opts;
        opts.threads = threads;
        t0 = clk::now();
        const AllCounts a = count_all(x, y, tbl, opts);
        t1 = clk::now();
        const double par = secs(t0, t1);
        const bool ok = a.phi_smooth.count_at(x) == ref.phi_smooth &&
                        a.smooth.count_at(x) == ref.smooth &&
                        a.shifted_prime_smooth.count_at(x) == ref.shifted_prime_smooth;
        std::printf("parallel kernel (%2d thr) %8.3f s  speedup %5.2fx  %s\n", threads, par,
                    serial / par, ok ? "counts match" : "MISMATCH");
        if (!ok) return 1;
    }

    std::printf("phi_smooth=%" PRId64 " smooth=%" PRId64 " shifted_prime_smooth=%" PRId64 "\n",
                ref.phi_smooth, ref.smooth, ref.shifted_prime_smooth);
    return 0;
}
