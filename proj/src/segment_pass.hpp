#pragma once

// Internal segmented multiplicative pass shared by the counting kernels and
// the Rankin product accumulator. Not installed.

#include <algorithm>
#include <cstdint>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "smoothphi/count.hpp"

namespace smoothphi::detail {

// Per-segment view of the pass results for n in [lo, lo+len).
// phi[i] = euler phi of lo+i, built multiplicatively from the prime list;
// n_smooth[i] = 1 iff lo+i is y-smooth. lo+i is prime iff phi[i] == lo+i-1.
struct SegData {
    std::uint64_t lo = 0;
    std::size_t len = 0;
    const std::uint64_t* phi = nullptr;
    const std::uint8_t* n_smooth = nullptr;
};

// Runs the pass over [1, x] in fixed-size segments, calling
// f(segment_index, SegData) for each. Segments are processed in parallel;
// f must only touch per-segment state. small_primes must cover sqrt(x).
template <class F>
void segment_pass(std::uint64_t x, std::uint64_t y,
                  const std::vector<std::uint32_t>& small_primes,
                  const CountOptions& opts, F&& f) {
    const std::uint64_t seg = std::max<std::uint64_t>(opts.segment, 64);
    const std::int64_t nseg = static_cast<std::int64_t>((x - 1) / seg + 1);

#ifdef _OPENMP
    const int nthreads = opts.threads > 0 ? opts.threads : omp_get_max_threads();
#pragma omp parallel num_threads(nthreads)
#endif
    {
        std::vector<std::uint64_t> rem, phi;
        std::vector<std::uint8_t> smooth;
#ifdef _OPENMP
#pragma omp for schedule(dynamic)
#endif
        for (std::int64_t s = 0; s < nseg; ++s) {
            const std::uint64_t lo = static_cast<std::uint64_t>(s) * seg + 1;
            const std::uint64_t hi = std::min(x, lo + seg - 1);  // inclusive
            const std::size_t len = static_cast<std::size_t>(hi - lo + 1);
            rem.assign(len, 0);
            phi.assign(len, 1);
            smooth.assign(len, 1);
            for (std::size_t i = 0; i < len; ++i) rem[i] = lo + i;

            for (std::uint32_t p : small_primes) {
                const std::uint64_t pp = p;
                if (pp > hi) break;
                std::uint64_t m = std::max(pp, (lo + pp - 1) / pp * pp);
                const bool big = pp > y;
                for (; m <= hi; m += pp) {
                    const std::size_t i = static_cast<std::size_t>(m - lo);
                    std::uint64_t r = rem[i] / pp;
                    std::uint64_t ph = pp - 1;
                    while (r % pp == 0) {
                        r /= pp;
                        ph *= pp;
                    }
                    rem[i] = r;
                    phi[i] *= ph;
                    if (big) smooth[i] = 0;
                }
            }
            for (std::size_t i = 0; i < len; ++i) {
                const std::uint64_t r = rem[i];
                if (r > 1) {
                    phi[i] *= r - 1;  // residual is prime (> sqrt(x))
                    if (r > y) smooth[i] = 0;
                }
            }

            f(static_cast<std::size_t>(s), SegData{lo, len, phi.data(), smooth.data()});
        }
    }
}

}  // namespace smoothphi::detail
