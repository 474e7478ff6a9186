#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "smoothphi/spf_table.hpp"

namespace smoothphi {

enum class CountKind { phi_smooth, smooth, shifted_prime_smooth };

const char* to_string(CountKind k);

// Per-integer prefix counts are kept up to this limit; larger series store
// exact counts at segment-aligned checkpoints only.
inline constexpr std::uint64_t kDensePrefixLimit = 1'000'000;

struct CountOptions {
    int threads = 0;                        // 0 = OpenMP default
    std::uint64_t segment = std::uint64_t{1} << 18;
};

// Exact cumulative counts of one population over [1, limit].
// Nonnegative, nondecreasing in t, and count_at(t) <= t always.
struct CountSeries {
    CountKind kind = CountKind::phi_smooth;
    std::uint64_t y = 2;
    std::uint64_t limit = 0;

    std::vector<std::int64_t> cum;  // dense mode: cum[t], size limit+1
    std::vector<std::pair<std::uint64_t, std::int64_t>> checkpoints;  // sparse mode

    bool dense() const { return !cum.empty(); }

    // Exact count at threshold t. Dense mode answers any t <= limit; sparse
    // mode answers stored checkpoints (always including t = limit) and throws
    // std::out_of_range otherwise -- re-run the counting op for other t.
    std::int64_t count_at(std::uint64_t t) const;

    // Dense mode only: whether n itself is counted.
    bool contains(std::uint64_t n) const;

    // CSV with header "t,count", LF line endings.
    void write_csv(std::ostream& os) const;
};

// Exact Phi(x,y): n <= x with phi(n) y-smooth. Requires x <= t.limit, y >= 2.
CountSeries count_phi_smooth(std::uint64_t x, std::uint64_t y, const SpfTable& t,
                             const CountOptions& opts = {});

// Exact psi(x,y): y-smooth n <= x.
CountSeries count_smooth(std::uint64_t x, std::uint64_t y, const SpfTable& t,
                         const CountOptions& opts = {});

// Exact psi_pi(x,y): primes p <= x with p-1 y-smooth (p = 2 always counts).
CountSeries count_shifted_prime_smooth(std::uint64_t x, std::uint64_t y, const SpfTable& t,
                                       const CountOptions& opts = {});

struct AllCounts {
    CountSeries phi_smooth;
    CountSeries smooth;
    CountSeries shifted_prime_smooth;
};

// All three populations from a single pass.
AllCounts count_all(std::uint64_t x, std::uint64_t y, const SpfTable& t,
                    const CountOptions& opts = {});

struct TripleCounts {
    std::int64_t phi_smooth = 0;
    std::int64_t smooth = 0;
    std::int64_t shifted_prime_smooth = 0;
    bool operator==(const TripleCounts&) const = default;
};

// Serial reference: per-n table walks, no segment machinery. Kept for testing
// and as the baseline in the kernel benchmark.
TripleCounts reference_counts(std::uint64_t x, std::uint64_t y, const SpfTable& t);

// Counts for x beyond the dense-table budget. Factorizations are re-derived
// per segment from primes <= sqrt(x); only small tables are built. Requires
// y <= max(sqrt(x), 2) unless y >= x (then everything is smooth).
TripleCounts segmented_counts(std::uint64_t x, std::uint64_t y, const CountOptions& opts = {});

}  // namespace smoothphi
