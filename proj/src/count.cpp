#include "smoothphi/count.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "segment_pass.hpp"

namespace smoothphi {

namespace {

void check_count_args(std::uint64_t x, std::uint64_t y, const SpfTable& t, const char* what) {
    if (y < 2) throw std::domain_error(std::string(what) + ": y must be >= 2");
    if (x < 1 || x > t.limit)
        throw std::out_of_range(std::string(what) + ": x=" + std::to_string(x) +
                                " outside [1, " + std::to_string(t.limit) + "]");
}

bool member(CountKind kind, std::uint64_t n, std::uint64_t phi_n, bool n_smooth,
            std::uint64_t y, const SpfTable& t) {
    switch (kind) {
        case CountKind::phi_smooth:
            return is_smooth(phi_n, y, t);
        case CountKind::smooth:
            return n_smooth;
        case CountKind::shifted_prime_smooth:
            // n prime <=> phi(n) == n-1; then p-1 = phi(n)
            return n >= 2 && phi_n == n - 1 && is_smooth(phi_n, y, t);
    }
    return false;
}

// One pass over [1,x]; fills every requested series (null = skip).
void run_counts(std::uint64_t x, std::uint64_t y, const SpfTable& t, const CountOptions& opts,
                CountSeries* phi_out, CountSeries* smooth_out, CountSeries* shifted_out) {
    const bool dense = x <= kDensePrefixLimit;

    struct Slot {
        CountKind kind;
        CountSeries* out;
        std::vector<std::uint8_t> member_bits;        // dense
        std::vector<std::int64_t> seg_counts;         // sparse
    };
    std::vector<Slot> slots;
    if (phi_out) slots.push_back({CountKind::phi_smooth, phi_out, {}, {}});
    if (smooth_out) slots.push_back({CountKind::smooth, smooth_out, {}, {}});
    if (shifted_out) slots.push_back({CountKind::shifted_prime_smooth, shifted_out, {}, {}});

    const std::uint64_t seg = std::max<std::uint64_t>(opts.segment, 64);
    const std::size_t nseg = static_cast<std::size_t>((x - 1) / seg + 1);
    for (auto& sl : slots) {
        if (dense)
            sl.member_bits.assign(x + 1, 0);
        else
            sl.seg_counts.assign(nseg, 0);
    }

    const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(x)));
    const auto small = primes_up_to(root);

    detail::segment_pass(x, y, small, opts, [&](std::size_t s, const detail::SegData& sd) {
        for (auto& sl : slots) {
            std::int64_t c = 0;
            for (std::size_t i = 0; i < sd.len; ++i) {
                const std::uint64_t n = sd.lo + i;
                if (member(sl.kind, n, sd.phi[i], sd.n_smooth[i] != 0, y, t)) {
                    if (dense)
                        sl.member_bits[n] = 1;
                    else
                        ++c;
                }
            }
            if (!dense) sl.seg_counts[s] = c;
        }
    });

    for (auto& sl : slots) {
        CountSeries& cs = *sl.out;
        cs.kind = sl.kind;
        cs.y = y;
        cs.limit = x;
        if (dense) {
            cs.cum.assign(x + 1, 0);
            for (std::uint64_t n = 1; n <= x; ++n)
                cs.cum[n] = cs.cum[n - 1] + sl.member_bits[n];
        } else {
            cs.checkpoints.clear();
            cs.checkpoints.reserve(nseg);
            std::int64_t running = 0;
            for (std::size_t s = 0; s < nseg; ++s) {
                running += sl.seg_counts[s];
                const std::uint64_t end = std::min(x, (static_cast<std::uint64_t>(s) + 1) * seg);
                cs.checkpoints.emplace_back(end, running);
            }
        }
    }
}

}  // namespace

const char* to_string(CountKind k) {
    switch (k) {
        case CountKind::phi_smooth: return "phi_smooth";
        case CountKind::smooth: return "smooth";
        case CountKind::shifted_prime_smooth: return "shifted_prime_smooth";
    }
    return "?";
}

std::int64_t CountSeries::count_at(std::uint64_t t) const {
    if (t > limit)
        throw std::out_of_range("CountSeries::count_at: t=" + std::to_string(t) +
                                " beyond limit " + std::to_string(limit));
    if (dense()) return cum[t];
    auto it = std::lower_bound(checkpoints.begin(), checkpoints.end(),
                               std::make_pair(t, std::int64_t{0}),
                               [](const auto& a, const auto& b) { return a.first < b.first; });
    if (it != checkpoints.end() && it->first == t) return it->second;
    throw std::out_of_range("CountSeries::count_at: t=" + std::to_string(t) +
                            " not a stored checkpoint; re-run the count for this threshold");
}

bool CountSeries::contains(std::uint64_t n) const {
    if (!dense()) throw std::logic_error("CountSeries::contains requires a dense series");
    if (n < 1 || n > limit) return false;
    return cum[n] > cum[n - 1];
}

void CountSeries::write_csv(std::ostream& os) const {
    os << "t,count\n";
    if (dense()) {
        for (std::uint64_t t = 1; t <= limit; ++t) os << t << ',' << cum[t] << '\n';
    } else {
        for (const auto& [t, c] : checkpoints) os << t << ',' << c << '\n';
    }
}

CountSeries count_phi_smooth(std::uint64_t x, std::uint64_t y, const SpfTable& t,
                             const CountOptions& opts) {
    check_count_args(x, y, t, "count_phi_smooth");
    CountSeries cs;
    run_counts(x, y, t, opts, &cs, nullptr, nullptr);
    return cs;
}

CountSeries count_smooth(std::uint64_t x, std::uint64_t y, const SpfTable& t,
                         const CountOptions& opts) {
    check_count_args(x, y, t, "count_smooth");
    CountSeries cs;
    run_counts(x, y, t, opts, nullptr, &cs, nullptr);
    return cs;
}

CountSeries count_shifted_prime_smooth(std::uint64_t x, std::uint64_t y, const SpfTable& t,
                                       const CountOptions& opts) {
    check_count_args(x, y, t, "count_shifted_prime_smooth");
    CountSeries cs;
    run_counts(x, y, t, opts, nullptr, nullptr, &cs);
    return cs;
}

AllCounts count_all(std::uint64_t x, std::uint64_t y, const SpfTable& t, const CountOptions& opts) {
    check_count_args(x, y, t, "count_all");
    AllCounts a;
    run_counts(x, y, t, opts, &a.phi_smooth, &a.smooth, &a.shifted_prime_smooth);
    return a;
}

TripleCounts reference_counts(std::uint64_t x, std::uint64_t y, const SpfTable& t) {
    check_count_args(x, y, t, "reference_counts");
    TripleCounts c;
    for (std::uint64_t n = 1; n <= x; ++n) {
        const std::uint64_t phi = euler_phi(n, t);
        if (is_smooth(phi, y, t)) ++c.phi_smooth;
        if (is_smooth(n, y, t)) ++c.smooth;
        if (t.is_prime(n) && is_smooth(n - 1, y, t)) ++c.shifted_prime_smooth;
    }
    return c;
}

TripleCounts segmented_counts(std::uint64_t x, std::uint64_t y, const CountOptions& opts) {
    if (y < 2) throw std::domain_error("segmented_counts: y must be >= 2");
    if (x < 1) throw std::domain_error("segmented_counts: x must be >= 1");

    const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(x)));
    if (y > std::max<std::uint64_t>(root, 2) && y < x)
        throw std::invalid_argument("segmented_counts: y must be <= sqrt(x) (or >= x)");
    const std::uint64_t small_limit = std::max<std::uint64_t>(root, 3);
    const SpfTable small_tbl = build_spf_table(small_limit);
    const auto small = primes_up_to(root);

    // shifted_smooth[p] = 1 iff p-1 is y-smooth, for primes p <= small_limit
    std::vector<std::uint8_t> shifted_smooth(small_limit + 1, 0);
    for (std::uint64_t p = 2; p <= small_limit; ++p)
        if (small_tbl.is_prime(p)) shifted_smooth[p] = is_smooth(p - 1, y, small_tbl) ? 1 : 0;

    std::vector<std::uint32_t> div_primes;  // trial divisors for residual p-1 tests
    for (std::uint32_t p : primes_up_to(std::min<std::uint64_t>(y, small_limit)))
        div_primes.push_back(p);

    const auto residual_shift_smooth = [&](std::uint64_t r) {
        if (y >= x) return true;  // r - 1 < x <= y
        std::uint64_t m = r - 1;
        for (std::uint32_t q : div_primes) {
            while (m % q == 0) m /= q;
            if (m == 1) break;
        }
        return m == 1;
    };

    // Re-run a private pass that also tracks phi-smoothness incrementally,
    // since phi(n) can exceed every table built here.
    const std::uint64_t seg = std::max<std::uint64_t>(opts.segment, 64);
    const std::size_t nseg = static_cast<std::size_t>((x - 1) / seg + 1);
    std::vector<TripleCounts> per_seg(nseg);

#ifdef _OPENMP
    const int nthreads = opts.threads > 0 ? opts.threads : omp_get_max_threads();
#pragma omp parallel num_threads(nthreads)
#endif
    {
        std::vector<std::uint64_t> rem;
        std::vector<std::uint8_t> n_sm, phi_sm;
#ifdef _OPENMP
#pragma omp for schedule(dynamic)
#endif
        for (std::int64_t s = 0; s < static_cast<std::int64_t>(nseg); ++s) {
            const std::uint64_t lo = static_cast<std::uint64_t>(s) * seg + 1;
            const std::uint64_t hi = std::min(x, lo + seg - 1);
            const std::size_t len = static_cast<std::size_t>(hi - lo + 1);
            rem.assign(len, 0);
            n_sm.assign(len, 1);
            phi_sm.assign(len, 1);
            for (std::size_t i = 0; i < len; ++i) rem[i] = lo + i;

            for (std::uint32_t p : small) {
                const std::uint64_t pp = p;
                if (pp > hi) break;
                const bool big = pp > y;
                const bool p_shift_ok = shifted_smooth[pp] != 0;
                for (std::uint64_t m = std::max(pp, (lo + pp - 1) / pp * pp); m <= hi; m += pp) {
                    const std::size_t i = static_cast<std::size_t>(m - lo);
                    std::uint64_t r = rem[i] / pp;
                    std::uint32_t e = 1;
                    while (r % pp == 0) {
                        r /= pp;
                        ++e;
                    }
                    rem[i] = r;
                    if (big) n_sm[i] = 0;
                    if (!p_shift_ok || (e >= 2 && big)) phi_sm[i] = 0;
                }
            }

            TripleCounts c;
            for (std::size_t i = 0; i < len; ++i) {
                const std::uint64_t n = lo + i;
                const std::uint64_t r = rem[i];
                bool nsm = n_sm[i] != 0;
                bool psm = phi_sm[i] != 0;
                // untouched by every prime <= sqrt(x), or a small prime itself
                bool prime = (n >= 2) &&
                             (r == n || (n <= small_limit && small_tbl.is_prime(n)));
                if (r > 1) {
                    // residual prime factor (exponent 1); r == n when n is prime
                    if (r > y) nsm = false;
                    if (psm && !residual_shift_smooth(r)) psm = false;
                }
                if (psm) ++c.phi_smooth;
                if (nsm) ++c.smooth;
                if (prime && psm) ++c.shifted_prime_smooth;
            }
            per_seg[static_cast<std::size_t>(s)] = c;
        }
    }

    TripleCounts total;
    for (const auto& c : per_seg) {
        total.phi_smooth += c.phi_smooth;
        total.smooth += c.smooth;
        total.shifted_prime_smooth += c.shifted_prime_smooth;
    }
    return total;
}

}  // namespace smoothphi
