#include "smoothphi/spf_table.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace smoothphi {

namespace {

void check_range(std::uint64_t n, const SpfTable& t, const char* what) {
    if (n < 1 || n > t.limit)
        throw std::out_of_range(std::string(what) + ": n=" + std::to_string(n) +
                                " outside [1, " + std::to_string(t.limit) + "]");
}

}  // namespace

std::uint64_t Factorization::value() const {
    std::uint64_t v = 1;
    for (const auto& pp : factors)
        for (std::uint32_t i = 0; i < pp.exponent; ++i) v *= pp.prime;
    return v;
}

std::vector<std::uint32_t> primes_up_to(std::uint64_t limit) {
    std::vector<std::uint32_t> primes;
    if (limit < 2) return primes;
    std::vector<char> composite(limit + 1, 0);
    for (std::uint64_t i = 2; i * i <= limit; ++i)
        if (!composite[i])
            for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = 1;
    for (std::uint64_t i = 2; i <= limit; ++i)
        if (!composite[i]) primes.push_back(static_cast<std::uint32_t>(i));
    return primes;
}

SpfTable build_spf_table(std::uint64_t limit, std::uint64_t cap) {
    if (limit < 2) throw std::domain_error("build_spf_table: limit must be >= 2");
    if (limit > cap)
        throw std::length_error("build_spf_table: limit " + std::to_string(limit) +
                                " exceeds capacity cap " + std::to_string(cap));

    SpfTable t;
    t.limit = limit;
    t.spf.assign(limit + 1, 0);

    const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(limit)));
    const std::vector<std::uint32_t> small = primes_up_to(root);

    // Segments are marked independently; within a segment primes are applied in
    // ascending order so the first mark is always the smallest factor.
    const std::uint64_t seg = std::uint64_t{1} << 18;
    const std::int64_t nseg = static_cast<std::int64_t>((limit - 1) / seg + 1);

#pragma omp parallel for schedule(dynamic)
    for (std::int64_t s = 0; s < nseg; ++s) {
        const std::uint64_t lo = std::max<std::uint64_t>(2, static_cast<std::uint64_t>(s) * seg);
        const std::uint64_t hi = std::min(limit, (static_cast<std::uint64_t>(s) + 1) * seg - 1);
        for (std::uint32_t p : small) {
            const std::uint64_t p2 = std::uint64_t{p} * p;
            if (p2 > hi) break;
            std::uint64_t start = std::max(p2, (lo + p - 1) / p * p);
            for (std::uint64_t m = start; m <= hi; m += p)
                if (t.spf[m] == 0) t.spf[m] = p;
        }
        for (std::uint64_t n = lo; n <= hi; ++n)
            if (t.spf[n] == 0) t.spf[n] = static_cast<std::uint32_t>(n);
    }
    return t;
}

Factorization factorize(std::uint64_t n, const SpfTable& t) {
    check_range(n, t, "factorize");
    Factorization f;
    std::uint64_t m = n;
    while (m > 1) {
        const std::uint64_t p = t.spf[m];
        std::uint32_t e = 0;
        do {
            m /= p;
            ++e;
        } while (m % p == 0);
        f.factors.push_back({p, e});
    }
    return f;
}

std::uint64_t euler_phi(std::uint64_t n, const SpfTable& t) {
    check_range(n, t, "euler_phi");
    std::uint64_t m = n, phi = 1;
    while (m > 1) {
        const std::uint64_t p = t.spf[m];
        m /= p;
        phi *= p - 1;
        while (m % p == 0) {
            m /= p;
            phi *= p;
        }
    }
    return phi;
}

std::uint64_t largest_prime_factor(std::uint64_t n, const SpfTable& t) {
    check_range(n, t, "largest_prime_factor");
    std::uint64_t m = n, p = 1;
    while (m > 1) {
        p = t.spf[m];
        do m /= p;
        while (m % p == 0);
    }
    return p;
}

double von_mangoldt(std::uint64_t d, const SpfTable& t) {
    check_range(d, t, "von_mangoldt");
    if (d < 2) return 0.0;
    const std::uint64_t p = t.spf[d];
    std::uint64_t m = d;
    while (m % p == 0) m /= p;
    return m == 1 ? std::log(static_cast<double>(p)) : 0.0;
}

bool is_smooth(std::uint64_t n, std::uint64_t y, const SpfTable& t) {
    std::uint64_t m = n;
    if (y >= 2 && m > 0) m >>= std::countr_zero(m);  // strip 2s without table reads
    while (m > 1) {
        const std::uint64_t p = t.spf[m];
        if (p > y) return false;
        do m /= p;
        while (m % p == 0);
    }
    return true;
}

}  // namespace smoothphi
