#pragma once

#include <cstdint>
#include <vector>

namespace smoothphi {

// Dense smallest-prime-factor table for 2 <= n <= limit.
// spf[n] is prime, divides n, and spf[p] == p exactly for primes.
// Immutable after construction and safe to share across threads.
struct SpfTable {
    std::uint64_t limit = 0;
    std::vector<std::uint32_t> spf;  // index 0 and 1 unused (0)

    std::uint32_t operator[](std::uint64_t n) const { return spf[n]; }
    bool is_prime(std::uint64_t n) const { return n >= 2 && spf[n] == n; }
};

struct PrimePower {
    std::uint64_t prime;
    std::uint32_t exponent;
    bool operator==(const PrimePower&) const = default;
};

// Ordered factorization, primes strictly increasing. Empty for n = 1.
struct Factorization {
    std::vector<PrimePower> factors;

    std::uint64_t value() const;  // product of prime powers
};

// Default capacity cap: 2^31 entries (configurable per call).
inline constexpr std::uint64_t kDefaultSpfCap = std::uint64_t{1} << 31;

// Throws std::domain_error for limit < 2, std::length_error beyond the cap.
SpfTable build_spf_table(std::uint64_t limit, std::uint64_t cap = kDefaultSpfCap);

// All of these require 1 <= n <= t.limit and throw std::out_of_range otherwise.
Factorization factorize(std::uint64_t n, const SpfTable& t);
std::uint64_t euler_phi(std::uint64_t n, const SpfTable& t);
std::uint64_t largest_prime_factor(std::uint64_t n, const SpfTable& t);  // P(1) = 1
double von_mangoldt(std::uint64_t d, const SpfTable& t);                 // log p for prime powers, else 0

// True iff every prime factor of n is <= y. n = 1 is smooth for any y.
bool is_smooth(std::uint64_t n, std::uint64_t y, const SpfTable& t);

// Primes in [2, limit], via a plain sieve (no SpfTable needed).
std::vector<std::uint32_t> primes_up_to(std::uint64_t limit);

}  // namespace smoothphi
