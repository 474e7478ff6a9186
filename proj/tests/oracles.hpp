#pragma once

// Test-only oracles. Everything here is deliberately naive and independent of
// the library's sieve and solver code paths.

#include <cstdint>
#include <utility>
#include <vector>

namespace oracle {

std::vector<std::pair<std::uint64_t, std::uint32_t>> factor(std::uint64_t n);
std::uint64_t phi(std::uint64_t n);
std::uint64_t largest_prime_factor(std::uint64_t n);  // P(1) = 1
bool is_prime(std::uint64_t n);
bool is_smooth(std::uint64_t n, std::uint64_t y);

struct Counts {
    std::int64_t phi_smooth = 0;
    std::int64_t smooth = 0;
    std::int64_t shifted_prime_smooth = 0;
};
Counts brute_counts(std::uint64_t x, std::uint64_t y);

// Dickman rho by classical RK4 on u rho'(u) = -rho(u-1), method of steps with
// cubic-Hermite history lookups at half-steps. step must divide 1 evenly.
// Returns values on the grid 0, h, 2h, ..., u_max.
std::vector<double> rho_rk4(double u_max, double step);

// Lamzouri sigma by a Simpson-weighted forward Volterra solve of
// u sigma(u) = integral_0^u sigma(u-t) rho(t) dt, sigma = 1 on [0,1].
// rho_grid must hold rho on the same grid (e.g. from rho_rk4).
std::vector<double> sigma_simpson(double u_max, double step, const std::vector<double>& rho_grid);

}  // namespace oracle
