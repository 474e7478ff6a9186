#include "oracles.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace oracle {

std::vector<std::pair<std::uint64_t, std::uint32_t>> factor(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, std::uint32_t>> f;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            std::uint32_t e = 0;
            while (n % d == 0) {
                n /= d;
                ++e;
            }
            f.emplace_back(d, e);
        }
    }
    if (n > 1) f.emplace_back(n, 1);
    return f;
}

std::uint64_t phi(std::uint64_t n) {
    std::uint64_t r = 1;
    for (const auto& [p, e] : factor(n)) {
        r *= p - 1;
        for (std::uint32_t i = 1; i < e; ++i) r *= p;
    }
    return r;
}

std::uint64_t largest_prime_factor(std::uint64_t n) {
    const auto f = factor(n);
    return f.empty() ? 1 : f.back().first;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

bool is_smooth(std::uint64_t n, std::uint64_t y) {
    return largest_prime_factor(n) <= y || n == 1;
}

Counts brute_counts(std::uint64_t x, std::uint64_t y) {
    Counts c;
    for (std::uint64_t n = 1; n <= x; ++n) {
        if (is_smooth(phi(n), y)) ++c.phi_smooth;
        if (is_smooth(n, y)) ++c.smooth;
        if (is_prime(n) && is_smooth(n - 1, y)) ++c.shifted_prime_smooth;
    }
    return c;
}

std::vector<double> rho_rk4(double u_max, double step) {
    const double inv = 1.0 / step;
    const auto n1 = static_cast<std::size_t>(std::llround(inv));
    if (std::abs(n1 * step - 1.0) > 1e-12)
        throw std::invalid_argument("rho_rk4: step must divide 1 evenly");
    const auto n = static_cast<std::size_t>(std::llround(u_max * inv));

    std::vector<double> v(n + 1, 1.0);  // rho = 1 on [0,1]

    // derivative at a grid index (valid for u >= 1; zero before)
    const auto dv = [&](std::size_t j) -> double {
        if (j <= n1) return 0.0;
        return -v[j - n1] / (static_cast<double>(j) * step);
    };
    // history value at t or t + step/2 (t on grid)
    const auto hist = [&](double t) -> double {
        if (t <= 1.0) return 1.0;
        const double ft = t * inv;
        const auto j = static_cast<std::size_t>(std::floor(ft + 1e-9));
        if (std::abs(ft - static_cast<double>(j)) < 1e-6) return v[j];
        // cubic Hermite at the midpoint of [j, j+1]
        return 0.5 * (v[j] + v[j + 1]) + step * (dv(j) - dv(j + 1)) / 8.0;
    };

    for (std::size_t j = n1; j < n; ++j) {
        const double u = static_cast<double>(j) * step;
        // RHS is history-only, so RK4 collapses to Simpson on -rho(t-1)/t
        const double f0 = -hist(u - 1.0) / u;
        const double fm = -hist(u - 1.0 + step / 2) / (u + step / 2);
        const double f1 = -hist(u - 1.0 + step) / (u + step);
        v[j + 1] = v[j] + step / 6.0 * (f0 + 4.0 * fm + f1);
    }
    return v;
}

std::vector<double> sigma_simpson(double u_max, double step,
                                  const std::vector<double>& rho_grid) {
    const double inv = 1.0 / step;
    const auto n1 = static_cast<std::size_t>(std::llround(inv));
    if (std::abs(n1 * step - 1.0) > 1e-12)
        throw std::invalid_argument("sigma_simpson: step must divide 1 evenly");
    const auto n = static_cast<std::size_t>(std::llround(u_max * inv));
    if (rho_grid.size() < n + 1)
        throw std::invalid_argument("sigma_simpson: rho grid too short");

    std::vector<double> s(n + 1, 1.0);  // sigma = 1 on [0,1]

    // Simpson weights over m = 0..j; for odd j the last three panels use 3/8.
    const auto weight = [&](std::size_t m, std::size_t j) -> double {
        const bool odd = (j % 2) != 0;
        const std::size_t je = odd ? j - 3 : j;  // even-panel prefix
        double w = 0.0;
        if (m <= je) {
            if (m == 0 || m == je)
                w += step / 3.0;
            else
                w += (m % 2 != 0) ? 4.0 * step / 3.0 : 2.0 * step / 3.0;
        }
        if (odd && m >= je) {
            const std::size_t r = m - je;
            w += (r == 0 || r == 3) ? 3.0 * step / 8.0 : 9.0 * step / 8.0;
        }
        return w;
    };

    for (std::size_t j = n1 + 1; j <= n; ++j) {
        const double u = static_cast<double>(j) * step;
        double acc = 0.0;
#ifdef _OPENMP
#pragma omp parallel for reduction(+ : acc) schedule(static)
#endif
        for (std::size_t m = 1; m <= j; ++m) acc += weight(m, j) * rho_grid[m] * s[j - m];
        s[j] = acc / (u - weight(0, j) * rho_grid[0]);
    }
    return s;
}

}  // namespace oracle
