#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

namespace smoothphi {

inline constexpr double kDefaultGridStep = 0x1p-12;

// Dickman-de Bruijn rho on a uniform grid. rho = 1 on [0,1]; for u > 1 the
// builder integrates rho(u) = rho(v) - int_v^u rho(t-1)/t dt step by step,
// averaging the delayed factor over each step against the exact log weight.
// The delay lands exactly on grid points because step divides 1.
//
// values[] underflow to 0 for large u; log_values[] stay finite (the builder
// rescales internally), so consumers needing products use the log field.
struct RhoTable {
    double step = 0.0;
    double u_max = 0.0;
    std::vector<double> values;
    std::vector<double> log_values;

    std::size_t steps_per_unit() const;

    // Piecewise-linear interpolation; exact on grid points. u in [0, u_max].
    double value(double u) const;
    double log_value(double u) const;

    // CSV with header "u,value,log_value", LF line endings.
    void write_csv(std::ostream& os) const;
};

// step must be a power-of-two reciprocal (so it divides 1 evenly); u_max >= 1.
// The grid is extended to the next multiple of step covering u_max.
RhoTable build_rho(double u_max, double step = kDefaultGridStep);

// Main terms of log rho(u): -u(log u + log_2 u - 1 + (log_2 u - 1)/log u).
// Requires u > e.
double rho_asymptotic(double u);

}  // namespace smoothphi
