#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "smoothphi/rho.hpp"

namespace smoothphi {

// Lamzouri's sigma on the rho grid: the forward solution of
//   u sigma(u) = integral_0^u sigma(u-t) rho(t) dt
// with sigma fixed to 1 on [0,1] (u <= 1 means y >= x, where every totient is
// trivially y-smooth). Trapezoidal quadrature on the shared grid; the value
// at t = 0 makes each step implicit, solved in closed form.
struct SigmaTable {
    double step = 0.0;
    double u_max = 0.0;
    std::vector<double> values;
    std::vector<double> residuals;   // u sigma(u) - quadrature, per grid point
    std::vector<double> rho_values;  // grid prefix of the rho table used

    double value(double u) const;  // piecewise-linear, exact on grid
    double max_residual() const;

    // Re-derives the residuals from values and rho_values (same quadrature,
    // independent accumulation); detects any post-build perturbation.
    std::vector<double> recompute_residuals() const;

    // CSV with header "u,value,log_value,residual", LF line endings.
    void write_csv(std::ostream& os) const;
};

// Requires rho.u_max >= u_max and an identical grid step.
SigmaTable build_sigma(double u_max, double step, const RhoTable& rho);

}  // namespace smoothphi
