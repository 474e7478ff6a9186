#include "smoothphi/rho.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "csv_format.hpp"

namespace smoothphi {

namespace {

// step must be 2^-k for some k >= 0 so that integers land exactly on the grid.
std::size_t steps_per_unit_checked(double step) {
    if (!(step > 0) || step > 1)
        throw std::invalid_argument("rho grid: step must be in (0, 1]");
    const double inv = 1.0 / step;
    const auto n1 = static_cast<std::size_t>(std::llround(inv));
    if (n1 == 0 || std::abs(inv - static_cast<double>(n1)) > 1e-9 || (n1 & (n1 - 1)) != 0)
        throw std::invalid_argument("rho grid: step must be a power-of-two reciprocal");
    return n1;
}

double interp(const std::vector<double>& a, double u, double step, double u_max,
              const char* what) {
    if (!(u >= 0.0))
        throw std::domain_error(std::string(what) + ": u must be >= 0");
    if (u > u_max * (1 + 1e-12))
        throw std::out_of_range(std::string(what) + ": u=" + std::to_string(u) +
                                " beyond table u_max=" + std::to_string(u_max));
    const double ft = std::min(u / step, static_cast<double>(a.size() - 1));
    const auto j = static_cast<std::size_t>(ft);
    if (j + 1 >= a.size()) return a.back();
    const double w = ft - static_cast<double>(j);
    return a[j] * (1.0 - w) + a[j + 1] * w;
}

}  // namespace

std::size_t RhoTable::steps_per_unit() const { return steps_per_unit_checked(step); }

double RhoTable::value(double u) const { return interp(values, u, step, u_max, "RhoTable::value"); }

double RhoTable::log_value(double u) const {
    return interp(log_values, u, step, u_max, "RhoTable::log_value");
}

void RhoTable::write_csv(std::ostream& os) const {
    os << "u,value,log_value\n";
    for (std::size_t j = 0; j < values.size(); ++j)
        os << fmt_double(static_cast<double>(j) * step) << ',' << fmt_double(values[j]) << ','
           << fmt_double(log_values[j]) << '\n';
}

RhoTable build_rho(double u_max, double step) {
    if (!(u_max >= 1.0)) throw std::invalid_argument("build_rho: u_max must be >= 1");
    const std::size_t n1 = steps_per_unit_checked(step);
    const auto n = static_cast<std::size_t>(std::ceil(u_max / step - 1e-9));
    const double h = step;

    // Everything runs on lg = log rho; the linear value underflows long
    // before the log field stops being meaningful.
    std::vector<double> lg(n + 1, 0.0);

    // On [1,2] the delayed factor rho(t-1) is identically 1, so stepping the
    // integrated delay form with the 1/t weight handled exactly telescopes to
    // rho(u) = 1 - log u with no quadrature error at any step size.
    for (std::size_t j = n1; j < std::min(2 * n1, n); ++j) {
        const double u0 = static_cast<double>(j) * step;
        const double d = std::exp(-lg[j]) * std::log((u0 + h) / u0);
        if (!(d < 1.0))
            throw std::invalid_argument("build_rho: step too coarse (decrement >= 1 near u=" +
                                        std::to_string(u0 + h) + ")");
        lg[j + 1] = lg[j] + std::log1p(-d);
    }

    // Past u = 2, step the average identity u rho(u) = int_{u-1}^u rho(t) dt
    // (equivalent to u rho' = -rho(u-1)) with trapezoidal quadrature over the
    // window; the implicit endpoint is solved in closed form. Re-deriving the
    // level from the window each step keeps errors decaying at the same
    // factorial rate as rho itself, where stepping the delay form directly
    // lets early O(h^2) truncation error persist and swamp rho(u) by u ~ 9.
    // The window sum is carried against a per-unit anchor so it stays
    // conditioned arbitrarily deep into the decay.
    double anchor = 0.0;
    double window = 0.0;  // sum of exp(lg[m] - anchor), m in [j-n1, j-1]
    for (std::size_t j = 2 * n1 + 1; j <= n; ++j) {
        if ((j - 1) % n1 == 0 || j == 2 * n1 + 1) {
            anchor = lg[j - 1];
            window = 0.0;
            for (std::size_t m = j - n1; m < j; ++m) window += std::exp(lg[m] - anchor);
        }
        const double u = static_cast<double>(j) * step;
        const double lead = std::exp(lg[j - n1] - anchor);
        const double w = h * (window - 0.5 * lead) / (u - 0.5 * h);
        lg[j] = anchor + std::log(w);
        window += w - lead;  // slide the window one grid point right
    }

    RhoTable t;
    t.step = step;
    t.u_max = static_cast<double>(n) * step;
    t.log_values = std::move(lg);
    t.values.resize(n + 1);
    for (std::size_t j = 0; j <= n; ++j)
        t.values[j] = t.log_values[j] < -745.0 ? 0.0 : std::exp(t.log_values[j]);
    return t;
}

double rho_asymptotic(double u) {
    constexpr double e = 2.718281828459045;
    if (!(u > e)) throw std::domain_error("rho_asymptotic: u must be > e");
    const double l1 = std::log(u);
    const double l2 = std::log(l1);
    return -u * (l1 + l2 - 1.0 + (l2 - 1.0) / l1);
}

}  // namespace smoothphi
