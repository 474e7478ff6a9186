#include "smoothphi/sigma.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "csv_format.hpp"

namespace smoothphi {

double SigmaTable::value(double u) const {
    if (!(u >= 0.0)) throw std::domain_error("SigmaTable::value: u must be >= 0");
    if (u > u_max * (1 + 1e-12))
        throw std::out_of_range("SigmaTable::value: u beyond table u_max");
    const double ft = std::min(u / step, static_cast<double>(values.size() - 1));
    const auto j = static_cast<std::size_t>(ft);
    if (j + 1 >= values.size()) return values.back();
    const double w = ft - static_cast<double>(j);
    return values[j] * (1.0 - w) + values[j + 1] * w;
}

double SigmaTable::max_residual() const {
    double m = 0.0;
    for (double r : residuals) m = std::max(m, std::abs(r));
    return m;
}

void SigmaTable::write_csv(std::ostream& os) const {
    os << "u,value,log_value,residual\n";
    for (std::size_t j = 0; j < values.size(); ++j)
        os << fmt_double(static_cast<double>(j) * step) << ',' << fmt_double(values[j]) << ','
           << fmt_double(std::log(values[j])) << ',' << fmt_double(residuals[j]) << '\n';
}

SigmaTable build_sigma(double u_max, double step, const RhoTable& rho) {
    if (!(u_max >= 1.0)) throw std::invalid_argument("build_sigma: u_max must be >= 1");
    if (rho.step != step)
        throw std::invalid_argument("build_sigma: grid step does not match the rho table");
    if (rho.u_max < u_max - 1e-12)
        throw std::invalid_argument("build_sigma: rho table shorter than u_max");

    const double inv = 1.0 / step;
    const auto n1 = static_cast<std::size_t>(std::llround(inv));
    const auto n = static_cast<std::size_t>(std::ceil(u_max / step - 1e-9));
    if (rho.values.size() < n + 1) throw std::invalid_argument("build_sigma: rho grid too short");

    const double h = step;
    const std::vector<double>& r = rho.values;

    SigmaTable t;
    t.step = step;
    t.u_max = static_cast<double>(n) * step;
    t.rho_values.assign(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(n + 1));
    t.values.assign(n + 1, 1.0);
    std::vector<double>& s = t.values;

    // forward solve; the m = 0 endpoint term h/2 * rho(0) * sigma(u) is moved
    // to the left side
    for (std::size_t j = n1 + 1; j <= n; ++j) {
        double acc = 0.0;
        for (std::size_t m = 1; m < j; ++m) acc += r[m] * s[j - m];
        acc = h * (acc + 0.5 * r[j] * s[0]);
        s[j] = acc / (static_cast<double>(j) * h - 0.5 * h * r[0]);
    }

    t.residuals = t.recompute_residuals();
    return t;
}

std::vector<double> SigmaTable::recompute_residuals() const {
    const std::size_t n = values.size() - 1;
    const double h = step;
    const std::vector<double>& r = rho_values;
    const std::vector<double>& s = values;

    // independent reverse-order accumulation
    std::vector<double> res(n + 1, 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 64)
#endif
    for (std::ptrdiff_t jj = 1; jj <= static_cast<std::ptrdiff_t>(n); ++jj) {
        const auto j = static_cast<std::size_t>(jj);
        double q = 0.5 * r[j] * s[0];
        for (std::size_t m = j - 1; m >= 1; --m) q += r[m] * s[j - m];
        q += 0.5 * r[0] * s[j];
        q *= h;
        res[j] = static_cast<double>(j) * h * s[j] - q;
    }
    return res;  // res[0] = 0: empty integral at u = 0
}

}  // namespace smoothphi
