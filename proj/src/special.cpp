#include "smoothphi/special.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace smoothphi {

namespace {

double log_add_exp(double a, double b) {
    const double hi = std::max(a, b), lo = std::min(a, b);
    return hi + std::log1p(std::exp(lo - hi));
}

// log of A^n rho(n) from the table's log field (n on grid exactly)
double log_term(double a, int n, const RhoTable& rho) {
    return static_cast<double>(n) * std::log(a) + rho.log_value(static_cast<double>(n));
}

}  // namespace

double iterated_log(int k, double x) {
    if (k < 1) throw std::domain_error("iterated_log: k must be >= 1");
    double v = x;
    for (int i = 1; i <= k; ++i) {
        if (!(v > 0))
            throw std::domain_error("iterated_log: iterate " + std::to_string(i) +
                                    " undefined (previous value " + std::to_string(v) +
                                    " is not positive)");
        v = std::log(v);
    }
    if (!(v > 0))
        throw std::domain_error("iterated_log: final iterate " + std::to_string(k) +
                                " is not positive (log_" + std::to_string(k - 1) +
                                " x must exceed 1)");
    return v;
}

SeriesSum rankin_series_sum(double a, int n_max, const RhoTable& rho) {
    if (!(a >= 2.0)) throw std::domain_error("rankin_series_sum: A must be >= 2");
    if (n_max < 1) throw std::domain_error("rankin_series_sum: n_max must be >= 1");
    if (rho.u_max < static_cast<double>(n_max))
        throw std::invalid_argument("rankin_series_sum: rho table shorter than n_max");

    SeriesSum s;
    s.log_sum = log_term(a, 1, rho);
    s.log_last_term = s.log_sum;
    s.n_terms = 1;
    for (int n = 2; n <= n_max; ++n) {
        s.log_last_term = log_term(a, n, rho);
        s.log_sum = log_add_exp(s.log_sum, s.log_last_term);
        s.n_terms = n;
    }
    return s;
}

SeriesSum rankin_series_sum_adaptive(double a, const RhoTable& rho, double rel_tail) {
    if (!(a >= 2.0)) throw std::domain_error("rankin_series_sum_adaptive: A must be >= 2");
    const int n_cap = static_cast<int>(rho.u_max);

    SeriesSum s;
    s.log_sum = log_term(a, 1, rho);
    s.log_last_term = s.log_sum;
    s.n_terms = 1;
    const double log_tail = std::log(rel_tail);
    for (int n = 2;; ++n) {
        if (n > n_cap)
            throw std::invalid_argument(
                "rankin_series_sum_adaptive: rho table too short for A=" + std::to_string(a) +
                " (tail not negligible by u_max=" + std::to_string(rho.u_max) + ")");
        s.log_last_term = log_term(a, n, rho);
        s.log_sum = log_add_exp(s.log_sum, s.log_last_term);
        s.n_terms = n;
        if (s.log_last_term < s.log_sum + log_tail) break;
    }
    return s;
}

}  // namespace smoothphi
