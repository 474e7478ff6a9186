#pragma once

#include <cmath>

#include "smoothphi/rho.hpp"

namespace smoothphi {

// k-th iterate of the natural log. Requires every iterate to be defined and
// the final value positive; the error names the failing iterate.
double iterated_log(int k, double x);

// Partial sum of sum_{n>=1} A^n rho(n), accumulated in the log domain.
struct SeriesSum {
    double log_sum = 0.0;
    double log_last_term = 0.0;
    int n_terms = 0;

    double sum() const { return std::exp(log_sum); }
    double last_term() const { return std::exp(log_last_term); }
};

// Requires A >= 2 and rho.u_max >= n_max.
SeriesSum rankin_series_sum(double a, int n_max, const RhoTable& rho);

// Adds terms until the current term drops below rel_tail * running sum;
// throws if the rho table is exhausted first.
SeriesSum rankin_series_sum_adaptive(double a, const RhoTable& rho, double rel_tail = 1e-9);

}  // namespace smoothphi
