#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <vector>

#include "smoothphi/count.hpp"
#include "smoothphi/rho.hpp"
#include "smoothphi/spf_table.hpp"

namespace smoothphi {

inline constexpr double kEE = 15.154262241479262;  // e^e, domain guard for log_3

// Everything downstream works in the log domain, so parameter studies at
// x = e^1000 scale stay finite. x_exact/y_exact are set when the params came
// from integers; the sieve-backed bounds require them.
struct SmoothParams {
    double log_x = 0.0;
    double log_y = 0.0;
    std::uint64_t x_exact = 0;  // 0 = not an integer-backed instance
    std::uint64_t y_exact = 0;

    static SmoothParams from_xy(std::uint64_t x, std::uint64_t y);
    static SmoothParams from_logs(double log_x, double log_y);

    double u() const { return log_x / log_y; }
    double u_t(double log_t) const { return log_t / log_y; }
};

struct RankinConfig {
    double delta = 0.0;
    double c = 0.0;
    bool clamped = false;
};

// c = 1 - (log_2 u + log_3 u - delta)/log y. Values leaving (0,1) are clamped
// to [1e-6, 1-1e-6] and flagged; the product bound below is valid for any
// interior c. Requires u > e^e.
RankinConfig rankin_exponent(const SmoothParams& p, double delta);

// log( x^c * prod_{p <= x, P(p-1) <= y} (1 - p^-c)^-1 ), computed exactly over
// the sieve. An unconditional upper bound for log Phi(x,y) for every c in
// (0,1). Requires integer-backed params with x <= t.limit.
double rankin_product_bound(const SmoothParams& p, double c, const SpfTable& t,
                            const CountOptions& opts = {});

// log x - u(log_2 u + log_3 u); asymptotic shape only, never asserted.
// Requires u > e^e.
double theorem_shape_bound(const SmoothParams& p);

// log t - u_t log u_t, the de Bruijn psi(t,y) bound shape. Requires t >= y.
double debruijn_psi_bound(double t_val, const SmoothParams& p);

struct SmoothShiftBound {
    double value = 0.0;  // rho(u_t) * t / log y
    double log_value = 0.0;
    bool in_lemma_range = false;  // exp(sqrt(log t log_2 t)) <= y <= t
};

// Lemma-shape bound on psi_pi(t,y), implied constant omitted. Pairs outside
// the stated range are computed but flagged.
SmoothShiftBound smooth_shift_bound(double t_val, const SmoothParams& p, const RhoTable& rho);

struct PrimeSumDiagnostic {
    double exact = 0.0;     // sum_{p <= y} p^-c over the sieve
    double estimate = 0.0;  // li(y^(1-c)) as int_2^{y^(1-c)} dt/log t
};

// Requires y <= t.limit and c in (0,1).
PrimeSumDiagnostic prime_sum_diagnostic(double y, double c, const SpfTable& t);

// Evaluators for the proof-shape functions g(u), h(k), B_u(k).
struct ProofProfile {
    double u = 0.0;
    double delta = 0.0;

    double log_g() const;       // -u(log_2 u + log_3 u - delta)
    double log_h(double k) const;  // -k(log k + log_2(k+1) - 1)
    double h(double k) const;
    double b(double k) const;   // k(log_2 u + log_3 u - log k - log_2(k+1) + 1 - delta/2)

    // argmax of b over integer k in [1, u/2]
    std::int64_t argmax_b() const;
};

// Requires u > e^e and delta in (0,1).
ProofProfile proof_profile(double u, double delta);

// Per-(x,y) record of the exact count against every bound, log domain.
struct BoundReport {
    static constexpr double kNone = std::numeric_limits<double>::quiet_NaN();

    SmoothParams params;
    std::int64_t phi_count = -1;     // exact Phi(x,y); -1 = absent
    std::int64_t psi_count = -1;
    std::int64_t psi_pi_count = -1;

    double rankin_c = kNone;
    bool rankin_c_fallback = false;  // paper formula out of domain, default c used
    bool rankin_c_clamped = false;

    double bound_rankin_product = kNone;  // log domain
    double bound_theorem_shape = kNone;   // log domain; NaN below the u guard
    double bound_debruijn_psi = kNone;    // log domain, at t = x
    double bound_smooth_shift = kNone;    // log domain, at t = x
    bool smooth_shift_in_range = false;

    double ratio_rankin_product = kNone;  // Phi / exp(bound); <= 1 always
    double ratio_theorem_shape = kNone;   // Phi / exp(bound); shape only
    double ratio_debruijn_psi = kNone;    // psi / exp(bound)
    double ratio_smooth_shift = kNone;    // psi_pi * log y / (rho(u) x)
};

// Stable column order: x, y, u, counts, each bound, each ratio, flags.
void write_reports_csv(std::ostream& os, const std::vector<BoundReport>& reports);
void write_reports_json(std::ostream& os, const std::vector<BoundReport>& reports);

}  // namespace smoothphi
