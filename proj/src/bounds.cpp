#include "smoothphi/bounds.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "csv_format.hpp"
#include "json.hpp"
#include "segment_pass.hpp"

namespace smoothphi {

namespace {

double log2u(double u) { return std::log(std::log(u)); }
double log3u(double u) { return std::log(std::log(std::log(u))); }

void require_u_guard(double u, const char* what) {
    if (!(u > kEE))
        throw std::domain_error(std::string(what) + ": u=" + std::to_string(u) +
                                " must exceed e^e (log_3 u undefined below)");
}

}  // namespace

SmoothParams SmoothParams::from_xy(std::uint64_t x, std::uint64_t y) {
    if (x < 2 || y < 2) throw std::domain_error("SmoothParams: x and y must be >= 2");
    SmoothParams p;
    p.log_x = std::log(static_cast<double>(x));
    p.log_y = std::log(static_cast<double>(y));
    p.x_exact = x;
    p.y_exact = y;
    return p;
}

SmoothParams SmoothParams::from_logs(double log_x, double log_y) {
    if (!(log_x > 0) || !(log_y > 0))
        throw std::domain_error("SmoothParams: log x and log y must be positive");
    SmoothParams p;
    p.log_x = log_x;
    p.log_y = log_y;
    return p;
}

RankinConfig rankin_exponent(const SmoothParams& p, double delta) {
    const double u = p.u();
    require_u_guard(u, "rankin_exponent");
    RankinConfig cfg;
    cfg.delta = delta;
    cfg.c = 1.0 - (log2u(u) + log3u(u) - delta) / p.log_y;
    constexpr double lo = 1e-6, hi = 1.0 - 1e-6;
    if (cfg.c < lo || cfg.c > hi) {
        cfg.c = std::min(hi, std::max(lo, cfg.c));
        cfg.clamped = true;
    }
    return cfg;
}

double rankin_product_bound(const SmoothParams& p, double c, const SpfTable& t,
                            const CountOptions& opts) {
    if (!(c > 0.0) || !(c < 1.0))
        throw std::domain_error("rankin_product_bound: c must lie in (0,1)");
    if (p.x_exact == 0 || p.y_exact == 0)
        throw std::invalid_argument("rankin_product_bound: integer-backed params required");
    const std::uint64_t x = p.x_exact, y = p.y_exact;
    if (x > t.limit)
        throw std::out_of_range("rankin_product_bound: x exceeds the table limit");

    const std::uint64_t seg = std::max<std::uint64_t>(opts.segment, 64);
    const std::size_t nseg = static_cast<std::size_t>((x - 1) / seg + 1);
    std::vector<double> partial(nseg, 0.0);

    const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(x)));
    const auto small = primes_up_to(root);

    detail::segment_pass(x, y, small, opts, [&](std::size_t s, const detail::SegData& sd) {
        double acc = 0.0;
        for (std::size_t i = 0; i < sd.len; ++i) {
            const std::uint64_t n = sd.lo + i;
            if (n >= 2 && sd.phi[i] == n - 1 && is_smooth(n - 1, y, t))
                acc -= std::log1p(-std::exp(-c * std::log(static_cast<double>(n))));
        }
        partial[s] = acc;
    });

    double sum = 0.0;
    for (double v : partial) sum += v;  // fixed order: thread-count independent
    return c * p.log_x + sum;
}

double theorem_shape_bound(const SmoothParams& p) {
    const double u = p.u();
    require_u_guard(u, "theorem_shape_bound");
    return p.log_x - u * (log2u(u) + log3u(u));
}

double debruijn_psi_bound(double t_val, const SmoothParams& p) {
    const double log_t = std::log(t_val);
    if (!(log_t >= p.log_y))
        throw std::domain_error("debruijn_psi_bound: t must be >= y");
    const double ut = p.u_t(log_t);
    return log_t - ut * std::log(ut);
}

SmoothShiftBound smooth_shift_bound(double t_val, const SmoothParams& p, const RhoTable& rho) {
    const double log_t = std::log(t_val);
    const double ut = p.u_t(log_t);
    SmoothShiftBound b;
    const double llt = std::log(log_t);
    b.in_lemma_range =
        log_t >= p.log_y && (llt <= 0 || p.log_y >= std::sqrt(log_t * llt));
    b.log_value = rho.log_value(ut) + log_t - std::log(p.log_y);
    b.value = rho.value(ut) * t_val / p.log_y;
    return b;
}

PrimeSumDiagnostic prime_sum_diagnostic(double y, double c, const SpfTable& t) {
    if (!(c > 0.0) || !(c < 1.0))
        throw std::domain_error("prime_sum_diagnostic: c must lie in (0,1)");
    if (!(y >= 2.0) || y > static_cast<double>(t.limit))
        throw std::out_of_range("prime_sum_diagnostic: y outside [2, table limit]");

    PrimeSumDiagnostic d;
    const auto yi = static_cast<std::uint64_t>(y);
    for (std::uint64_t p = 2; p <= yi; ++p)
        if (t.spf[p] == p) d.exact += std::exp(-c * std::log(static_cast<double>(p)));

    // li(y^(1-c)) as int_2^{y^(1-c)} dt/log t; substituting t = e^s gives
    // int e^s / s ds, integrated by composite Simpson.
    const double upper_log = (1.0 - c) * std::log(y);
    const double lower_log = std::log(2.0);
    if (upper_log > lower_log) {
        const int panels = 4096;
        const double h = (upper_log - lower_log) / panels;
        auto f = [](double s) { return std::exp(s) / s; };
        double acc = f(lower_log) + f(upper_log);
        for (int i = 1; i < panels; ++i)
            acc += f(lower_log + i * h) * ((i % 2 != 0) ? 4.0 : 2.0);
        d.estimate = acc * h / 3.0;
    }
    return d;
}

double ProofProfile::log_g() const { return -u * (log2u(u) + log3u(u) - delta); }

double ProofProfile::log_h(double k) const {
    return -k * (std::log(k) + std::log(std::log(k + 1.0)) - 1.0);
}

double ProofProfile::h(double k) const { return std::exp(log_h(k)); }

double ProofProfile::b(double k) const {
    return k * (log2u(u) + log3u(u) - std::log(k) - std::log(std::log(k + 1.0)) + 1.0 -
                delta / 2.0);
}

std::int64_t ProofProfile::argmax_b() const {
    const auto hi = static_cast<std::int64_t>(u / 2.0);
    if (hi <= 1) return 1;
    if (hi <= 4'000'000) {
        std::int64_t best = 1;
        double best_v = b(1.0);
        for (std::int64_t k = 2; k <= hi; ++k) {
            const double v = b(static_cast<double>(k));
            if (v > best_v) {
                best_v = v;
                best = k;
            }
        }
        return best;
    }
    // b is strictly concave in k, so ternary search is exact on integers
    std::int64_t lo = 1, up = hi;
    while (up - lo > 2) {
        const std::int64_t m1 = lo + (up - lo) / 3;
        const std::int64_t m2 = up - (up - lo) / 3;
        if (b(static_cast<double>(m1)) < b(static_cast<double>(m2)))
            lo = m1 + 1;
        else
            up = m2;
    }
    std::int64_t best = lo;
    for (std::int64_t k = lo + 1; k <= up; ++k)
        if (b(static_cast<double>(k)) > b(static_cast<double>(best))) best = k;
    return best;
}

ProofProfile proof_profile(double u, double delta) {
    require_u_guard(u, "proof_profile");
    if (!(delta > 0.0) || !(delta < 1.0))
        throw std::domain_error("proof_profile: delta must lie in (0,1)");
    return ProofProfile{u, delta};
}

namespace {

std::string report_flags(const BoundReport& r) {
    std::string f;
    auto add = [&](const char* tok) {
        if (!f.empty()) f += ';';
        f += tok;
    };
    if (r.rankin_c_fallback) add("c_fallback");
    if (r.rankin_c_clamped) add("c_clamped");
    if (!r.smooth_shift_in_range) add("smooth_shift_out_of_range");
    if (std::isnan(r.bound_theorem_shape)) add("theorem_shape_out_of_domain");
    return f;
}

std::string opt(double v) { return std::isnan(v) ? std::string() : fmt_double(v); }

}  // namespace

void write_reports_csv(std::ostream& os, const std::vector<BoundReport>& reports) {
    os << "x,y,u,phi_count,psi_count,psi_pi_count,c,"
          "bound_rankin_product,bound_theorem_shape,bound_debruijn_psi,bound_smooth_shift,"
          "ratio_rankin_product,ratio_theorem_shape,ratio_debruijn_psi,ratio_smooth_shift,"
          "flags\n";
    for (const auto& r : reports) {
        os << r.params.x_exact << ',' << r.params.y_exact << ',' << fmt_double(r.params.u()) << ','
           << r.phi_count << ',' << r.psi_count << ',' << r.psi_pi_count << ',' << opt(r.rankin_c)
           << ',' << opt(r.bound_rankin_product) << ',' << opt(r.bound_theorem_shape) << ','
           << opt(r.bound_debruijn_psi) << ',' << opt(r.bound_smooth_shift) << ','
           << opt(r.ratio_rankin_product) << ',' << opt(r.ratio_theorem_shape) << ','
           << opt(r.ratio_debruijn_psi) << ',' << opt(r.ratio_smooth_shift) << ','
           << report_flags(r) << '\n';
    }
}

void write_reports_json(std::ostream& os, const std::vector<BoundReport>& reports) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : reports) {
        nlohmann::ordered_json j;
        j["x"] = r.params.x_exact;
        j["y"] = r.params.y_exact;
        j["u"] = r.params.u();
        j["phi_count"] = r.phi_count;
        j["psi_count"] = r.psi_count;
        j["psi_pi_count"] = r.psi_pi_count;
        auto set = [&j](const char* k, double v) {
            if (std::isnan(v))
                j[k] = nullptr;
            else
                j[k] = v;
        };
        set("c", r.rankin_c);
        set("bound_rankin_product", r.bound_rankin_product);
        set("bound_theorem_shape", r.bound_theorem_shape);
        set("bound_debruijn_psi", r.bound_debruijn_psi);
        set("bound_smooth_shift", r.bound_smooth_shift);
        set("ratio_rankin_product", r.ratio_rankin_product);
        set("ratio_theorem_shape", r.ratio_theorem_shape);
        set("ratio_debruijn_psi", r.ratio_debruijn_psi);
        set("ratio_smooth_shift", r.ratio_smooth_shift);
        j["flags"] = report_flags(r);
        arr.push_back(std::move(j));
    }
    os << arr.dump(2) << '\n';
}

}  // namespace smoothphi
