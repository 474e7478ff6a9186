// smoothphi: exact counts of smooth-totient populations, Dickman rho and
// Lamzouri sigma grids, explicit bound evaluation, and the inequality
// verification suite. All output is deterministic for a given configuration;
// --threads only changes wall time, never results.

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "smoothphi/bounds.hpp"
#include "smoothphi/count.hpp"
#include "smoothphi/rho.hpp"
#include "smoothphi/sigma.hpp"
#include "smoothphi/special.hpp"
#include "smoothphi/spf_table.hpp"
#include "smoothphi/verify.hpp"

using namespace smoothphi;

namespace {

// y arrives as a real; non-integers are floored with a warning.
std::uint64_t floor_y(double y_raw) {
    const double fl = std::floor(y_raw);
    if (fl != y_raw)
        std::fprintf(stderr, "warning: --y %.6g is not an integer, flooring to %.0f\n", y_raw, fl);
    if (fl < 2)
        throw CLI::ValidationError("--y", "must be >= 2 after flooring");
    return static_cast<std::uint64_t>(fl);
}

void check_step(double step) {
    const double inv = 1.0 / step;
    const auto n1 = static_cast<long long>(std::llround(inv));
    if (!(step > 0) || step > 1 || n1 <= 0 ||
        std::abs(inv - static_cast<double>(n1)) > 1e-9 || (n1 & (n1 - 1)) != 0)
        throw CLI::ValidationError(
            "--step", "must be a power-of-two reciprocal in (0,1], e.g. 0.25 or 0.000244140625");
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw CLI::ValidationError("--output", "cannot open '" + path + "' for writing");
    return out;
}

struct CommonOpts {
    int threads = 0;
    std::string output;
    std::string format = "csv";
};

void add_common(CLI::App* cmd, CommonOpts& c, bool with_format = true) {
    cmd->add_option("--threads", c.threads, "worker threads for sieve passes (0 = all cores)")
        ->check(CLI::Range(0, 1024));
    cmd->add_option("--output", c.output, "write results to this file");
    if (with_format)
        cmd->add_option("--format", c.format, "output file format")
            ->check(CLI::IsMember({"csv", "json"}));
}

int cmd_count(std::uint64_t x, double y_raw, std::uint64_t limit, const CommonOpts& c,
              const std::string& kind) {
    const std::uint64_t y = floor_y(y_raw);
    CountOptions opts;
    opts.threads = c.threads;

    if (limit == 0) limit = std::min(x, kDefaultSpfCap);
    if (x > limit) {
        // beyond the table budget: segmented mode, totals only
        if (!c.output.empty())
            throw CLI::ValidationError("--output",
                                       "series dumps need x <= --limit (dense table mode)");
        const TripleCounts t = segmented_counts(x, y, opts);
        std::printf("kind,x,y,count\n");
        std::printf("phi_smooth,%" PRIu64 ",%" PRIu64 ",%" PRId64 "\n", x, y, t.phi_smooth);
        std::printf("smooth,%" PRIu64 ",%" PRIu64 ",%" PRId64 "\n", x, y, t.smooth);
        std::printf("shifted_prime_smooth,%" PRIu64 ",%" PRIu64 ",%" PRId64 "\n", x, y,
                    t.shifted_prime_smooth);
        return 0;
    }

    const SpfTable tbl = build_spf_table(limit);
    const AllCounts a = count_all(x, y, tbl, opts);
    std::printf("kind,x,y,count\n");
    std::printf("phi_smooth,%" PRIu64 ",%" PRIu64 ",%" PRId64 "\n", x, y,
                a.phi_smooth.count_at(x));
    std::printf("smooth,%" PRIu64 ",%" PRIu64 ",%" PRId64 "\n", x, y, a.smooth.count_at(x));
    std::printf("shifted_prime_smooth,%" PRIu64 ",%" PRIu64 ",%" PRId64 "\n", x, y,
                a.shifted_prime_smooth.count_at(x));

    if (!c.output.empty()) {
        const CountSeries* s = &a.phi_smooth;
        if (kind == "smooth") s = &a.smooth;
        if (kind == "shifted-prime-smooth") s = &a.shifted_prime_smooth;
        auto out = open_output(c.output);
        s->write_csv(out);
    }
    return 0;
}

int cmd_rho(double u_max, double step, const std::vector<double>& queries, const CommonOpts& c) {
    check_step(step);
    const RhoTable rho = build_rho(u_max, step);
    for (double q : queries) std::printf("rho(%g) = %.10g\n", q, rho.value(q));
    if (!c.output.empty()) {
        auto out = open_output(c.output);
        rho.write_csv(out);
    }
    return 0;
}

int cmd_sigma(double u_max, double step, const std::vector<double>& queries,
              const CommonOpts& c) {
    check_step(step);
    const RhoTable rho = build_rho(u_max, step);
    const SigmaTable sig = build_sigma(u_max, step, rho);
    for (double q : queries) std::printf("sigma(%g) = %.10g\n", q, sig.value(q));
    std::printf("max_residual = %.3g\n", sig.max_residual());
    if (!c.output.empty()) {
        auto out = open_output(c.output);
        sig.write_csv(out);
    }
    return 0;
}

int cmd_bounds(std::uint64_t x, double y_raw, double delta, std::uint64_t limit,
               double rho_u_max, const CommonOpts& c) {
    const std::uint64_t y = floor_y(y_raw);
    if (limit == 0) limit = x;
    if (x > limit) throw CLI::ValidationError("--limit", "must be >= --x for bound reports");
    CountOptions opts;
    opts.threads = c.threads;
    const SpfTable tbl = build_spf_table(limit);
    const RhoTable rho = build_rho(rho_u_max);
    const std::vector<BoundReport> reports = scan_bounds({x}, {y}, delta, tbl, rho, opts);
    if (c.format == "json")
        write_reports_json(std::cout, reports);
    else
        write_reports_csv(std::cout, reports);
    if (!c.output.empty()) {
        auto out = open_output(c.output);
        if (c.format == "json")
            write_reports_json(out, reports);
        else
            write_reports_csv(out, reports);
    }
    return 0;
}

int cmd_scan(const std::vector<std::uint64_t>& x_grid, const std::vector<std::uint64_t>& y_grid,
             double delta, std::uint64_t limit, double rho_u_max, const CommonOpts& c) {
    std::uint64_t x_max = 2;
    for (std::uint64_t x : x_grid) x_max = std::max(x_max, x);
    if (limit == 0) limit = x_max;
    if (x_max > limit)
        throw CLI::ValidationError("--limit", "must cover max(--x-grid) = " +
                                                  std::to_string(x_max));
    CountOptions opts;
    opts.threads = c.threads;
    const SpfTable tbl = build_spf_table(limit);
    const RhoTable rho = build_rho(rho_u_max);
    const std::vector<BoundReport> reports = scan_bounds(x_grid, y_grid, delta, tbl, rho, opts);
    if (c.format == "json")
        write_reports_json(std::cout, reports);
    else
        write_reports_csv(std::cout, reports);
    if (!c.output.empty()) {
        auto out = open_output(c.output);
        if (c.format == "json")
            write_reports_json(out, reports);
        else
            write_reports_csv(out, reports);
    }
    return 0;
}

int cmd_verify(std::uint64_t limit, double delta, double rho_u_max, double sigma_u_max,
               const std::string& fixtures, const CommonOpts& c) {
    VerifyConfig cfg;
    cfg.limit = limit;
    cfg.delta = delta;
    cfg.sigma_u_max = sigma_u_max;
    cfg.count.threads = c.threads;
    cfg.env = fixtures.empty() ? default_envelopes() : load_envelopes(fixtures);

    const SpfTable tbl = build_spf_table(std::max<std::uint64_t>(limit, 2));
    const RhoTable rho = build_rho(std::max(rho_u_max, 101.0));
    const SigmaTable sig = build_sigma(sigma_u_max, rho.step, rho);

    const VerifyResult res = run_verify(cfg, tbl, rho, sig);
    int warn = 0, fail = 0;
    for (const CheckOutcome& o : res.outcomes) {
        const char* status = "PASS";
        if (!o.pass) {
            if (o.kind == CheckKind::asymptotic_ratio) {
                status = "WARN";
                ++warn;
            } else {
                status = "FAIL";
                ++fail;
            }
        }
        std::printf("%s %s x=%.6g y=%.6g lhs=%.6g rhs=%.6g\n", status, o.name.c_str(), o.x, o.y,
                    o.lhs, o.rhs);
    }
    std::printf("checks=%zu warn=%d fail=%d\n", res.outcomes.size(), warn, fail);

    if (!c.output.empty()) {
        auto csv = open_output(c.output + ".csv");
        write_outcomes_csv(csv, res.outcomes);
        auto json = open_output(c.output + ".json");
        write_outcomes_json(json, res.outcomes);
    }
    return res.hard_fail ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"smooth-totient counting and bound verification"};
    app.require_subcommand(1);

    // count
    auto* count = app.add_subcommand("count", "exact Phi/psi/psi_pi at (x,y)");
    std::uint64_t x = 0, limit = 0;
    double y_raw = 2;
    std::string kind = "phi-smooth";
    CommonOpts count_c;
    count->add_option("--x", x, "threshold x (1 <= x)")->required()->check(CLI::PositiveNumber);
    count->add_option("--y", y_raw, "smoothness bound y (integer >= 2; reals are floored)")
        ->required();
    count->add_option("--limit", limit, "sieve table limit (default min(x, 2^31))");
    count->add_option("--kind", kind, "series kind for --output")
        ->check(CLI::IsMember({"phi-smooth", "smooth", "shifted-prime-smooth"}));
    add_common(count, count_c, false);

    // rho
    auto* rho_cmd = app.add_subcommand("rho", "Dickman rho grid");
    double u_max = 10.0, step = kDefaultGridStep;
    std::vector<double> queries;
    CommonOpts rho_c;
    rho_cmd->add_option("--u-max", u_max, "grid upper end (>= 1)")
        ->check(CLI::Range(1.0, 4096.0));
    rho_cmd->add_option("--step", step, "grid step, a power-of-two reciprocal");
    rho_cmd->add_option("--query", queries, "evaluate rho at these u");
    add_common(rho_cmd, rho_c, false);

    // sigma
    auto* sigma_cmd = app.add_subcommand("sigma", "Lamzouri sigma grid");
    double s_u_max = 10.0, s_step = kDefaultGridStep;
    std::vector<double> s_queries;
    CommonOpts sigma_c;
    sigma_cmd->add_option("--u-max", s_u_max, "grid upper end (>= 1)")
        ->check(CLI::Range(1.0, 64.0));
    sigma_cmd->add_option("--step", s_step, "grid step, a power-of-two reciprocal");
    sigma_cmd->add_option("--query", s_queries, "evaluate sigma at these u");
    add_common(sigma_cmd, sigma_c, false);

    // bounds
    auto* bounds_cmd = app.add_subcommand("bounds", "bound report for one (x,y)");
    std::uint64_t b_x = 0, b_limit = 0;
    double b_y = 2, b_delta = 0.1, b_rho_u_max = 128.0;
    CommonOpts bounds_c;
    bounds_cmd->add_option("--x", b_x, "threshold x (>= 2)")->required()->check(CLI::PositiveNumber);
    bounds_cmd->add_option("--y", b_y, "smoothness bound y (reals floored)")->required();
    bounds_cmd->add_option("--delta", b_delta, "delta in (0,1) for the exponent c")
        ->check(CLI::Range(1e-9, 0.999999));
    bounds_cmd->add_option("--limit", b_limit, "sieve table limit (default x)");
    bounds_cmd->add_option("--rho-u-max", b_rho_u_max, "rho table upper end");
    add_common(bounds_cmd, bounds_c);

    // scan
    auto* scan_cmd = app.add_subcommand("scan", "bound reports over (x,y) grids");
    std::vector<std::uint64_t> x_grid, y_grid;
    std::uint64_t sc_limit = 0;
    double sc_delta = 0.1, sc_rho_u_max = 128.0;
    CommonOpts scan_c;
    scan_cmd->add_option("--x-grid", x_grid, "x values (comma separated)")
        ->required()
        ->delimiter(',');
    scan_cmd->add_option("--y-grid", y_grid, "y values (comma separated)")->delimiter(',');
    scan_cmd->add_option("--delta", sc_delta, "delta in (0,1)")->check(CLI::Range(1e-9, 0.999999));
    scan_cmd->add_option("--limit", sc_limit, "sieve table limit (default max x)");
    scan_cmd->add_option("--rho-u-max", sc_rho_u_max, "rho table upper end");
    add_common(scan_cmd, scan_c);

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "run the full inequality check suite");
    std::uint64_t v_limit = 100'000;
    double v_delta = 0.1, v_rho_u_max = 128.0, v_sigma_u_max = 10.0;
    std::string fixtures;
    CommonOpts verify_c;
    verify_cmd->add_option("--limit", v_limit, "max x for sieve-backed checks (100..10^8)")
        ->check(CLI::Range(std::uint64_t{100}, std::uint64_t{100'000'000}));
    verify_cmd->add_option("--delta", v_delta, "delta in (0,1)")
        ->check(CLI::Range(1e-9, 0.999999));
    verify_cmd->add_option("--rho-u-max", v_rho_u_max, "rho table upper end (>= 101)");
    verify_cmd->add_option("--sigma-u-max", v_sigma_u_max, "sigma table upper end");
    verify_cmd->add_option("--fixtures", fixtures, "pinned envelope JSON file");
    add_common(verify_cmd, verify_c, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (count->parsed()) return cmd_count(x, y_raw, limit, count_c, kind);
        if (rho_cmd->parsed()) return cmd_rho(u_max, step, queries, rho_c);
        if (sigma_cmd->parsed()) return cmd_sigma(s_u_max, s_step, s_queries, sigma_c);
        if (bounds_cmd->parsed())
            return cmd_bounds(b_x, b_y, b_delta, b_limit, b_rho_u_max, bounds_c);
        if (scan_cmd->parsed())
            return cmd_scan(x_grid, y_grid, sc_delta, sc_limit, sc_rho_u_max, scan_c);
        if (verify_cmd->parsed())
            return cmd_verify(v_limit, v_delta, v_rho_u_max, v_sigma_u_max, fixtures, verify_c);
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
