#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "smoothphi/rho.hpp"
#include "smoothphi/sigma.hpp"
#include "smoothphi/special.hpp"

using namespace smoothphi;

namespace {
const RhoTable& default_rho() {
    static const RhoTable t = build_rho(32.0);
    return t;
}
}  // namespace

TEST_CASE("rho is 1 on [0,1] and matches the closed form at 2") {
    const RhoTable& t = default_rho();
    CHECK(t.value(0.0) == 1.0);
    CHECK(t.value(0.5) == 1.0);
    CHECK(t.value(1.0) == 1.0);
    // one exact integration gives rho(2) = 1 - log 2
    CHECK(std::abs(t.value(2.0) - (1.0 - std::log(2.0))) < 1e-10);
}

TEST_CASE("coarse grids stay exact on [1,2]") {
    const RhoTable t = build_rho(3.0, 0.25);
    CHECK(std::abs(t.value(2.0) - (1.0 - std::log(2.0))) < 1e-12);
    CHECK(t.value(1.5) == doctest::Approx(1.0 - std::log(1.5)).epsilon(1e-12));
}

TEST_CASE("rho(3) against the step-2^-16 delay-ODE oracle") {
    const std::vector<double> ref = oracle::rho_rk4(3.0, 0x1p-16);
    const double rho3 = ref.back();
    CHECK(rho3 == doctest::Approx(0.0486083883).epsilon(1e-8));  // printed reference value
    CHECK(std::abs(default_rho().value(3.0) - rho3) < 1e-8);
}

TEST_CASE("oracle agreement along the whole grid") {
    const double step = 0x1p-13;
    const std::vector<double> ref = oracle::rho_rk4(12.0, step);
    const RhoTable t = build_rho(12.0, step);
    double worst = 0.0;
    for (std::size_t j = 0; j < ref.size(); ++j)
        worst = std::max(worst, std::abs(ref[j] - t.values[j]));
    CHECK(worst < 1e-9);
}

TEST_CASE("step halving stability at u = 10") {
    const RhoTable a = build_rho(10.0, 0x1p-12);
    const RhoTable b = build_rho(10.0, 0x1p-13);
    CHECK(std::abs(a.value(10.0) - b.value(10.0)) < 1e-8);
}

TEST_CASE("rho positive and strictly decreasing past 1") {
    const RhoTable& t = default_rho();
    const std::size_t n1 = t.steps_per_unit();
    for (std::size_t j = n1; j + 1 < t.log_values.size(); ++j) {
        CHECK(t.log_values[j + 1] < t.log_values[j]);
        CHECK(std::isfinite(t.log_values[j]));
    }
    CHECK(t.value(2.0) > t.value(3.0));
    CHECK(t.value(3.0) > 0.0);
}

TEST_CASE("log values survive underflow of the linear field") {
    const RhoTable t = build_rho(160.0);
    CHECK(t.value(150.0) == 0.0);  // below double range
    CHECK(std::isfinite(t.log_value(150.0)));
    CHECK(t.log_value(150.0) < -800.0);
    // still tracks the asymptotic main terms to a few percent
    const double asym = rho_asymptotic(150.0);
    CHECK(std::abs(t.log_value(150.0) - asym) / std::abs(asym) < 0.05);
}

TEST_CASE("rho grid configuration errors") {
    CHECK_THROWS_AS(build_rho(10.0, 0.3), std::invalid_argument);
    CHECK_THROWS_AS(build_rho(10.0, 0.75), std::invalid_argument);
    CHECK_THROWS_AS(build_rho(0.5), std::invalid_argument);
    CHECK_THROWS_AS(default_rho().value(1000.0), std::out_of_range);
    CHECK_THROWS_AS(default_rho().value(-1.0), std::domain_error);
}

TEST_CASE("rho csv dump shape") {
    const RhoTable t = build_rho(1.0, 0.5);
    std::ostringstream os;
    t.write_csv(os);
    CHECK(os.str() == "u,value,log_value\n0,1,0\n0.5,1,0\n1,1,0\n");
}

TEST_CASE("rho asymptotic main terms") {
    CHECK(rho_asymptotic(10.0) == doctest::Approx(-20.6453879).epsilon(1e-7));
    const double e2 = std::exp(2.0);
    const double expected = -e2 * (2.0 + std::log(2.0) - 1.0 + (std::log(2.0) - 1.0) / 2.0);
    CHECK(rho_asymptotic(e2) == doctest::Approx(expected).epsilon(1e-12));
    // monotone decreasing for u >= 10
    double prev = rho_asymptotic(10.0);
    for (double u = 11.0; u <= 100.0; u += 1.0) {
        const double v = rho_asymptotic(u);
        CHECK(v < prev);
        prev = v;
    }
    CHECK_THROWS_AS(rho_asymptotic(std::exp(1.0)), std::domain_error);
}

TEST_CASE("rho asymptotic vs numeric shape constant") {
    const RhoTable t = build_rho(101.0);
    for (double u : {20.0, 50.0, 100.0}) {
        const double l2 = std::log(std::log(u));
        const double denom = u * l2 * l2 / (std::log(u) * std::log(u));
        const double ratio = std::abs(t.log_value(u) - rho_asymptotic(u)) / denom;
        CHECK(ratio < 5.0);  // spec-level sanity; the pinned envelope is tighter
    }
}

TEST_CASE("iterated log") {
    CHECK(iterated_log(1, std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(iterated_log(2, std::exp(std::exp(1.0))) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(iterated_log(3, 1e100) == doctest::Approx(1.6936343).epsilon(1e-6));
    CHECK_THROWS_AS(iterated_log(2, std::exp(1.0)), std::domain_error);
    CHECK_THROWS_AS(iterated_log(1, -1.0), std::domain_error);
    CHECK_THROWS_AS(iterated_log(0, 10.0), std::domain_error);
    // the error names the failing iterate
    try {
        iterated_log(3, 2.0);
        CHECK(false);
    } catch (const std::domain_error& e) {
        CHECK(std::string(e.what()).find("iterate") != std::string::npos);
    }
}

TEST_CASE("rankin series fixed values") {
    const RhoTable& t = default_rho();
    const SeriesSum one = rankin_series_sum(2.0, 1, t);
    CHECK(one.sum() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(one.n_terms == 1);

    const SeriesSum ten = rankin_series_sum(2.0, 10, t);
    CHECK(ten.sum() == doctest::Approx(3.7077).epsilon(1e-4));
    CHECK(ten.last_term() < 1e-4);

    const SeriesSum big = rankin_series_sum(10.0, 20, t);
    CHECK(big.sum() == doctest::Approx(206.93).epsilon(0.01));
}

TEST_CASE("rankin series against term-by-term oracle values") {
    const std::vector<double> ref = oracle::rho_rk4(12.0, 0x1p-13);
    const std::size_t n1 = 1 << 13;
    double expect = 0.0;
    for (int n = 1; n <= 12; ++n) expect += std::pow(2.0, n) * ref[static_cast<std::size_t>(n) * n1];
    const SeriesSum s = rankin_series_sum(2.0, 12, default_rho());
    CHECK(s.sum() == doctest::Approx(expect).epsilon(1e-7));
}

TEST_CASE("rankin series adaptive truncation") {
    const RhoTable& t = default_rho();
    const SeriesSum s = rankin_series_sum_adaptive(10.0, t);
    CHECK(s.last_term() < 1e-9 * s.sum());
    CHECK(s.n_terms < 32);
    CHECK(s.sum() == doctest::Approx(206.93).epsilon(0.01));
    // table too short for the tail at A = 200
    CHECK_THROWS_AS(rankin_series_sum_adaptive(200.0, build_rho(10.0, 0x1p-8)),
                    std::invalid_argument);
    CHECK_THROWS_AS(rankin_series_sum(1.5, 5, t), std::domain_error);
}

TEST_CASE("sigma fixed on [0,1] and positive nonincreasing") {
    const RhoTable rho = build_rho(10.0);
    const SigmaTable s = build_sigma(10.0, rho.step, rho);
    CHECK(s.value(0.5) == 1.0);
    CHECK(s.value(1.0) == 1.0);
    for (std::size_t j = 1; j < s.values.size(); ++j) {
        CHECK(s.values[j] <= s.values[j - 1]);
        CHECK(s.values[j] > 0.0);
    }
    CHECK(s.values.back() <= 1.0);
}

TEST_CASE("sigma residuals vanish under the grid quadrature") {
    const RhoTable rho = build_rho(10.0);
    const SigmaTable s = build_sigma(10.0, rho.step, rho);
    CHECK(s.max_residual() < 1e-6);
    // u <= 1 segment: exactly zero
    const std::size_t n1 = 1 << 12;
    for (std::size_t j = 0; j <= n1; ++j) CHECK(s.residuals[j] == 0.0);
}

TEST_CASE("perturbing one sigma value breaks the residual identity") {
    const RhoTable rho = build_rho(4.0);
    SigmaTable s = build_sigma(4.0, rho.step, rho);
    s.values[s.values.size() / 2] += 1e-3;
    const std::vector<double> res = s.recompute_residuals();
    double worst = 0.0;
    for (double r : res) worst = std::max(worst, std::abs(r));
    CHECK(worst > 1e-6);
}

TEST_CASE("sigma(2) against the independent Volterra oracle") {
    // Frozen from the one-off Simpson-weighted solve at step 2^-16
    // (tests below re-derive it at 2^-13 to guard the pin itself).
    const double sigma2_oracle = 0.0 /* placeholder */;

    const std::vector<double> rho13 = oracle::rho_rk4(2.0, 0x1p-13);
    const std::vector<double> sig13 = oracle::sigma_simpson(2.0, 0x1p-13, rho13);
    CHECK(std::abs(sig13.back() - sigma2_oracle) < 1e-8);

    const RhoTable rho = build_rho(2.0);
    const SigmaTable s = build_sigma(2.0, rho.step, rho);
    CHECK(std::abs(s.value(2.0) - sigma2_oracle) < 1e-6);
}

TEST_CASE("sigma step halving at u = 5") {
    const RhoTable r12 = build_rho(5.0, 0x1p-12);
    const RhoTable r13 = build_rho(5.0, 0x1p-13);
    const SigmaTable a = build_sigma(5.0, r12.step, r12);
    const SigmaTable b = build_sigma(5.0, r13.step, r13);
    CHECK(std::abs(a.value(5.0) - b.value(5.0)) < 1e-6);
}

TEST_CASE("sigma grid mismatch errors") {
    const RhoTable rho = build_rho(4.0, 0x1p-10);
    CHECK_THROWS_AS(build_sigma(4.0, 0x1p-11, rho), std::invalid_argument);
    CHECK_THROWS_AS(build_sigma(8.0, 0x1p-10, rho), std::invalid_argument);
}
