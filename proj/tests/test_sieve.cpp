#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numeric>
#include <sstream>

#include "oracles.hpp"
#include "smoothphi/count.hpp"
#include "smoothphi/spf_table.hpp"

using namespace smoothphi;

TEST_CASE("spf table small values") {
    const SpfTable t = build_spf_table(10);
    const std::uint32_t expected[] = {2, 3, 2, 5, 2, 7, 2, 3, 2};  // spf[2..10]
    for (std::uint64_t n = 2; n <= 10; ++n) CHECK(t.spf[n] == expected[n - 2]);
}

TEST_CASE("spf table smallest case and errors") {
    const SpfTable t = build_spf_table(2);
    CHECK(t.spf[2] == 2);
    CHECK_THROWS_AS(build_spf_table(1), std::domain_error);
    CHECK_THROWS_AS(build_spf_table(100, 50), std::length_error);
}

TEST_CASE("spf invariants on a million entries") {
    const SpfTable t = build_spf_table(1'000'000);
    CHECK(t.spf[999'983] == 999'983);  // prime
    for (std::uint64_t n = 2; n <= 100'000; ++n) {
        const std::uint64_t p = t.spf[n];
        CHECK(n % p == 0);
        CHECK(t.spf[p] == p);
        CHECK((p * p <= n || p == n));
    }
}

TEST_CASE("factorize") {
    const SpfTable t = build_spf_table(100'000);
    CHECK(factorize(1, t).factors.empty());
    CHECK(factorize(12, t).factors ==
          std::vector<PrimePower>{{2, 2}, {3, 1}});
    CHECK(factorize(57600, t).factors ==
          std::vector<PrimePower>{{2, 8}, {3, 2}, {5, 2}});
    CHECK_THROWS_AS(factorize(100'001, t), std::out_of_range);

    for (std::uint64_t n = 1; n <= 3000; ++n) {
        const Factorization f = factorize(n, t);
        CHECK(f.value() == n);
        for (std::size_t i = 1; i < f.factors.size(); ++i)
            CHECK(f.factors[i - 1].prime < f.factors[i].prime);
    }
}

TEST_CASE("euler phi, largest prime factor, von Mangoldt: fixed values") {
    const SpfTable t = build_spf_table(100'000);
    CHECK(euler_phi(1, t) == 1);
    CHECK(euler_phi(12, t) == 4);
    CHECK(euler_phi(57600, t) == 15360);
    CHECK(largest_prime_factor(1, t) == 1);
    CHECK(largest_prime_factor(12, t) == 3);
    CHECK(largest_prime_factor(57600, t) == 5);
    CHECK(von_mangoldt(6, t) == 0.0);
    CHECK(von_mangoldt(8, t) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(von_mangoldt(1, t) == 0.0);
    CHECK_THROWS_AS(euler_phi(0, t), std::out_of_range);
}

TEST_CASE("oracle equivalence up to 1e5") {
    const SpfTable t = build_spf_table(100'000);
    for (std::uint64_t n = 1; n <= 100'000; ++n) {
        REQUIRE(euler_phi(n, t) == oracle::phi(n));
        REQUIRE(largest_prime_factor(n, t) == oracle::largest_prime_factor(n));
    }
}

TEST_CASE("is_smooth matches oracle") {
    const SpfTable t = build_spf_table(10'000);
    for (std::uint64_t n = 1; n <= 2000; ++n)
        for (std::uint64_t y : {2, 3, 7, 97})
            CHECK(is_smooth(n, y, t) == oracle::is_smooth(n, y));
}

TEST_CASE("fixed counts from the brute-force oracle") {
    const SpfTable t = build_spf_table(1000);

    // recompute the frozen values from the independent oracle first
    const oracle::Counts b1 = oracle::brute_counts(10, 2);
    CHECK(b1.phi_smooth == 8);
    CHECK(b1.smooth == 4);
    CHECK(b1.shifted_prime_smooth == 3);
    CHECK(oracle::brute_counts(20, 2).phi_smooth == 13);
    CHECK(oracle::brute_counts(100, 5).smooth == 34);
    CHECK(oracle::brute_counts(20, 3).shifted_prime_smooth == 7);

    CHECK(count_phi_smooth(10, 2, t).count_at(10) == 8);
    CHECK(count_phi_smooth(20, 2, t).count_at(20) == 13);
    CHECK(count_phi_smooth(20, 20, t).count_at(20) == 20);
    CHECK(count_smooth(100, 5, t).count_at(100) == 34);
    CHECK(count_smooth(10, 10, t).count_at(10) == 10);
    CHECK(count_smooth(10, 2, t).count_at(10) == 4);
    CHECK(count_shifted_prime_smooth(20, 3, t).count_at(20) == 7);
    CHECK(count_shifted_prime_smooth(10, 2, t).count_at(10) == 3);
    CHECK(count_shifted_prime_smooth(2, 2, t).count_at(2) == 1);
}

TEST_CASE("brute-force equivalence on random (x,y) up to 1e4") {
    const SpfTable t = build_spf_table(10'000);
    for (std::uint64_t x : {137, 1000, 4096, 9999}) {
        for (std::uint64_t y : {2, 3, 11, 100}) {
            const oracle::Counts b = oracle::brute_counts(x, y);
            CHECK(count_phi_smooth(x, y, t).count_at(x) == b.phi_smooth);
            CHECK(count_smooth(x, y, t).count_at(x) == b.smooth);
            CHECK(count_shifted_prime_smooth(x, y, t).count_at(x) == b.shifted_prime_smooth);
        }
    }
}

TEST_CASE("parallel kernel agrees with the serial reference") {
    const SpfTable t = build_spf_table(200'000);
    const TripleCounts ref = reference_counts(200'000, 7, t);
    const AllCounts a = count_all(200'000, 7, t);
    CHECK(a.phi_smooth.count_at(200'000) == ref.phi_smooth);
    CHECK(a.smooth.count_at(200'000) == ref.smooth);
    CHECK(a.shifted_prime_smooth.count_at(200'000) == ref.shifted_prime_smooth);

    CountOptions one_thread;
    one_thread.threads = 1;
    CountOptions tiny_segments;
    tiny_segments.segment = 1024;
    CHECK(count_phi_smooth(200'000, 7, t, one_thread).count_at(200'000) == ref.phi_smooth);
    CHECK(count_phi_smooth(200'000, 7, t, tiny_segments).count_at(200'000) == ref.phi_smooth);
}

TEST_CASE("segmented mode matches the full-table kernels") {
    const SpfTable t = build_spf_table(120'000);
    for (std::uint64_t y : {2, 31, 313}) {
        const TripleCounts seg = segmented_counts(120'000, y);
        const AllCounts a = count_all(120'000, y, t);
        CHECK(seg.phi_smooth == a.phi_smooth.count_at(120'000));
        CHECK(seg.smooth == a.smooth.count_at(120'000));
        CHECK(seg.shifted_prime_smooth == a.shifted_prime_smooth.count_at(120'000));
    }
    // y >= x degenerate: everything qualifies
    const TripleCounts all = segmented_counts(5000, 5000);
    CHECK(all.phi_smooth == 5000);
    CHECK(all.smooth == 5000);
    CHECK(all.shifted_prime_smooth == 669);  // pi(5000)
    CHECK_THROWS_AS(segmented_counts(120'000, 1000), std::invalid_argument);
}

TEST_CASE("count series invariants") {
    const SpfTable t = build_spf_table(10'000);
    const AllCounts a = count_all(10'000, 7, t);

    // nonnegative, nondecreasing, counts(t) <= t
    for (const CountSeries* s :
         {&a.phi_smooth, &a.smooth, &a.shifted_prime_smooth}) {
        for (std::uint64_t n = 1; n <= 10'000; ++n) {
            CHECK(s->count_at(n) >= s->count_at(n - 1));
            CHECK(s->count_at(n) <= static_cast<std::int64_t>(n));
        }
    }

    // psi_pi(t) <= pi(t)
    std::int64_t pi = 0;
    for (std::uint64_t n = 1; n <= 10'000; ++n) {
        if (t.is_prime(n)) ++pi;
        CHECK(a.shifted_prime_smooth.count_at(n) <= pi);
    }

    // psi(x,y) <= x trivially and Phi >= #powers of two (phi(2^a) = 2^(a-1))
    std::int64_t pow2 = 0;
    for (std::uint64_t n = 1; n <= 10'000; n *= 2) ++pow2;
    CHECK(a.phi_smooth.count_at(10'000) >= pow2);
    CHECK(a.phi_smooth.count_at(10'000) <= 10'000);

    // every prime counted by psi_pi really is prime
    for (std::uint64_t n = 2; n <= 10'000; ++n)
        if (a.shifted_prime_smooth.contains(n)) CHECK(t.spf[n] == n);
}

TEST_CASE("monotone in y and phi-smooth saturates at y >= limit") {
    const SpfTable t = build_spf_table(5000);
    const CountSeries lo = count_phi_smooth(5000, 3, t);
    const CountSeries hi = count_phi_smooth(5000, 11, t);
    for (std::uint64_t n = 1; n <= 5000; n += 7) CHECK(lo.count_at(n) <= hi.count_at(n));

    const CountSeries sat = count_phi_smooth(5000, 5000, t);
    for (std::uint64_t n = 1; n <= 5000; n += 101)
        CHECK(sat.count_at(n) == static_cast<std::int64_t>(n));
}

TEST_CASE("divisor closure of the phi-smooth population") {
    const SpfTable t = build_spf_table(10'000);
    const CountSeries s = count_phi_smooth(10'000, 5, t);
    for (std::uint64_t d = 1; d <= 10'000; ++d) {
        if (s.contains(d)) continue;
        // d not counted: no multiple of d may be counted
        for (std::uint64_t n = d; n <= 10'000; n += d) CHECK(!s.contains(n));
    }
}

TEST_CASE("count errors") {
    const SpfTable t = build_spf_table(1000);
    CHECK_THROWS_AS(count_phi_smooth(2000, 2, t), std::out_of_range);
    CHECK_THROWS_AS(count_phi_smooth(100, 1, t), std::domain_error);
}

TEST_CASE("sparse series stores checkpoints only") {
    const SpfTable t = build_spf_table(2'000'000);
    const CountSeries s = count_smooth(1'500'000, 10, t);
    CHECK_FALSE(s.dense());
    CHECK(s.count_at(1'500'000) > 0);
    CHECK_THROWS_AS(s.count_at(777), std::out_of_range);
    // checkpoint values must match a fresh count
    const auto& [ct, cv] = s.checkpoints.front();
    CHECK(count_smooth(ct, 10, t).count_at(ct) == cv);
}

TEST_CASE("count series csv dump") {
    const SpfTable t = build_spf_table(100);
    const CountSeries s = count_smooth(5, 2, t);
    std::ostringstream os;
    s.write_csv(os);
    CHECK(os.str() == "t,count\n1,1\n2,2\n3,2\n4,3\n5,3\n");
}
