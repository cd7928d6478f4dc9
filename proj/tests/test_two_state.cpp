#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lds/two_state.hpp"
#include "oracles.hpp"

using namespace lds;

namespace {
constexpr double pi = std::numbers::pi;
const double sqrt2 = std::sqrt(2.0);
}  // namespace

TEST_CASE("Rabi eigensystem") {
    const auto uncoupled = rabi_eigensystem(0.0);
    CHECK(uncoupled.e_plus == 0.5);
    CHECK(uncoupled.e_minus == 0.0);
    CHECK(uncoupled.mixing_angle == 0.0);

    // 8 v^2 = 1
    const auto mid = rabi_eigensystem(1.0 / (2.0 * sqrt2));
    CHECK(mid.e_plus == doctest::Approx((1.0 + sqrt2) / 4.0).epsilon(1e-15));
    CHECK(mid.e_minus == doctest::Approx((1.0 - sqrt2) / 4.0).epsilon(1e-15));

    const auto sys = rabi_eigensystem(0.1);
    const auto [hi, lo] = oracle::rabi_eigenvalues_charpoly(0.1);
    CHECK(sys.e_plus == doctest::Approx(hi).epsilon(1e-14));
    CHECK(sys.e_minus == doctest::Approx(lo).epsilon(1e-14));
    CHECK(sys.e_plus == doctest::Approx(0.509808).epsilon(1e-5));
    CHECK(sys.e_minus == doctest::Approx(-0.009808).epsilon(1e-4));

    CHECK_THROWS_AS(rabi_eigensystem(-0.1), std::domain_error);
}

TEST_CASE("eigenvalues sum to 1/2 across depths") {
    for (double v = 0.0; v <= 3.0; v += 0.01) {
        const auto sys = rabi_eigensystem(v);
        CHECK(sys.e_plus + sys.e_minus == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(sys.mixing_angle >= 0.0);
        CHECK(sys.mixing_angle < pi / 2.0);
    }
}

TEST_CASE("oscillation amplitude") {
    CHECK(oscillation_amplitude(0.0) == 1.0);  // analytic limit of the 0/0 form
    CHECK(oscillation_amplitude(node_location(1)) < 1e-12);

    // against amplitude extracted from a long two-level matrix-power run
    const double a = oscillation_amplitude(0.1);
    CHECK(a == doctest::Approx(oracle::extracted_amplitude(0.1)).epsilon(2e-4));
    CHECK(a == doctest::Approx(0.951117).epsilon(1e-5));
}

TEST_CASE("oscillation frequency") {
    CHECK(oscillation_frequency(0.0) == 0.0);

    // weak-coupling slope 4 sqrt(2), with the relative error shrinking ~ v^2
    double prev = 1.0;
    for (const double v : {1e-3, 1e-4, 1e-5}) {
        const double rel = std::abs(oscillation_frequency(v) - 4.0 * sqrt2 * v) / v;
        CHECK(rel < prev);
        prev = rel;
    }
    CHECK(std::abs(oscillation_frequency(1e-4) - 4.0 * sqrt2 * 1e-4) / 1e-4 < 1e-6);

    // eigenphase difference of the numerically diagonalized period matrix
    const double phi = oscillation_frequency(0.1);
    CHECK(phi == doctest::Approx(oracle::two_level_eigenphase_gap(0.1)).epsilon(1e-12));
    CHECK(phi == doctest::Approx(0.5645518).epsilon(1e-6));
}

TEST_CASE("amplitude nodes coincide with frequency pi") {
    for (int m = 1; m <= 5; ++m) {
        const double v = node_location(m);
        CHECK(oscillation_amplitude(v) < 1e-12);
        CHECK(std::abs(oscillation_frequency(v) - pi) < 1e-9);
    }
}

TEST_CASE("amplitude and frequency are tame on [0, 2]") {
    double prev_phi = oscillation_frequency(0.0);
    for (int i = 0; i <= 2000; ++i) {
        const double v = i * 1e-3;
        const double a = oscillation_amplitude(v);
        const double phi = oscillation_frequency(v);
        REQUIRE(a >= 0.0);
        REQUIRE(a <= 1.0);
        REQUIRE(phi >= 0.0);
        REQUIRE(phi < 2.0 * pi);
        REQUIRE(std::abs(phi - prev_phi) < 0.1);  // continuity on the grid
        prev_phi = phi;
    }
}

TEST_CASE("two-state populations") {
    const auto start = two_state_populations(0, 0.37);
    CHECK(start.p0 == 1.0);
    CHECK(start.p_plus == 0.0);

    // no pulse-to-pulse transfer at a node
    const double vnode = node_location(1);
    for (int n = 0; n <= 100; ++n) {
        const auto p = two_state_populations(n, vnode);
        CHECK(std::abs(p.p0 - 1.0) < 1e-12);
    }

    // populations sum to one exactly
    for (const double v : {0.01, 0.3, 0.7, 1.9}) {
        for (int n = 0; n <= 50; n += 7) {
            const auto p = two_state_populations(n, v);
            CHECK(p.p0 + p.p_plus == 1.0);
        }
    }
}

TEST_CASE("closed form matches two-level matrix powers") {
    for (const double v : {0.01, 0.05, 0.1, 0.3}) {
        const auto ref = oracle::two_level_p0_series(v, 200);
        for (int n = 0; n <= 200; ++n) {
            const auto p = two_state_populations(n, v);
            REQUIRE(p.p0 == doctest::Approx(ref[static_cast<size_t>(n)]).epsilon(1e-10));
        }
    }
}

TEST_CASE("quadratic transfer estimate") {
    CHECK(quadratic_transfer(0, 0.5).p_plus == 0.0);

    const auto single = quadratic_transfer(1, 0.01);
    CHECK(single.p_plus == doctest::Approx(8e-4).epsilon(1e-14));
    CHECK_FALSE(single.clamped);
    CHECK(single.within_weak_limit);

    // the quadratic tracks the closed form to ~3% while N phi / 2 is small
    const auto exact = two_state_populations(5, 0.01);
    CHECK(quadratic_transfer(5, 0.01).p_plus ==
          doctest::Approx(exact.p_plus).epsilon(0.03));

    const auto big = quadratic_transfer(100, 0.1);
    CHECK(big.p_plus == 1.0);
    CHECK(big.clamped);
    CHECK_FALSE(big.within_weak_limit);
}

TEST_CASE("strong-coupling amplitude envelope") {
    for (int m = 1; m <= 4; ++m)
        CHECK(strong_coupling_amplitude(m / sqrt2) < 1e-12);
    CHECK(strong_coupling_amplitude(1.0 / (2.0 * sqrt2)) ==
          doctest::Approx(1.0).epsilon(1e-12));

    // envelope approach: the gap between the closed form and its
    // strong-coupling limit shrinks like 1/v (phase offset pi/(8 sqrt(2) v))
    auto gap = [](double v) {
        return std::abs(oscillation_amplitude(v) - strong_coupling_amplitude(v));
    };
    double worst4 = 0.0, worst40 = 0.0;
    for (double v = 4.0; v <= 6.0; v += 1e-3) worst4 = std::max(worst4, gap(v));
    for (double v = 40.0; v <= 60.0; v += 1e-3) worst40 = std::max(worst40, gap(v));
    CHECK(gap(5.0) == doctest::Approx(0.02633).epsilon(1e-2));
    CHECK(worst4 < 0.075);   // measured 0.0702, consistent with pi/(8 sqrt(2) v)
    CHECK(worst40 < 0.0075);  // measured 0.00694
    CHECK(worst40 < 0.2 * worst4);

    CHECK_THROWS_AS(strong_coupling_amplitude(0.0), std::domain_error);
}

TEST_CASE("node locations") {
    CHECK(node_location(1) == doctest::Approx(std::sqrt(3.0) / (2.0 * sqrt2)).epsilon(1e-15));
    CHECK(node_location(1) == doctest::Approx(0.61237).epsilon(1e-4));
    CHECK(node_location(2) == doctest::Approx(std::sqrt(15.0) / (2.0 * sqrt2)).epsilon(1e-15));
    CHECK(node_location(2) == doctest::Approx(1.3693).epsilon(1e-4));
    // large-m asymptote m / sqrt(2)
    CHECK(node_location(1000) / 1000.0 == doctest::Approx(1.0 / sqrt2).epsilon(1e-6));
    CHECK_THROWS_AS(node_location(0), std::domain_error);
    CHECK_THROWS_AS(node_location(-3), std::domain_error);
}

TEST_CASE("analytics aggregate is consistent with the parts") {
    const auto all = analyze_two_state(0.23);
    CHECK(all.amplitude == oscillation_amplitude(0.23));
    CHECK(all.frequency == oscillation_frequency(0.23));
    CHECK(all.e_plus == rabi_eigensystem(0.23).e_plus);
    CHECK(all.v_eff == 0.23);
}
