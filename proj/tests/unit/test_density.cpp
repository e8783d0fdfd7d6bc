#include "dronecov/density.hpp"
#include "dronecov/monte_carlo.hpp"
#include "dronecov/params.hpp"

#include "../oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <limits>
#include <random>
#include <sstream>

using namespace dronecov;

TEST_CASE("initial_density examples")
{
    CHECK(initial_density(600.0, 500.0, 1e-6) == 1e-6);
    CHECK(initial_density(400.0, 500.0, 1e-6) == 0.0);
    CHECK(initial_density(500.0, 500.0, 1e-6) == 0.0);
}

TEST_CASE("kernel_pdf examples")
{
    CHECK(kernel_pdf(1000.0, 1000.0, 250.0)
          == doctest::Approx(oracle::kKernelExample).epsilon(1e-12));
    CHECK(kernel_pdf(2000.0, 1000.0, 250.0) == 0.0);
    CHECK(kernel_pdf(100.0, 1000.0, 250.0) == 0.0);
    CHECK(std::isinf(kernel_pdf(750.0, 1000.0, 250.0)));
    CHECK(std::isinf(kernel_pdf(1250.0, 1000.0, 250.0)));
}

TEST_CASE("kernel_pdf agrees with the direct formula inside the support")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> dist(1.0, 5000.0);
    std::uniform_real_distribution<double> frac(0.01, 0.99);
    for (int i = 0; i < 1000; ++i) {
        const double u_x = dist(rng);
        const double d = dist(rng);
        const double lo = std::abs(u_x - d);
        const double u_y = lo + frac(rng) * (u_x + d - lo);
        CHECK(kernel_pdf(u_y, u_x, d)
              == doctest::Approx(oracle::kernel_pdf(u_y, u_x, d)).epsilon(1e-9));
    }
}

TEST_CASE("kernel_pdf matches a histogram of uniform-angle displacements")
{
    // 10^7 points moved 250 m from u_x = 1000 m; bin [995, 1005).
    const double u_x = 1000.0;
    const double d = 250.0;
    const std::size_t n = 10000000;
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * oracle::kPi);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double th = angle(rng);
        const double u_y = std::hypot(u_x + d * std::cos(th), d * std::sin(th));
        hits += (u_y >= 995.0 && u_y < 1005.0) ? 1 : 0;
    }
    const double p = kernel_mass(u_x, d, 995.0, 1005.0);
    const double sd = std::sqrt(static_cast<double>(n) * p * (1.0 - p));
    CHECK(std::abs(static_cast<double>(hits) - static_cast<double>(n) * p) <= 4.0 * sd);
    // The bin average is close to the point value at the bin centre.
    CHECK(p / 10.0 == doctest::Approx(oracle::kKernelExample).epsilon(1e-3));
}

TEST_CASE("kernel_mass normalizes over the support")
{
    CHECK(kernel_mass(1000.0, 250.0, 750.0, 1250.0) == doctest::Approx(1.0).epsilon(1e-10));
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> dist(1.0, 5000.0);
    for (int i = 0; i < 100; ++i) {
        const double u_x = dist(rng);
        const double d = dist(rng);
        CHECK(std::abs(kernel_mass(u_x, d, std::abs(u_x - d), u_x + d) - 1.0) <= 1e-6);
    }
    // Mass of a sub-interval against Simpson on the singularity-free form.
    const double a = 800.0;
    const double b = 1100.0;
    const double simpson = oracle::simpson(
        [](double u) { return oracle::kernel_pdf(u, 1000.0, 250.0); }, a, b, 20000);
    CHECK(kernel_mass(1000.0, 250.0, a, b) == doctest::Approx(simpson).epsilon(1e-8));
}

TEST_CASE("interferer_density example values")
{
    const double l0 = 1e-6;
    // Ring at u_x = 500, u0 = 500, vt = 250: arccos(-1/4) / pi.
    CHECK(interferer_density(500.0, 500.0, 20.0, 12.5, l0)
          == doctest::Approx(l0 * std::acos(-0.25) / oracle::kPi).epsilon(1e-13));
    CHECK(interferer_density(500.0, 500.0, 20.0, 12.5, l0) == doctest::Approx(5.80430623255166e-7).epsilon(1e-12));
    CHECK(interferer_density(800.0, 500.0, 20.0, 12.5, l0) == l0);
    CHECK(interferer_density(100.0, 500.0, 20.0, 12.5, l0) == 0.0);
    CHECK(interferer_density(100.0, 500.0, 200.0, 12.5, l0) == l0);
    // vt = 0 falls back to the initial density.
    CHECK(interferer_density(500.0, 500.0, 0.0, 12.5, l0) == 0.0);
    CHECK(interferer_density(501.0, 500.0, 0.0, 12.5, l0) == l0);
    CHECK(interferer_density(400.0, 500.0, 100.0, 0.0, l0) == 0.0);
}

TEST_CASE("interferer_density matches the angular-average oracle")
{
    const double l0 = 1e-6;
    for (double u0 : {100.0, 500.0, 1500.0}) {
        for (double d : {50.0, 250.0, 625.0, 2500.0}) {
            for (double y = 5.0; y < u0 + d + 300.0; y += 97.0) {
                // Midpoint rule on an indicator: error below 2 / n.
                const std::size_t n = 1 << 18;
                const double expected = oracle::displaced_density(y, u0, d, l0, n);
                CHECK(std::abs(interferer_density(y, u0, d, 1.0, l0) - expected)
                      <= 3.0 / static_cast<double>(n) * l0);
            }
        }
    }
}

TEST_CASE("interferer_density bounds and region labels")
{
    const double l0 = 1e-6;
    for (double t : {0.0, 20.0, 40.0, 50.0, 200.0}) {
        const auto profile = make_density_profile(500.0, t, 12.5, l0, 5.0);
        const double vt = 12.5 * t;
        for (const auto& s : profile.grid) {
            CHECK(s.lambda >= 0.0);
            CHECK(s.lambda <= l0);
            if (s.u_x >= 500.0 + vt) {
                CHECK(s.region == Region::Outer);
            } else if (s.u_x <= std::abs(500.0 - vt)) {
                CHECK(s.region == Region::Inner);
            } else {
                CHECK(s.region == Region::Ring);
            }
        }
    }
    // Degenerate ring: outer wins.
    CHECK(classify_region(500.0, 500.0, 0.0) == Region::Outer);
}

TEST_CASE("interferer_density is continuous at the region boundaries")
{
    const double l0 = 1e-6;
    for (double u0 : {100.0, 500.0, 3000.0}) {
        for (double vt : {10.0, 250.0, 625.0, 2500.0}) {
            const double outer = u0 + vt;
            CHECK(std::abs(l0 * ring_fraction(outer, u0, vt) - l0) <= 1e-12 * l0);
            const double inner = std::abs(u0 - vt);
            const double inner_value = vt > u0 ? l0 : 0.0;
            CHECK(std::abs(l0 * ring_fraction(inner, u0, vt) - inner_value) <= 1e-12 * l0);
            const double below = std::nextafter(outer, 0.0);
            const double above = std::nextafter(outer, 1e300);
            CHECK(std::abs(interferer_density(below, u0, vt, 1.0, l0)
                           - interferer_density(above, u0, vt, 1.0, l0))
                  <= 1e-12 * l0);
        }
    }
}

TEST_CASE("interferer_density at u_x = 0")
{
    const double l0 = 1e-6;
    CHECK(interferer_density(0.0, 500.0, 20.0, 12.5, l0) == 0.0);
    CHECK(interferer_density(0.0, 500.0, 200.0, 12.5, l0) == l0);
}

TEST_CASE("interferer_density rejects negative arguments")
{
    CHECK_THROWS_AS(interferer_density(-1.0, 500.0, 20.0, 12.5, 1e-6), std::domain_error);
    CHECK_THROWS_AS(interferer_density(1.0, -500.0, 20.0, 12.5, 1e-6), std::domain_error);
    CHECK_THROWS_AS(interferer_density(1.0, 500.0, -20.0, 12.5, 1e-6), std::domain_error);
    CHECK_THROWS_AS(kernel_pdf(1.0, -1.0, 1.0), std::domain_error);
}

TEST_CASE("triangle_angle is accurate for narrow triangles")
{
    CHECK(triangle_angle(3.0, 4.0, 5.0) == doctest::Approx(oracle::kPi / 2.0).epsilon(1e-15));
    CHECK(triangle_angle(1.0, 1.0, 1.0) == doctest::Approx(oracle::kPi / 3.0).epsilon(1e-15));
    // Narrow isosceles triangle: exact angle 2 asin(c / 2a). A naive arccos
    // would lose about half the digits here.
    const double angle = triangle_angle(1000.0, 1000.0, 0.1);
    CHECK(angle == doctest::Approx(2.0 * std::asin(0.5e-4)).epsilon(1e-12));
    // Cosines within 1e-12 of 1 snap to a zero angle.
    CHECK(triangle_angle(1000.0, 1000.0, 1e-3) == 0.0);
    CHECK(triangle_angle(1.0, 2.0, 10.0) == doctest::Approx(oracle::kPi));
    CHECK(triangle_angle(1.0, 2.0, 0.5) == 0.0);
}

TEST_CASE("density profile and CSV for the figure settings")
{
    const double l0 = 1e-6;
    // At t = 200 the displaced exclusion disc (radius 500 m, 2500 m away)
    // still hides asin(0.2) / pi of the directions at the ring's midpoint.
    const auto at200 = make_density_profile(500.0, 200.0, 12.5, l0, 0.5);
    double min_ratio = 1.0;
    for (const auto& s : at200.grid) {
        min_ratio = std::min(min_ratio, s.lambda / l0);
    }
    CHECK(min_ratio == doctest::Approx(1.0 - std::asin(0.2) / oracle::kPi).epsilon(1e-6));
    const auto at20 = make_density_profile(500.0, 20.0, 12.5, l0);
    for (const auto& s : at20.grid) {
        if (s.u_x < 250.0) {
            CHECK(s.lambda == 0.0);
        }
    }
    const auto at0 = make_density_profile(500.0, 0.0, 12.5, l0);
    for (const auto& s : at0.grid) {
        CHECK(s.lambda == (s.u_x > 500.0 ? l0 : 0.0));
    }

    std::ostringstream os;
    write_density_csv(os, make_density_profile(500.0, 20.0, 12.5, l0, 250.0, 1000.0));
    std::istringstream in(os.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "u_x_m,lambda_per_m2,region");
    std::getline(in, line);
    CHECK(line == "0,0,inner");
    int rows = 1;
    while (std::getline(in, line)) {
        ++rows;
    }
    CHECK(rows == 5);
}

TEST_CASE("expected_annulus_count integrates the density")
{
    const double l0 = 1e-6;
    // Outer-only annulus: closed form.
    CHECK(expected_annulus_count(1000.0, 2000.0, 500.0, 20.0, 12.5, l0)
          == doctest::Approx(l0 * oracle::kPi * (2000.0 * 2000.0 - 1000.0 * 1000.0)).epsilon(1e-14));
    // Every displaced exclusion disc lies inside a disc of radius R >= u0 + vt,
    // so that disc keeps lambda0 pi (R^2 - u0^2) expected points.
    for (double vt : {100.0, 250.0, 500.0, 625.0, 2500.0}) {
        const double u0 = 500.0;
        const double r = u0 + vt;
        CHECK(expected_annulus_count(0.0, r, u0, vt, 1.0, l0)
              == doctest::Approx(l0 * oracle::kPi * (r * r - u0 * u0)).epsilon(1e-10));
        const double inner = std::abs(u0 - vt);
        const double inner_count = vt > u0 ? l0 * oracle::kPi * inner * inner : 0.0;
        CHECK(expected_annulus_count(inner, r, u0, vt, 1.0, l0)
              == doctest::Approx(l0 * oracle::kPi * (r * r - u0 * u0) - inner_count).epsilon(1e-10));
    }
}

TEST_CASE("displaced exclusion histogram is deterministic")
{
    const auto a = displaced_exclusion_histogram(500.0, 625.0, 200000, 10.0, 2000.0, 9);
    const auto b = displaced_exclusion_histogram(500.0, 625.0, 200000, 10.0, 2000.0, 9);
    CHECK(a.counts == b.counts);
    CHECK(a.counts.size() == 200);
}
