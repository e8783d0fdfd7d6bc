#include "dronecov/analytic.hpp"
#include "dronecov/params.hpp"
#include "dronecov/quadrature.hpp"

#include "../oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace dronecov;

namespace {

NetworkParams section_params()
{
    return NetworkParams{}.with_dimensioned_noise();
}

}  // namespace

TEST_CASE("model 1 coverage against the Simpson oracle")
{
    for (double alpha : {3.0, 4.0}) {
        NetworkParams p;
        p.alpha = alpha;
        p = p.with_dimensioned_noise();
        for (double g_db : {-5.0, 0.0, 5.0, 10.0}) {
            const double gamma = db_to_linear(g_db);
            const double expected = oracle::coverage_nearest(gamma, p.lambda0, p.h, p.alpha, p.N0, p.P);
            CHECK(coverage_model1(gamma, p).value == doctest::Approx(expected).epsilon(1e-8));
        }
    }
}

TEST_CASE("ground-level interference-limited closed form")
{
    NetworkParams p;
    p.h = 1e-3;
    p.alpha = 4.0;
    p.N0 = 0.0;
    for (double g_db : {-10.0, -5.0, 0.0, 5.0, 10.0, 20.0}) {
        const double gamma = db_to_linear(g_db);
        CHECK(coverage_model1(gamma, p).value
              == doctest::Approx(oracle::coverage_ground_alpha4(gamma)).epsilon(1e-6));
    }
}

TEST_CASE("model 2 approaches the hovering limit")
{
    NetworkParams p;
    p.alpha = 4.0;
    p = p.with_dimensioned_noise();
    for (double g_db : {-5.0, 0.0, 5.0}) {
        const double gamma = db_to_linear(g_db);
        const double limit = oracle::coverage_hover_alpha4(gamma, p.lambda0, p.h, p.N0, p.P);
        CHECK(coverage_model2(gamma, 1e4, p).value == doctest::Approx(limit).epsilon(1e-8));
    }
}

TEST_CASE("model 2 equals model 1 at t = 0")
{
    const NetworkParams p = section_params();
    for (double g_db = -10.0; g_db < 10.0; g_db += 1.0) {
        const double gamma = db_to_linear(g_db);
        CHECK(std::abs(coverage_model2(gamma, 0.0, p).value - coverage_model1(gamma, p).value)
              <= 1e-8);
    }
}

TEST_CASE("model 2 dominates model 1 for t > 0")
{
    const NetworkParams p = section_params();
    for (double g_db : {-5.0, 0.0, 5.0}) {
        const double gamma = db_to_linear(g_db);
        const auto m1 = coverage_model1(gamma, p);
        for (double t : {1.0, 20.0, 40.0, 50.0, 100.0, 200.0}) {
            const auto m2 = coverage_model2(gamma, t, p);
            CHECK(m2.value + m2.quadrature_error_estimate + m1.quadrature_error_estimate
                  >= m1.value);
        }
    }
}

TEST_CASE("coverage at t = 200 exceeds coverage at t = 20")
{
    const NetworkParams p = section_params();
    for (double g_db : {-5.0, 0.0, 5.0}) {
        const double gamma = db_to_linear(g_db);
        CHECK(coverage_model2(gamma, 200.0, p).value
              >= coverage_model2(gamma, 20.0, p).value - 1e-6);
    }
}

TEST_CASE("coverage is a probability and decreases in gamma")
{
    const NetworkParams p = section_params();
    for (double t : {0.0, 30.0, 200.0}) {
        double prev = 1.0;
        for (double g_db = -20.0; g_db <= 30.0; g_db += 2.5) {
            const double c = coverage(db_to_linear(g_db), t, ServiceModel::UeDependent, p).value;
            CHECK(c >= 0.0);
            CHECK(c <= prev + 1e-12);
            prev = c;
        }
    }
}

TEST_CASE("noise lowers coverage")
{
    const NetworkParams p = section_params();
    for (double g_db : {-5.0, 0.0, 5.0}) {
        const double gamma = db_to_linear(g_db);
        CHECK(coverage_model1(gamma, p.without_noise()).value > coverage_model1(gamma, p).value);
        CHECK(coverage_model2(gamma, 50.0, p.without_noise()).value
              > coverage_model2(gamma, 50.0, p).value);
    }
}

TEST_CASE("model 1 coverage does not depend on time")
{
    const NetworkParams p = section_params();
    const double gamma = 1.0;
    CHECK(coverage(gamma, 0.0, ServiceModel::UeIndependent, p).value
          == coverage(gamma, 200.0, ServiceModel::UeIndependent, p).value);
}

TEST_CASE("coverage result metadata")
{
    const auto c = coverage_model2(1.0, 50.0, section_params());
    CHECK(c.method == Method::Analytic);
    CHECK(c.half_width == 0.0);
    CHECK(c.quadrature_error_estimate >= 0.0);
    CHECK(c.quadrature_error_estimate < 1e-7);
    CHECK(to_string(Method::Analytic) == "analytic");
    CHECK(to_string(Method::MonteCarlo) == "monte-carlo");
}

TEST_CASE("coverage rejects invalid input")
{
    const NetworkParams p = section_params();
    CHECK_THROWS_AS(coverage_model2(1.0, -1.0, p), std::domain_error);
    CHECK_THROWS_AS(coverage_model1(-1.0, p), std::domain_error);
    NetworkParams bad = p;
    bad.alpha = 2.0;
    CHECK_THROWS_AS(coverage_model1(1.0, bad), std::invalid_argument);
}

TEST_CASE("rate path: exponential coverage curve")
{
    const auto r = rate_from_coverage([](double g) { return std::exp(-g); });
    CHECK(std::abs(r.value - oracle::kExpE1) <= 1e-9);
    CHECK(r.gamma_max > 1.0);
}

TEST_CASE("rate path: coverage 1 / (1 + gamma)^2")
{
    // Integral of (1 + g)^-3 over (0, inf) is 1/2.
    const auto r = rate_from_coverage([](double g) { return 1.0 / ((1.0 + g) * (1.0 + g)); });
    CHECK(r.value == doctest::Approx(0.5).epsilon(1e-7));
}

TEST_CASE("rate ordering claims")
{
    auto with = [](double h, double alpha) {
        NetworkParams p;
        p.h = h;
        p.alpha = alpha;
        return p.with_dimensioned_noise();
    };
    for (double t : {0.0, 100.0}) {
        CHECK(rate(t, ServiceModel::UeDependent, with(100.0, 3.5)).value
              > rate(t, ServiceModel::UeDependent, with(100.0, 2.5)).value);
        CHECK(rate(t, ServiceModel::UeDependent, with(100.0, 3.0)).value
              > rate(t, ServiceModel::UeDependent, with(200.0, 3.0)).value);
    }
}

TEST_CASE("rate in nats converts to bits")
{
    CHECK(kNatsToBits == doctest::Approx(1.0 / std::log(2.0)).epsilon(1e-15));
}

TEST_CASE("quadrature helpers")
{
    const auto a = quad::integrate([](double x) { return std::sin(x); }, 0.0, oracle::kPi, 1e-12);
    CHECK(a.value == doctest::Approx(2.0).epsilon(1e-12));
    const auto b = quad::integrate_sqrt_endpoints(
        [](double x) { return 1.0 / std::sqrt(1.0 - x * x); }, -1.0, 1.0, 1e-12);
    CHECK(b.value == doctest::Approx(oracle::kPi).epsilon(1e-10));
    // Integral of x^-3 over (1, inf) with tail bound 1.
    const auto c = quad::integrate_power_tail([](double x) { return std::pow(x, -3.0); }, 1.0, 3.0,
                                              1.0, 1e-12);
    CHECK(c.value == doctest::Approx(0.5).epsilon(1e-10));
    CHECK_THROWS_AS(quad::integrate([](double) { return NAN; }, 0.0, 1.0, 1e-12), QuadratureError);
}
