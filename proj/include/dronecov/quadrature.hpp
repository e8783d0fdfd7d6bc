#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace dronecov {

struct Integral {
    double value = 0.0;
    double error = 0.0;  // absolute error estimate
};

/// Adaptive quadrature failed to reach its tolerance.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& where, double achieved)
        : std::runtime_error(where + ": quadrature did not converge (error estimate "
                             + std::to_string(achieved) + ")")
        , achieved_error(achieved)
    {}

    double achieved_error;
};

namespace quad {

inline constexpr unsigned kMaxDepth = 18;
inline constexpr double kRelTol = 1e-11;

/// Adaptive 31-point Gauss-Kronrod over a finite interval. Panels are split
/// until their error falls below rel_tol times the first whole-interval
/// estimate; the result is accepted when the total error estimate is below
/// max(abs_tol, 10 * rel_tol * L1 norm).
template <typename F>
Integral integrate(F&& f, double a, double b, double abs_tol, const char* where = "integrate",
                   double rel_tol = kRelTol)
{
    if (!(b > a)) {
        return {};
    }
    double error = 0.0;
    double l1 = 0.0;
    const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        f, a, b, kMaxDepth, rel_tol, &error, &l1);
    if (!std::isfinite(value) || error > std::max(abs_tol, 10.0 * rel_tol * l1)) {
        throw QuadratureError(where, error);
    }
    return {value, error};
}

/// Integral of f over [a, inf) for a > 0, where 0 <= f(u) <= bound * u^-q with
/// q > 1. Substitutes u = a e^y, which turns the power-law tail into an
/// exponentially decaying smooth integrand, and truncates at the U where the
/// analytic remainder bound * U^(1-q) / (q-1) drops below abs_tol / 10. The
/// remainder bound is added to the reported error.
template <typename F>
Integral integrate_power_tail(F&& f, double a, double q, double bound, double abs_tol,
                              const char* where = "integrate_power_tail",
                              double rel_tol = kRelTol)
{
    if (!(a > 0.0) || !(q > 1.0) || !(bound >= 0.0)) {
        throw std::domain_error("integrate_power_tail: requires a > 0, q > 1, bound >= 0");
    }
    const double cut = 0.1 * abs_tol;
    const double log_u_max = (std::log(bound / ((q - 1.0) * cut))) / (q - 1.0);
    const double y_max = std::max(log_u_max - std::log(a), 1.0);
    auto mapped = [&](double y) {
        const double u = a * std::exp(y);
        return f(u) * u;
    };
    Integral out = integrate(mapped, 0.0, y_max, abs_tol, where, rel_tol);
    out.error += bound * std::pow(a * std::exp(y_max), 1.0 - q) / (q - 1.0);
    return out;
}

/// Finite integral whose integrand behaves like sqrt(u - a) or sqrt(b - u)
/// at the endpoints. Substitutes u = mid - half * cos(phi) so the transformed
/// integrand is smooth on [0, pi].
template <typename F>
Integral integrate_sqrt_endpoints(F&& f, double a, double b, double abs_tol,
                                  const char* where = "integrate_sqrt_endpoints",
                                  double rel_tol = kRelTol)
{
    if (!(b > a)) {
        return {};
    }
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    auto mapped = [&](double phi) { return f(mid - half * std::cos(phi)) * half * std::sin(phi); };
    return integrate(mapped, 0.0, 3.14159265358979323846, abs_tol, where, rel_tol);
}

}  // namespace quad
}  // namespace dronecov
