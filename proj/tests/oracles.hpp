#pragma once

// Reference values computed without the library's quadrature or density code.

#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>

namespace oracle {

inline constexpr double kPi = std::numbers::pi;

/// e * E1(1), the rate of a coverage curve exp(-gamma).
inline constexpr double kExpE1 = 0.59634736232319407;

/// (h^2 - ln(p_edge) / (pi lambda0))^(-alpha/2) at lambda0 = 1e-6, alpha = 3,
/// p_edge = 0.05, evaluated in 50-digit arithmetic.
inline constexpr double kNoiseH100 = 1.0572416996144993e-09;
inline constexpr double kNoiseH200 = 1.0097212796805333e-09;

/// Displacement kernel at u_y = u_x = 1000 m, d = 250 m, 50-digit arithmetic.
inline constexpr double kKernelExample = 1.2833048361075578e-03;

inline double noise_power(double lambda0, double h, double alpha, double p_edge)
{
    return std::pow(h * h - std::log(p_edge) / (kPi * lambda0), -alpha / 2.0);
}

inline double kernel_pdf(double u_y, double u_x, double d)
{
    const double lo = u_x - d;
    const double hi = u_x + d;
    return 2.0 * u_y / (kPi * std::sqrt((u_y * u_y - lo * lo) * (hi * hi - u_y * u_y)));
}

/// Composite Simpson rule with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, std::size_t n)
{
    const double step = (b - a) / static_cast<double>(n);
    double sum = f(a) + f(b);
    for (std::size_t i = 1; i < n; ++i) {
        sum += f(a + step * static_cast<double>(i)) * (i % 2 ? 4.0 : 2.0);
    }
    return sum * step / 3.0;
}

/// Interferer density at ground distance y after every point outside the disc
/// of radius u0 moved a distance d in a uniform direction: lambda0 times the
/// fraction of directions whose source point lies outside the disc. Midpoint
/// rule over n angles.
inline double displaced_density(double y, double u0, double d, double lambda0, std::size_t n)
{
    std::size_t outside = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double theta = 2.0 * kPi * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
        const double sx = y - d * std::cos(theta);
        const double sy = -d * std::sin(theta);
        if (sx * sx + sy * sy > u0 * u0) {
            ++outside;
        }
    }
    return lambda0 * static_cast<double>(outside) / static_cast<double>(n);
}

/// Interference-limited coverage of a PPP network with ground-level
/// transmitters, alpha = 4, Rayleigh fading.
inline double coverage_ground_alpha4(double gamma)
{
    const double s = std::sqrt(gamma);
    return 1.0 / (1.0 + s * std::atan(s));
}

/// Coverage once the serving DBS hovers above the UE and the interferer field
/// is homogeneous: alpha = 4, serving distance h.
inline double coverage_hover_alpha4(double gamma, double lambda0, double h, double n0, double p)
{
    const double s = std::sqrt(gamma);
    return std::exp(-kPi * lambda0 * h * h * s * std::atan(s) - gamma * n0 * std::pow(h, 4) / p);
}

/// UE-independent coverage for alpha in {3, 4} by Simpson's rule. The
/// interference exponent reduces to pi lambda0 r0^2 F(gamma) with
/// F = int_1^inf dw / (1 + w^(alpha/2) / gamma), here in the variable
/// w = 1 / s^2, which is smooth for alpha >= 3.
inline double coverage_nearest(double gamma, double lambda0, double h, double alpha, double n0,
                               double p)
{
    const double a = alpha / 2.0;
    const double f = simpson(
        [&](double s) { return 2.0 * std::pow(s, 2.0 * a - 3.0) / (std::pow(s, 2.0 * a) + 1.0 / gamma); },
        0.0, 1.0, 20000);
    const double u_max = std::sqrt(-std::log(1e-16) / (kPi * lambda0));
    return simpson(
        [&](double u0) {
            const double r2 = u0 * u0 + h * h;
            return 2.0 * kPi * lambda0 * u0 * std::exp(-kPi * lambda0 * u0 * u0)
                   * std::exp(-gamma * n0 * std::pow(r2, alpha / 2.0) / p)
                   * std::exp(-kPi * lambda0 * r2 * f);
        },
        0.0, u_max, 200000);
}

}  // namespace oracle
