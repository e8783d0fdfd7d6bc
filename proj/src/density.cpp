#include "dronecov/density.hpp"

#include "dronecov/params.hpp"
#include "dronecov/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace dronecov {

namespace {

// Arguments within this distance of +-1 are snapped onto the boundary value.
constexpr double kArccosGuard = 1e-12;

void require_nonnegative(double value, const char* what)
{
    if (!(value >= 0.0)) {
        throw std::domain_error(std::string(what) + " must be >= 0");
    }
}

}  // namespace

std::string to_string(Region region)
{
    switch (region) {
    case Region::Outer:
        return "outer";
    case Region::Ring:
        return "ring";
    case Region::Inner:
        return "inner";
    }
    return "unknown";
}

Region classify_region(double u_x, double u0, double vt)
{
    if (u_x >= u0 + vt) {
        return Region::Outer;
    }
    if (u_x <= std::abs(u0 - vt)) {
        return Region::Inner;
    }
    return Region::Ring;
}

double initial_density(double u_x, double u0, double lambda0)
{
    require_nonnegative(u_x, "u_x");
    require_nonnegative(u0, "u0");
    return u_x > u0 ? lambda0 : 0.0;
}

double kernel_pdf(double u_y, double u_x, double d)
{
    require_nonnegative(u_x, "u_x");
    require_nonnegative(d, "d");
    const double lo = std::abs(u_x - d);
    const double hi = u_x + d;
    if (u_y < lo || u_y > hi) {
        return 0.0;
    }
    if (u_y == lo || u_y == hi) {
        return std::numeric_limits<double>::infinity();
    }
    const double prod = (u_y - lo) * (u_y + lo) * (hi - u_y) * (hi + u_y);
    return 2.0 * u_y / (kPi * std::sqrt(prod));
}

double kernel_mass(double u_x, double d, double lo, double hi)
{
    require_nonnegative(u_x, "u_x");
    require_nonnegative(d, "d");
    const double a = std::abs(u_x - d);
    const double b = u_x + d;
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    if (half == 0.0) {
        // all mass sits at u_y = a
        return (a >= lo && a <= hi) ? 1.0 : 0.0;
    }
    const double from = std::max(lo, a);
    const double to = std::min(hi, b);
    if (!(to > from)) {
        return 0.0;
    }
    const double theta_lo = std::asin(std::clamp((from - mid) / half, -1.0, 1.0));
    const double theta_hi = std::asin(std::clamp((to - mid) / half, -1.0, 1.0));
    // (u_y - a)(b - u_y) = half^2 cos^2(theta) cancels against the Jacobian.
    auto integrand = [&](double theta) {
        const double u_y = mid + half * std::sin(theta);
        return 2.0 * u_y / (kPi * std::sqrt((u_y + a) * (b + u_y)));
    };
    return quad::integrate(integrand, theta_lo, theta_hi, 1e-12, "kernel_mass").value;
}

double triangle_angle(double a, double b, double c)
{
    const double denom = 2.0 * a * b;
    // 1 - cos C and 1 + cos C, both scaled by 2ab
    const double one_minus = (c - (a - b)) * (c + (a - b));
    const double one_plus = ((a + b) - c) * ((a + b) + c);
    if (one_minus <= kArccosGuard * denom) {
        return 0.0;
    }
    if (one_plus <= kArccosGuard * denom) {
        return kPi;
    }
    return 2.0 * std::atan2(std::sqrt(one_minus), std::sqrt(one_plus));
}

double ring_fraction(double u_x, double u0, double vt)
{
    // arccos((u0^2 - u_x^2 - vt^2) / (2 u_x vt)) = pi - (angle opposite u0)
    return 1.0 - triangle_angle(u_x, vt, u0) / kPi;
}

double interferer_density(double u_x, double u0, double t, double v, double lambda0)
{
    require_nonnegative(u_x, "u_x");
    require_nonnegative(u0, "u0");
    require_nonnegative(t, "t");
    require_nonnegative(v, "v");
    require_nonnegative(lambda0, "lambda0");
    const double vt = v * t;
    if (vt == 0.0) {
        return initial_density(u_x, u0, lambda0);
    }
    switch (classify_region(u_x, u0, vt)) {
    case Region::Outer:
        return lambda0;
    case Region::Inner:
        // t > u0 / v: the serving DBS has already reached o'
        return vt > u0 ? lambda0 : 0.0;
    case Region::Ring:
        break;
    }
    return lambda0 * ring_fraction(u_x, u0, vt);
}

DensityProfile make_density_profile(double u0, double t, double v, double lambda0, double step,
                                    double u_max)
{
    if (!(step > 0.0)) {
        throw std::invalid_argument("density grid step must be > 0");
    }
    DensityProfile profile{u0, t, v, lambda0, {}};
    const double vt = v * t;
    if (u_max <= 0.0) {
        u_max = u0 + vt + 2000.0;
    }
    const auto n = static_cast<std::size_t>(std::floor(u_max / step + 1e-9)) + 1;
    profile.grid.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = static_cast<double>(i) * step;
        profile.grid.push_back({u, interferer_density(u, u0, t, v, lambda0),
                                classify_region(u, u0, vt)});
    }
    return profile;
}

double expected_annulus_count(double lo, double hi, double u0, double t, double v, double lambda0)
{
    require_nonnegative(lo, "lo");
    if (!(hi > lo)) {
        return 0.0;
    }
    const double vt = v * t;
    if (vt == 0.0) {
        const double from = std::max(lo, u0);
        return hi > from ? lambda0 * kPi * (hi * hi - from * from) : 0.0;
    }
    const double inner = std::abs(u0 - vt);
    const double outer = u0 + vt;
    auto disc = [&](double a, double b) { return lambda0 * kPi * (b * b - a * a); };

    double total = 0.0;
    if (lo < inner && vt > u0) {
        total += disc(lo, std::min(hi, inner));
    }
    if (hi > outer) {
        total += disc(std::max(lo, outer), hi);
    }
    const double ring_lo = std::max(lo, inner);
    const double ring_hi = std::min(hi, outer);
    if (ring_hi > ring_lo) {
        auto integrand = [&](double u) { return 2.0 * kPi * u * ring_fraction(u, u0, vt); };
        total += lambda0 * quad::integrate_sqrt_endpoints(integrand, ring_lo, ring_hi, 1e-10 * (ring_hi + 1.0),
                                           "expected_annulus_count")
                               .value;
    }
    return total;
}

void write_density_csv(std::ostream& os, const DensityProfile& profile)
{
    const auto old_precision = os.precision(17);
    os << "u_x_m,lambda_per_m2,region\n";
    for (const auto& s : profile.grid) {
        os << s.u_x << ',' << s.lambda << ',' << to_string(s.region) << '\n';
    }
    os.precision(old_precision);
}

}  // namespace dronecov
