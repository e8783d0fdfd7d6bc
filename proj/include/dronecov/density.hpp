#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dronecov {

/// Radial region of the interferer field relative to the serving DBS's
/// initial distance u0 and the travelled distance vt.
enum class Region {
    Outer,  // u_x >= u0 + vt: untouched by the exclusion zone
    Ring,   // |u0 - vt| < u_x < u0 + vt: partially refilled
    Inner,  // u_x <= |u0 - vt|: empty before arrival, full afterwards
};

std::string to_string(Region region);

/// Region label for a ground distance. Outer takes precedence when the ring
/// is degenerate (vt = 0).
Region classify_region(double u_x, double u0, double vt);

/// Interferer density at t = 0: zero inside the exclusion disc (boundary included).
double initial_density(double u_x, double u0, double lambda0);

/// Pdf of the new ground distance u_y of a point at ground distance u_x after a
/// displacement of length d in a uniformly random direction. Zero outside
/// (|u_x - d|, u_x + d); +inf exactly at the two support endpoints.
double kernel_pdf(double u_y, double u_x, double d);

/// Probability mass of kernel_pdf over [lo, hi], integrated with the
/// substitution u_y = mid + half * sin(theta) that removes both endpoint
/// singularities.
double kernel_mass(double u_x, double d, double lo, double hi);

/// Interferer density at time t for the UE-dependent service model when the
/// serving DBS started at ground distance u0 and all DBSs move at speed v.
double interferer_density(double u_x, double u0, double t, double v, double lambda0);

/// Angle opposite side c in a triangle with sides a, b > 0 and c >= 0, i.e.
/// arccos((a^2 + b^2 - c^2) / (2ab)), evaluated from factored differences so
/// that narrow triangles keep full relative accuracy. Cosines within 1e-12 of
/// +-1 snap to 0 or pi; infeasible triangles clamp the same way.
double triangle_angle(double a, double b, double c);

/// Arccos weight of the ring region, in [0, 1]:
/// (1/pi) * arccos((u0^2 - u_x^2 - vt^2) / (2 u_x vt)). Requires u_x > 0, vt > 0.
double ring_fraction(double u_x, double u0, double vt);

struct DensitySample {
    double u_x = 0.0;
    double lambda = 0.0;
    Region region = Region::Outer;
};

struct DensityProfile {
    double u0 = 0.0;
    double t = 0.0;
    double v = 0.0;
    double lambda0 = 0.0;
    std::vector<DensitySample> grid;
};

/// Samples interferer_density on a uniform grid over [0, u_max]. `u_max <= 0`
/// selects the default range [0, u0 + v t + 2000 m].
DensityProfile make_density_profile(double u0, double t, double v, double lambda0,
                                    double step = 1.0, double u_max = 0.0);

/// Expected number of interferers with ground distance in [lo, hi]:
/// integral of interferer_density * 2 pi u over the annulus.
double expected_annulus_count(double lo, double hi, double u0, double t, double v,
                              double lambda0);

/// CSV with header `u_x_m,lambda_per_m2,region`, 17 significant digits.
void write_density_csv(std::ostream& os, const DensityProfile& profile);

}  // namespace dronecov
