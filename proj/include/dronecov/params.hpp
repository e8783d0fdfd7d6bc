#pragma once

#include <string>

namespace dronecov {

/// Association rule for the serving drone base station (DBS).
enum class ServiceModel {
    UeIndependent,  ///< serving DBS flies in a random direction; UE hands over to the nearest DBS
    UeDependent,    ///< serving DBS flies toward the UE's projection and hovers there
};

std::string to_string(ServiceModel model);
ServiceModel parse_service_model(const std::string& text);

/// Scalar inputs of the network. Linear units throughout: metres, seconds,
/// watts, points per square metre.
struct NetworkParams {
    double lambda0 = 1e-6;   // initial DBS density
    double h = 100.0;        // DBS altitude
    double v = 12.5;         // DBS speed
    double alpha = 3.0;      // path-loss exponent
    double P = 1.0;          // transmit power
    double N0 = 0.0;         // noise power
    double R_D = 100e3;      // deployment disc radius
    double p_edge = 0.05;    // cell-edge probability used to dimension N0

    /// Throws std::invalid_argument naming the first violated constraint.
    void validate() const;

    /// Copy with N0 set so that a cell-edge UE sees 0 dB SNR.
    [[nodiscard]] NetworkParams with_dimensioned_noise() const;
    [[nodiscard]] NetworkParams without_noise() const;
};

/// 3D distance from a DBS at ground distance `u` (in the DBS plane) to the UE.
double link_distance(double u, double h);

/// Serving ground distance under the UE-dependent model: [u0 - v t]^+.
double serving_ground_distance_model2(double u0, double v, double t);

/// Distance d at which P[r0 > d] = p_edge for the nearest DBS.
double edge_distance(const NetworkParams& params);

/// Noise power giving 0 dB SNR at the cell edge: P * d_edge^-alpha.
/// Uses the natural log when inverting the void probability exp(-pi lambda0 u^2).
/// The N0 field of `params` is ignored.
double noise_power(const NetworkParams& params);

inline constexpr double kPi = 3.14159265358979323846;

double db_to_linear(double db);
double linear_to_db(double linear);
inline constexpr double kmh_to_mps(double kmh) { return kmh / 3.6; }

}  // namespace dronecov
