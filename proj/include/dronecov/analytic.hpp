#pragma once

#include "dronecov/params.hpp"

#include <functional>
#include <string>

namespace dronecov {

enum class Method { Analytic, MonteCarlo };

std::string to_string(Method method);

struct CoverageResult {
    double value = 0.0;  // probability in [0, 1]
    Method method = Method::Analytic;
    double half_width = 0.0;                // 95% CI half-width, 0 for analytic results
    double quadrature_error_estimate = 0.0; // absolute
};

struct RateResult {
    double value = 0.0;  // nats per channel use
    double quadrature_error_estimate = 0.0;
    double gamma_max = 0.0;  // upper end of the SINR-threshold integral
};

/// Time-invariant coverage probability of the UE-independent model.
CoverageResult coverage_model1(double gamma, const NetworkParams& params);

/// Time-varying coverage probability of the UE-dependent model. The serving
/// DBS approaches o' at speed v and hovers there once it arrives; interferers
/// follow the displaced exclusion-zone density.
CoverageResult coverage_model2(double gamma, double t, const NetworkParams& params);

CoverageResult coverage(double gamma, double t, ServiceModel model, const NetworkParams& params);

/// Integral of pc(gamma) / (1 + gamma) over (0, gamma_max). gamma_max doubles
/// from 1 until pc(G) * ln((1 + 2G) / (1 + G)) < 1e-8.
RateResult rate_from_coverage(const std::function<double(double)>& pc);

/// Expected ln(1 + SINR(t)) from the coverage integral of the chosen model.
RateResult rate(double t, ServiceModel model, const NetworkParams& params);

inline constexpr double kNatsToBits = 1.4426950408889634;

}  // namespace dronecov
