#include "dronecov/params.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dronecov {

std::string to_string(ServiceModel model)
{
    return model == ServiceModel::UeIndependent ? "model1" : "model2";
}

ServiceModel parse_service_model(const std::string& text)
{
    if (text == "1" || text == "model1" || text == "ue-independent") {
        return ServiceModel::UeIndependent;
    }
    if (text == "2" || text == "model2" || text == "ue-dependent") {
        return ServiceModel::UeDependent;
    }
    throw std::invalid_argument("unknown service model '" + text + "'");
}

void NetworkParams::validate() const
{
    auto require = [](bool ok, const char* what) {
        if (!ok) {
            throw std::invalid_argument(std::string("invalid network parameter: ") + what);
        }
    };
    require(std::isfinite(lambda0) && lambda0 > 0.0, "lambda0 must be > 0");
    require(std::isfinite(h) && h > 0.0, "h must be > 0");
    require(std::isfinite(v) && v >= 0.0, "v must be >= 0");
    require(std::isfinite(alpha) && alpha > 2.0, "alpha must be > 2");
    require(std::isfinite(P) && P > 0.0, "P must be > 0");
    require(std::isfinite(N0) && N0 >= 0.0, "N0 must be >= 0");
    require(std::isfinite(R_D) && R_D > 0.0, "R_D must be > 0");
    require(p_edge > 0.0 && p_edge < 1.0, "p_edge must lie in (0, 1)");
}

NetworkParams NetworkParams::with_dimensioned_noise() const
{
    NetworkParams out = *this;
    out.N0 = noise_power(*this);
    return out;
}

NetworkParams NetworkParams::without_noise() const
{
    NetworkParams out = *this;
    out.N0 = 0.0;
    return out;
}

double link_distance(double u, double h)
{
    if (!(u >= 0.0) || !(h > 0.0)) {
        throw std::domain_error("link_distance: requires u >= 0 and h > 0");
    }
    return std::hypot(u, h);
}

double serving_ground_distance_model2(double u0, double v, double t)
{
    if (!(u0 >= 0.0) || !(v >= 0.0) || !(t >= 0.0)) {
        throw std::domain_error("serving_ground_distance_model2: arguments must be >= 0");
    }
    return std::max(u0 - v * t, 0.0);
}

namespace {

double edge_distance_squared(const NetworkParams& params)
{
    NetworkParams probe = params;
    probe.N0 = 0.0;
    probe.validate();
    return params.h * params.h - std::log(params.p_edge) / (kPi * params.lambda0);
}

}  // namespace

double edge_distance(const NetworkParams& params)
{
    return std::sqrt(edge_distance_squared(params));
}

double noise_power(const NetworkParams& params)
{
    return params.P * std::pow(edge_distance_squared(params), -params.alpha / 2.0);
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

}  // namespace dronecov
