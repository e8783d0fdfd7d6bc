#include "dronecov/analytic.hpp"

#include "dronecov/density.hpp"
#include "dronecov/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dronecov {

namespace {

// Rayleigh tail mass of the serving distance left out of the outer integral.
constexpr double kOuterTailMass = 1e-12;
// Absolute tolerance on the probability (outer) and on the PGFL exponent (inner).
constexpr double kOuterTol = 1e-8;
constexpr double kInnerTol = 1e-9;
constexpr double kOuterRelTol = 1e-10;
constexpr double kInnerRelTol = 1e-11;
constexpr double kRateTailBound = 1e-8;

double outer_limit(double lambda0)
{
    return std::sqrt(-std::log(kOuterTailMass) / (kPi * lambda0));
}

/// Integrand of the interference Laplace functional for Rayleigh fading:
/// u / (1 + (1/gamma) ((u^2 + h^2) / r_s^2)^(alpha/2)), with r_s the 3D serving distance.
struct LaplaceKernel {
    double inv_gamma;
    double h2;
    double serving2;
    double half_alpha;

    double operator()(double u) const
    {
        return u / (1.0 + inv_gamma * std::pow((u * u + h2) / serving2, half_alpha));
    }

    /// Coefficient C of the envelope kernel(u) <= C u^(1 - alpha).
    double tail_bound() const { return std::pow(serving2, half_alpha) / inv_gamma; }

    /// Ground distance beyond which the kernel is in its power-law tail.
    double knee(double gamma) const
    {
        const double r = std::sqrt(serving2) * std::max(1.0, std::pow(gamma, 0.5 / half_alpha));
        return std::max(r, std::sqrt(h2));
    }
};

/// Accumulates the worst inner error estimate seen during one outer integral.
struct InnerErrors {
    double worst = 0.0;
    void note(const Integral& i) { worst = std::max(worst, i.error); }
};

double inner_abs_tol(const NetworkParams& p) { return kInnerTol / (2.0 * kPi * p.lambda0); }

/// Integral of the kernel over [a, inf).
double kernel_tail(const LaplaceKernel& g, double a, double gamma, const NetworkParams& p,
                   InnerErrors& errors)
{
    const double tol = inner_abs_tol(p);
    const double q = p.alpha - 1.0;
    const double knee = g.knee(gamma);
    double total = 0.0;
    if (a < knee) {
        const Integral body = quad::integrate(g, a, knee, tol, "pgfl body", kInnerRelTol);
        errors.note(body);
        total += body.value;
        a = knee;
    }
    const Integral tail = quad::integrate_power_tail(g, a, q, g.tail_bound(), tol, "pgfl tail",
                                                     kInnerRelTol);
    errors.note(tail);
    return total + tail.value;
}

/// Exponent factor exp(-gamma r_s^alpha N0 / P) for a 3D serving distance r_s.
double noise_factor(double gamma, double serving2, const NetworkParams& p)
{
    if (p.N0 == 0.0) {
        return 0.0;
    }
    return gamma * std::pow(serving2, p.alpha / 2.0) * p.N0 / p.P;
}

void require_query(double gamma, double t, const NetworkParams& params)
{
    params.validate();
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
        throw std::domain_error("coverage: gamma must be > 0");
    }
    if (!(t >= 0.0)) {
        throw std::domain_error("coverage: t must be >= 0");
    }
}

}  // namespace

std::string to_string(Method method)
{
    return method == Method::Analytic ? "analytic" : "monte-carlo";
}

CoverageResult coverage_model1(double gamma, const NetworkParams& params)
{
    require_query(gamma, 0.0, params);
    const double lambda0 = params.lambda0;
    const double h2 = params.h * params.h;
    InnerErrors inner;

    auto outer = [&](double u0) {
        const double serving2 = u0 * u0 + h2;
        const LaplaceKernel g{1.0 / gamma, h2, serving2, params.alpha / 2.0};
        const double interference = kernel_tail(g, u0, gamma, params, inner);
        return 2.0 * kPi * lambda0 * u0
               * std::exp(-kPi * lambda0 * u0 * u0 - noise_factor(gamma, serving2, params)
                          - 2.0 * kPi * lambda0 * interference);
    };
    const Integral total = quad::integrate(outer, 0.0, outer_limit(lambda0), kOuterTol,
                                           "coverage_model1", kOuterRelTol);
    const double err = total.error + 2.0 * kPi * lambda0 * inner.worst;
    return {std::clamp(total.value, 0.0, 1.0), Method::Analytic, 0.0, err};
}

CoverageResult coverage_model2(double gamma, double t, const NetworkParams& params)
{
    require_query(gamma, t, params);
    const double lambda0 = params.lambda0;
    const double h2 = params.h * params.h;
    const double vt = params.v * t;
    const double limit = outer_limit(lambda0);
    const double tol = inner_abs_tol(params);
    InnerErrors inner;
    double err = 0.0;
    double value = 0.0;

    // u0 <= vt: the serving DBS already hovers above the UE (serving distance h).
    if (vt > 0.0) {
        const LaplaceKernel g1{1.0 / gamma, h2, h2, params.alpha / 2.0};
        const double g1_total = kernel_tail(g1, 0.0, gamma, params, inner);
        const double noise = noise_factor(gamma, h2, params);
        // (1/pi) arccos((u^2 + vt^2 - u0^2) / (2 u vt))
        auto refilled_weight = [&](double u, double u0) {
            return triangle_angle(u, vt, u0) / kPi;
        };
        auto branch_a = [&](double u0) {
            double a = g1_total;
            if (u0 > 0.0) {
                auto weighted = [&](double u) { return g1(u) * refilled_weight(u, u0); };
                const Integral ring = quad::integrate_sqrt_endpoints(weighted, vt - u0, vt + u0, tol,
                                                      "coverage_model2 ring A", kInnerRelTol);
                inner.note(ring);
                a -= ring.value;
            }
            return 2.0 * kPi * lambda0 * u0
                   * std::exp(-kPi * lambda0 * u0 * u0 - noise - 2.0 * kPi * lambda0 * a);
        };
        const Integral part = quad::integrate(branch_a, 0.0, std::min(vt, limit), kOuterTol,
                                              "coverage_model2 branch A", kOuterRelTol);
        value += part.value;
        err += part.error;
    }

    // u0 >= vt: the serving DBS is still approaching.
    if (vt < limit) {
        auto branch_b = [&](double u0) {
            const double s = u0 - vt;
            const double serving2 = s * s + h2;
            const LaplaceKernel g2{1.0 / gamma, h2, serving2, params.alpha / 2.0};
            double b = kernel_tail(g2, u0 + vt, gamma, params, inner);
            if (vt > 0.0) {
                auto weighted = [&](double u) { return g2(u) * ring_fraction(u, u0, vt); };
                const Integral ring = quad::integrate_sqrt_endpoints(weighted, u0 - vt, u0 + vt, tol,
                                                      "coverage_model2 ring B", kInnerRelTol);
                inner.note(ring);
                b += ring.value;
            }
            return 2.0 * kPi * lambda0 * u0
                   * std::exp(-kPi * lambda0 * u0 * u0 - noise_factor(gamma, serving2, params)
                              - 2.0 * kPi * lambda0 * b);
        };
        const Integral part = quad::integrate(branch_b, vt, limit, kOuterTol,
                                              "coverage_model2 branch B", kOuterRelTol);
        value += part.value;
        err += part.error;
    }

    err += 2.0 * kPi * lambda0 * inner.worst;
    return {std::clamp(value, 0.0, 1.0), Method::Analytic, 0.0, err};
}

CoverageResult coverage(double gamma, double t, ServiceModel model, const NetworkParams& params)
{
    return model == ServiceModel::UeIndependent ? coverage_model1(gamma, params)
                                                : coverage_model2(gamma, t, params);
}

RateResult rate_from_coverage(const std::function<double(double)>& pc)
{
    double gamma_max = 1.0;
    while (pc(gamma_max) * std::log((1.0 + 2.0 * gamma_max) / (1.0 + gamma_max))
           >= kRateTailBound) {
        gamma_max *= 2.0;
        if (gamma_max > 1e30) {
            throw QuadratureError("rate: coverage tail does not decay", gamma_max);
        }
    }
    auto integrand = [&](double gamma) { return pc(gamma) / (1.0 + gamma); };
    // Above gamma = 1 the substitution gamma = e^s turns the slowly decaying
    // tail into a smooth sigmoid-like integrand on [0, ln gamma_max].
    auto log_integrand = [&](double s) {
        const double gamma = std::exp(s);
        return pc(gamma) * gamma / (1.0 + gamma);
    };
    const Integral head = quad::integrate(integrand, 0.0, 1.0, 1e-10, "rate", 1e-10);
    const Integral tail =
        quad::integrate(log_integrand, 0.0, std::log(gamma_max), 1e-10, "rate", 1e-10);
    RateResult out{head.value + tail.value, head.error + tail.error, gamma_max};
    return out;
}

RateResult rate(double t, ServiceModel model, const NetworkParams& params)
{
    if (!(t >= 0.0)) {
        throw std::domain_error("rate: t must be >= 0");
    }
    double coverage_error = 0.0;
    auto pc = [&](double gamma) {
        if (gamma <= 0.0) {
            return 1.0;
        }
        const CoverageResult c = coverage(gamma, t, model, params);
        coverage_error = std::max(coverage_error, c.quadrature_error_estimate);
        return c.value;
    };
    RateResult r = rate_from_coverage(pc);
    r.quadrature_error_estimate += coverage_error * std::log1p(r.gamma_max);
    return r;
}

}  // namespace dronecov
