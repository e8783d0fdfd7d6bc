// Acceptance suite: one PASS/FAIL line per criterion, details indented below.

#include "dronecov/analytic.hpp"
#include "dronecov/monte_carlo.hpp"
#include "dronecov/params.hpp"
#include "dronecov/validation.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace dronecov;

namespace {

constexpr std::uint64_t kSeed = 20240601;

struct Criterion {
    bool passed = true;
    std::vector<std::string> details;

    void add(const CheckResult& r)
    {
        passed = passed && r.passed;
        char buf[512];
        std::snprintf(buf, sizeof buf, "%s %s: %.6g %s %.6g (%s)", r.passed ? "ok  " : "FAIL",
                      r.name.c_str(), r.statistic, r.comparison.c_str(), r.threshold,
                      r.detail.c_str());
        details.emplace_back(buf);
    }

    void require(bool ok, const std::string& what)
    {
        passed = passed && ok;
        details.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
    }
};

NetworkParams section_params()
{
    return NetworkParams{}.with_dimensioned_noise();
}

std::vector<double> fig4_times()
{
    std::vector<double> t;
    for (int i = 0; i <= 200; i += 10) {
        t.push_back(i);
    }
    return t;
}

const std::vector<double> kGammasDb{-5.0, 0.0, 5.0};

int failures = 0;

void run(int number, const std::string& title, const std::function<void(Criterion&)>& body,
         double time_limit_s = 0.0)
{
    Criterion c;
    const auto start = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.require(false, std::string("exception: ") + e.what());
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (time_limit_s > 0.0) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "runtime %.1f s < %.0f s", elapsed, time_limit_s);
        c.require(elapsed < time_limit_s, buf);
    }
    std::printf("%s criterion %d: %s (%.1f s)\n", c.passed ? "PASS" : "FAIL", number,
                title.c_str(), elapsed);
    for (const auto& d : c.details) {
        std::printf("    %s\n", d.c_str());
    }
    std::fflush(stdout);
    failures += c.passed ? 0 : 1;
}

}  // namespace

int main()
{
    run(1, "kernel normalization over 100 random (u_x, d) pairs within 1e-6",
        [](Criterion& c) { c.add(check_kernel_normalization(100, kSeed)); }, 10.0);

    run(2, "density histogram vs closed form, and boundary continuity",
        [](Criterion& c) {
            std::uint64_t seed = kSeed + 10;
            for (double t : {20.0, 40.0, 50.0, 200.0}) {
                c.add(check_density_histogram(500.0, t, 12.5, 10000000, 10.0, 2000.0, seed++).result);
            }
            c.add(check_density_continuity(1e-6, 1e-12));
        },
        120.0);

    run(3, "displaced PPP region counts are Poisson (20 regions, p > 0.01)", [](Criterion& c) {
        c.add(check_displacement_invariance(1e-6, 12.5 * 100.0, 5000.0, 20, 2000, kSeed + 20));
    });

    run(4, "analytic vs Monte Carlo coverage, model 2, 1e5 trials per point",
        [](Criterion& c) {
            const NetworkParams p = section_params();
            std::uint64_t seed = kSeed + 30;
            for (double t : {0.0, 20.0, 50.0, 200.0}) {
                const auto sinr =
                    simulate_sinr(t, ServiceModel::UeDependent, MobilitySpec{}, p, 100000, seed++);
                for (const auto& r :
                     check_cross_engine_coverage(sinr, t, ServiceModel::UeDependent, kGammasDb, p)) {
                    c.add(r);
                }
            }
        },
        600.0);

    run(5, "model 2 at t = 0 equals model 1 within 1e-8 (20 thresholds)", [](Criterion& c) {
        std::vector<double> grid;
        for (int g = -10; g < 10; ++g) {
            grid.push_back(g);
        }
        c.add(check_t0_collapse(section_params(), grid, 1e-8));
    });

    run(6, "model 2 coverage >= model 1 coverage for t > 0", [](Criterion& c) {
        c.add(check_model_dominance(section_params(), fig4_times(), kGammasDb));
    });

    run(7, "rate orderings in alpha and height at t = 0 and 100 s", [](Criterion& c) {
        auto with = [](double h, double alpha) {
            NetworkParams p;
            p.h = h;
            p.alpha = alpha;
            return p.with_dimensioned_noise();
        };
        for (double t : {0.0, 100.0}) {
            c.add(check_rate_ordering("alpha_3.5_over_2.5", with(100.0, 3.5), with(100.0, 2.5), t));
            c.add(check_rate_ordering("h_100_over_200", with(100.0, 3.0), with(200.0, 3.0), t));
        }
    });

    run(8, "coverage with and without noise within 5% relative", [](Criterion& c) {
        const NetworkParams p = section_params();
        for (ServiceModel m : {ServiceModel::UeIndependent, ServiceModel::UeDependent}) {
            c.add(check_interference_limited(p, m, fig4_times(), kGammasDb, 0.05));
        }
    });

    run(9, "random walk and random waypoint rate >= straight-line rate - 2 CI", [](Criterion& c) {
        const NetworkParams p = section_params();
        std::uint64_t seed = kSeed + 40;
        for (double t : {25.0, 50.0, 100.0}) {
            MobilitySpec m;
            m.kind = MobilityKind::StraightLine;
            const auto straight =
                empirical_rate(t, ServiceModel::UeDependent, m, p, 100000, seed);
            for (MobilityKind kind : {MobilityKind::RandomWalk, MobilityKind::RandomWaypoint}) {
                m.kind = kind;
                const auto other = empirical_rate(t, ServiceModel::UeDependent, m, p, 100000, seed);
                c.add(check_mobility_ordering(straight, other, kind, t));
            }
            ++seed;
        }
    });

    run(10, "dimensioned noise gives 0 dB cell-edge SNR within 1e-9", [](Criterion& c) {
        c.add(check_noise_dimensioning(NetworkParams{}, 1e-9));
    });

    run(11, "rate of coverage exp(-gamma) equals 0.596347 within 1e-5", [](Criterion& c) {
        c.add(check_rate_path(1e-5));
        const auto r = rate_from_coverage([](double g) { return std::exp(-g); });
        c.require(std::abs(r.value - 0.596347) <= 1e-5, "rate within 1e-5 of 0.596347");
    });

    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
