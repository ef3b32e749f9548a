#pragma once

// Shared helpers for the test suites: deterministic samplers over the valid
// parameter domain and a couple of convenience wrappers.

#include <cmath>
#include <cstdint>
#include <random>

#include "adsplit/equilibrium.hpp"
#include "adsplit/model.hpp"

namespace testsupport {

using adsplit::ModelParams;

inline ModelParams t_case_params() { return {1.0, 0.501, 0.7, 0.65, 0.25}; }
inline ModelParams alpha_case_params() { return {1.0, 0.54, 0.66, 0.55, 0.35}; }
inline ModelParams delta_case_params() { return {1.0, 0.54, 0.75, 0.6, 0.35}; }

class ParamSampler {
public:
    explicit ParamSampler(std::uint64_t seed) : rng_(seed) {}

    // Interior point of the valid domain; margins keep finite-difference
    // perturbations inside it.
    ModelParams draw() {
        for (;;) {
            const double alpha = uni(0.45, 0.98);
            const double dlo = 2.0 * alpha / (3.0 * (2.0 - alpha));  // nonempty v-window
            const double delta = lerp(dlo, alpha, uni(0.06, 0.94));
            const double v = uni(0.6, 1.6);
            const double c = alpha / ((2.0 - alpha) * delta);
            const double t = lerp(v / 2.0, v / (c + 0.5), uni(0.04, 0.96));
            const double r = uni(0.05, 0.95);
            const ModelParams p{v, t, alpha, delta, r};
            if (adsplit::check_params(p).empty()) return p;
        }
    }

    // Sub-domain where the welfare derivative conditions hold:
    // t > (3 - sqrt(6)) v and delta > 4t / (3v - t).
    ModelParams draw_welfare_subdomain() {
        for (;;) {
            const double alpha = uni(0.93, 0.995);
            const double v = uni(0.8, 1.3);
            const double t = uni(0.5515, 0.5705) * v;
            const double dlo = 4.0 * t / (3.0 * v - t);
            if (dlo >= alpha - 0.01) continue;
            const double delta = lerp(dlo + 0.002, alpha - 0.004, uni(0.05, 0.95));
            const double r = uni(0.3, 0.95);
            const ModelParams p{v, t, alpha, delta, r};
            if (!adsplit::check_params(p).empty()) continue;
            if (!(t > (3.0 - std::sqrt(6.0)) * v)) continue;
            return p;
        }
    }

    double uni(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng_);
    }

private:
    static double lerp(double a, double b, double w) { return a + (b - a) * w; }
    std::mt19937_64 rng_;
};

// Symmetric equilibrium prices for params at beta.
inline adsplit::PricePair equilibrium_prices(const ModelParams& p, double beta) {
    const auto sol = adsplit::solve_equilibrium(p, adsplit::Precision(beta));
    return {sol.p_star, sol.p_star};
}

}  // namespace testsupport
