#include "adsplit/equilibrium.hpp"

#include <cmath>
#include <sstream>

#include "adsplit/numerics.hpp"

namespace adsplit {

namespace {

// Shared denominator 2(alpha+delta) - 3 alpha delta - 2 beta (alpha-delta);
// positive on the valid domain (minimum over beta is delta*(4-3*alpha) > 0).
double price_denominator(const ModelParams& p, double beta) {
    return 2.0 * (p.alpha + p.delta) - 3.0 * p.alpha * p.delta -
           2.0 * beta * (p.alpha - p.delta);
}

}  // namespace

AuxQuantities aux_quantities(const ModelParams& p, Precision beta) {
    const double b = beta.value();
    AuxQuantities q;
    q.L1 = p.alpha * p.delta * (p.t - 2.0 * p.v) + p.v * (p.alpha + p.delta) -
           b * (p.alpha - p.delta) * (p.v - p.t);
    q.L2 = p.v * (p.alpha + p.delta) - p.alpha * p.delta * (p.t + p.v) -
           b * (p.alpha - p.delta) * (p.t + p.v);
    return q;
}

EquilibriumSolution solve_equilibrium(const ModelParams& params, Precision beta) {
    const double b = beta.value();
    const double Q = price_denominator(params, b);
    if (!(Q > 0.0)) {
        std::ostringstream os;
        os.precision(9);
        os << "price denominator nonpositive: " << Q;
        throw DomainError({BoundViolation{"params", os.str()}});
    }
    const AuxQuantities aux = aux_quantities(params, beta);
    const double gap = params.alpha - params.delta;
    const double margin = 1.0 - params.r;

    EquilibriumSolution sol;
    sol.params = params;
    sol.beta = b;
    sol.p_star = aux.L1 / Q;
    sol.z_A_star = aux.L2 / (params.t * Q);
    sol.z_B_star = 1.0 - sol.z_A_star;
    sol.b_L = aux.L1 * aux.L2 * (1.0 - b) * margin * gap / (params.t * Q * Q);
    sol.b_H = sol.b_L + aux.L1 * b * margin * gap / Q;
    return sol;
}

BidPair bid_schedule(const EquilibriumSolution& sol, double s) {
    if (s < sol.z_B_star) return {sol.b_H, sol.b_L};
    if (s <= sol.z_A_star) return {sol.b_H, sol.b_H};
    return {sol.b_L, sol.b_H};
}

double price_beta_derivative(const ModelParams& p, Precision beta) {
    const double Q = price_denominator(p, beta.value());
    const double numer =
        (p.alpha - p.delta) *
        (p.alpha * (2.0 - p.delta) * p.t + p.delta * (2.0 * p.t - p.alpha * p.v));
    return numer / (Q * Q);
}

namespace {

double p_star_at(ModelParams base, double alpha, double delta, double beta) {
    base.alpha = alpha;
    base.delta = delta;
    return solve_equilibrium(base, Precision(beta)).p_star;
}

bool perturbation_valid(const ModelParams& base, double alpha, double delta) {
    ModelParams q = base;
    q.alpha = alpha;
    q.delta = delta;
    return check_params(q).empty();
}

}  // namespace

CrossPartialSigns cross_partial_checks(const ModelParams& params, Precision beta) {
    const double b = beta.value();
    const double h_beta = 1e-4;
    if (b - 2.0 * h_beta < 0.0 || b + 2.0 * h_beta > 1.0)
        throw StepError("cross_partial_checks requires an interior beta");

    // d p*/d beta at perturbed CTR values, central in beta (Richardson).
    auto dp_dbeta = [&](double alpha, double delta) {
        return num::deriv_central(
            [&](double bb) { return p_star_at(params, alpha, delta, bb); }, b, h_beta);
    };

    double h = 1e-4;
    const int max_shrinks = 8;
    int shrink = 0;
    while (shrink < max_shrinks &&
           !(perturbation_valid(params, params.alpha + h, params.delta) &&
             perturbation_valid(params, params.alpha - h, params.delta) &&
             perturbation_valid(params, params.alpha, params.delta + h) &&
             perturbation_valid(params, params.alpha, params.delta - h))) {
        h *= 0.5;
        ++shrink;
    }
    if (shrink == max_shrinks)
        throw StepError("cross_partial_checks: could not find a step keeping all "
                        "perturbed points in the valid domain");

    CrossPartialSigns out;
    out.value_alpha = num::deriv_central(
        [&](double a) { return dp_dbeta(a, params.delta); }, params.alpha, h);
    out.value_delta = num::deriv_central(
        [&](double d) { return dp_dbeta(params.alpha, d); }, params.delta, h);
    out.sign_alpha = out.value_alpha > 0.0 ? 1 : (out.value_alpha < 0.0 ? -1 : 0);
    out.sign_delta = out.value_delta > 0.0 ? 1 : (out.value_delta < 0.0 ? -1 : 0);
    return out;
}

}  // namespace adsplit
