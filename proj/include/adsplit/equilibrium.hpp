#pragma once

// Closed-form symmetric equilibrium of the pricing/bidding stage and its
// comparative statics in the targeting precision.

#include "adsplit/model.hpp"

namespace adsplit {

// Intermediate quantities of the equilibrium formulas; both are positive on
// the valid parameter domain.
struct AuxQuantities {
    double L1;  // alpha*delta*(t-2v) + v*(alpha+delta) - beta*(alpha-delta)*(v-t)
    double L2;  // v*(alpha+delta) - alpha*delta*(t+v) - beta*(alpha-delta)*(t+v)
};

AuxQuantities aux_quantities(const ModelParams& params, Precision beta);

struct EquilibriumSolution {
    double p_star;    // symmetric equilibrium price
    double b_L;       // low bid per click
    double b_H;       // high bid per click (== b_L exactly when beta == 0)
    double z_A_star;  // equilibrium purchase cutoff for A, == 1 - z_B_star
    double z_B_star;
    double beta;
    ModelParams params;
};

EquilibriumSolution solve_equilibrium(const ModelParams& params, Precision beta);

struct BidPair {
    double bid_A;
    double bid_B;
};

// Equilibrium bid schedule: (b_H, b_L) on [0, z_B*), (b_H, b_H) on
// [z_B*, z_A*], (b_L, b_H) on (z_A*, 1].
BidPair bid_schedule(const EquilibriumSolution& sol, double s);

// d p*/d beta, strictly positive on the valid domain.
double price_beta_derivative(const ModelParams& params, Precision beta);

struct CrossPartialSigns {
    int sign_alpha;      // sign of d2 p* / (d beta d alpha), expected +1
    int sign_delta;      // sign of d2 p* / (d beta d delta), expected -1
    double value_alpha;  // the finite-difference estimates behind the signs
    double value_delta;
};

// Nested central differences of p* (step 1e-4, one Richardson step). Shrinks
// the parameter step when a perturbed point would leave the valid domain and
// throws StepError if no usable step remains.
CrossPartialSigns cross_partial_checks(const ModelParams& params, Precision beta);

}  // namespace adsplit
