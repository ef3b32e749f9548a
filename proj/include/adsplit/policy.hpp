#pragma once

// Optimal targeting precision per setup, the commission-rate regimes that
// govern it, and the Integrated-vs-Independent comparison report.

#include "adsplit/model.hpp"
#include "adsplit/outcomes.hpp"

namespace adsplit {

enum class Regime { LowCommission, Interior, HighCommission };

const char* regime_name(Regime r);

struct CommissionThresholds {
    double r_l;   // below: precision 0 is optimal
    double r_h;   // above: precision 1 is optimal; == min(r_h1, r_h2)
    double r_h1;  // concavity boundary, located by bisection on r
    double r_h2;  // zero of the profit beta-derivative at beta = 1
    bool r_h1_clamped;    // concavity boundary fell outside (0,1)
    bool r_h2_clamped;    // beta=1 zero fell outside (0,1)
    bool interior_empty;  // r_l >= r_h; the interior regime has no rates
};

// Finite difference of (commission + ad revenue) in beta, using the r stored
// in params; one-sided at beta in {0, 1}.
double platform_profit_beta_derivative(const ModelParams& params, Precision beta);

// r_l and r_h2 come from the affine-in-r structure of the profit derivative
// (commission scales with r, ad revenue with 1-r); r_h1 from a bisection on r
// over a 201-point concavity grid. Throws DegenerateThresholdsError when the
// boundary derivative signs contradict the expected structure.
CommissionThresholds commission_thresholds(const ModelParams& params);

// Root of the profit beta-derivative on (0,1), bisection to 1e-10. Requires r
// strictly between r_l and r_h; throws BracketError when the derivative does
// not change sign.
Precision interior_beta_hat(const ModelParams& params, double r);

struct PolicyResult {
    double beta_star;
    Regime regime;  // where r sits relative to (r_l, r_h)
    double r_l, r_h;
    SetupKind setup;
    double deriv_at_zero;  // profit beta-derivative diagnostics at the bounds
    double deriv_at_one;
};

// Independent setup: 0 unconditionally. Integrated: 0 / beta-hat / 1 by
// regime, boundary rates resolved by the weak inequalities r <= r_l, r >= r_h.
// The threshold rule is cross-checked against a profit scan: for rates between
// the concavity bound and the beta=1 derivative root the profit curve can peak
// strictly inside (0,1) even though r >= r_h, and the reported beta_star is
// then the interior maximiser (regime reported as Interior).
PolicyResult optimal_beta(const ModelParams& params, double r, SetupKind setup);

struct ComparisonDeltas {
    double seller_profit;    // Independent minus Integrated, per seller
    double consumer_surplus;
    double social_welfare;
    double platform_total;
};

struct ConditionFlags {
    bool r_gt_rl;
    bool t_gt_welfare_bound;      // t > (3 - sqrt(6)) v
    bool delta_gt_welfare_bound;  // delta > 4t / (3v - t)
};

struct ComparisonReport {
    PolicyResult policy_integrated;
    PolicyResult policy_independent;
    OutcomeReport outcomes_integrated;
    OutcomeReport outcomes_independent;
    ComparisonDeltas deltas;
    ConditionFlags conditions;
};

ComparisonReport compare_setups(const ModelParams& params, double r);

}  // namespace adsplit
