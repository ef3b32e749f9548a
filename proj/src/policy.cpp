#include "adsplit/policy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "adsplit/numerics.hpp"

namespace adsplit {

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::LowCommission: return "low-commission";
        case Regime::Interior: return "interior";
        case Regime::HighCommission: return "high-commission";
    }
    return "?";
}

namespace {

constexpr double kDerivStep = 1e-5;
constexpr int kConcavityGrid = 201;

ModelParams with_r(ModelParams p, double r) {
    p.r = r;
    return p;
}

// The platform profit is affine in r: r * C(beta) + (1-r) * M(beta), where C
// is the commission at full rate and M the ad revenue gross of commission.
double commission_unit(const ModelParams& p, double beta) {
    return platform_commission(with_r(p, 1.0), Precision(beta));
}

double ad_revenue_unit(const ModelParams& p, double beta) {
    return ad_revenue(with_r(p, 0.0), Precision(beta));
}

double profit_at(const ModelParams& p, double r, double beta) {
    return r * commission_unit(p, beta) + (1.0 - r) * ad_revenue_unit(p, beta);
}

double profit_deriv(const ModelParams& p, double r, double beta) {
    return num::deriv_within([&](double b) { return profit_at(p, r, b); }, beta, 0.0,
                             1.0, kDerivStep);
}

}  // namespace

double platform_profit_beta_derivative(const ModelParams& params, Precision beta) {
    auto f = [&](double b) {
        const Precision pb(b);
        return platform_commission(params, pb) + ad_revenue(params, pb);
    };
    return num::deriv_within(f, beta.value(), 0.0, 1.0, kDerivStep);
}

CommissionThresholds commission_thresholds(const ModelParams& params) {
    auto c_unit = [&](double b) { return commission_unit(params, b); };
    auto m_unit = [&](double b) { return ad_revenue_unit(params, b); };

    const double dC0 = num::deriv_within(c_unit, 0.0, 0.0, 1.0, kDerivStep);
    const double dM0 = num::deriv_within(m_unit, 0.0, 0.0, 1.0, kDerivStep);
    if (!(dM0 < 0.0) || !(dC0 > 0.0))
        throw DegenerateThresholdsError(
            "profit derivative signs at beta=0 violate the expected structure "
            "(ad-fee derivative should be negative, commission derivative positive)");

    CommissionThresholds th{};
    th.r_l = dM0 / (dM0 - dC0);

    const double dC1 = num::deriv_within(c_unit, 1.0, 0.0, 1.0, kDerivStep);
    const double dM1 = num::deriv_within(m_unit, 1.0, 0.0, 1.0, kDerivStep);
    const double denom1 = dM1 - dC1;
    double rh2 = denom1 != 0.0 ? dM1 / denom1 : 1.0;
    th.r_h2_clamped = !(rh2 >= 0.0 && rh2 <= 1.0) || denom1 == 0.0;
    th.r_h2 = std::clamp(rh2, 0.0, 1.0);

    // Concavity boundary: largest r below which the profit's second difference
    // stays nonpositive over the whole beta grid.
    std::array<double, kConcavityGrid> cg{}, mg{};
    for (int i = 0; i < kConcavityGrid; ++i) {
        const double b = static_cast<double>(i) / (kConcavityGrid - 1);
        cg[i] = c_unit(b);
        mg[i] = m_unit(b);
    }
    auto max_second_diff = [&](double r) {
        double worst = -1e300;
        for (int i = 1; i + 1 < kConcavityGrid; ++i) {
            const double d2c = cg[i - 1] - 2.0 * cg[i] + cg[i + 1];
            const double d2m = mg[i - 1] - 2.0 * mg[i] + mg[i + 1];
            worst = std::max(worst, r * d2c + (1.0 - r) * d2m);
        }
        return worst;
    };
    if (max_second_diff(0.0) >= 0.0) {
        th.r_h1 = 0.0;
        th.r_h1_clamped = true;
    } else if (max_second_diff(1.0) <= 0.0) {
        th.r_h1 = 1.0;
        th.r_h1_clamped = true;
    } else {
        th.r_h1 = num::bisect(max_second_diff, 0.0, 1.0, 1e-8);
        th.r_h1_clamped = false;
    }

    th.r_h = std::min(th.r_h1, th.r_h2);
    th.interior_empty = th.r_l >= th.r_h;
    return th;
}

Precision interior_beta_hat(const ModelParams& params, double r) {
    auto deriv = [&](double b) { return profit_deriv(params, r, b); };
    const double d0 = deriv(0.0);
    const double d1 = deriv(1.0);
    if (!(d0 > 0.0 && d1 < 0.0))
        throw BracketError("interior_beta_hat: profit derivative does not change sign "
                           "from + to - on [0,1]; re-check the regime thresholds");
    return Precision(num::bisect(deriv, 0.0, 1.0, 1e-10));
}

namespace {

// Local maximiser used when the threshold rule is beaten: zoomed scans around
// a seed point, then a derivative-bisection polish when the bracket allows.
double refine_maximum(const ModelParams& p, double r, double center) {
    double lo = std::max(0.0, center - 0.025);
    double hi = std::min(1.0, center + 0.025);
    double best = center;
    for (int round = 0; round < 4; ++round) {
        double best_value = -1e300;
        for (int k = 0; k <= 20; ++k) {
            const double b = lo + (hi - lo) * k / 20.0;
            const double value = profit_at(p, r, b);
            if (value > best_value) {
                best_value = value;
                best = b;
            }
        }
        const double width = (hi - lo) / 10.0;
        lo = std::max(lo, best - width);
        hi = std::min(hi, best + width);
    }
    if (lo > 0.0 && hi < 1.0) {
        const double d_lo = profit_deriv(p, r, lo);
        const double d_hi = profit_deriv(p, r, hi);
        if (d_lo > 0.0 && d_hi < 0.0)
            return num::bisect([&](double b) { return profit_deriv(p, r, b); }, lo, hi, 1e-10);
    }
    return best;
}

}  // namespace

PolicyResult optimal_beta(const ModelParams& params, double r, SetupKind setup) {
    if (!(r > 0.0 && r < 1.0))
        throw DomainError({BoundViolation{"r", "0 < r < 1 violated"}});
    const CommissionThresholds th = commission_thresholds(params);

    PolicyResult out{};
    out.r_l = th.r_l;
    out.r_h = th.r_h;
    out.setup = setup;
    out.deriv_at_zero = profit_deriv(params, r, 0.0);
    out.deriv_at_one = profit_deriv(params, r, 1.0);

    // Threshold rule: 0 below r_l, 1 above r_h, the interior root in between.
    Regime regime;
    double beta_star;
    if (th.interior_empty) {
        const bool one_wins = profit_at(params, r, 1.0) >= profit_at(params, r, 0.0);
        regime = one_wins ? Regime::HighCommission : Regime::LowCommission;
        beta_star = one_wins ? 1.0 : 0.0;
    } else if (r <= th.r_l) {
        regime = Regime::LowCommission;
        beta_star = 0.0;
    } else if (r >= th.r_h) {
        regime = Regime::HighCommission;
        beta_star = 1.0;
    } else {
        regime = Regime::Interior;
        beta_star = interior_beta_hat(params, r).value();
    }

    // For rates between the concavity bound r_h1 and the beta=1 root r_h2 the
    // profit can be neither concave nor increasing at the top, and the
    // threshold rule misses an interior maximum. Verify the candidate against
    // a profit scan and repair it when beaten.
    double scan_best_beta = 0.0, scan_best = -1e300;
    for (int k = 0; k <= 40; ++k) {
        const double b = k / 40.0;
        const double value = profit_at(params, r, b);
        if (value > scan_best) {
            scan_best = value;
            scan_best_beta = b;
        }
    }
    if (profit_at(params, r, beta_star) < scan_best - (1e-12 + 1e-9 * std::abs(scan_best))) {
        double candidate = scan_best_beta;
        if (candidate > 0.0 && candidate < 1.0)
            candidate = refine_maximum(params, r, candidate);
        beta_star = candidate;
        const double at_zero = profit_at(params, r, 0.0);
        const double at_one = profit_at(params, r, 1.0);
        const double at_candidate = profit_at(params, r, candidate);
        if (at_zero >= at_candidate && at_zero >= at_one) beta_star = 0.0;
        else if (at_one >= at_candidate && at_one > at_zero) beta_star = 1.0;
        regime = beta_star == 0.0   ? Regime::LowCommission
                 : beta_star == 1.0 ? Regime::HighCommission
                                    : Regime::Interior;
    }

    out.regime = regime;
    out.beta_star = setup == SetupKind::Independent ? 0.0 : beta_star;
    return out;
}

ComparisonReport compare_setups(const ModelParams& params, double r) {
    const ModelParams p = with_r(params, r);
    ComparisonReport rep{
        optimal_beta(params, r, SetupKind::Integrated),
        optimal_beta(params, r, SetupKind::Independent),
        {}, {}, {}, {}};
    rep.outcomes_integrated =
        outcome_report(p, Precision(rep.policy_integrated.beta_star), SetupKind::Integrated);
    rep.outcomes_independent =
        outcome_report(p, Precision(rep.policy_independent.beta_star), SetupKind::Independent);

    const OutcomeReport& gi = rep.outcomes_integrated;
    const OutcomeReport& in = rep.outcomes_independent;
    rep.deltas.seller_profit = in.seller_profit_A - gi.seller_profit_A;
    rep.deltas.consumer_surplus = in.consumer_surplus - gi.consumer_surplus;
    rep.deltas.social_welfare = in.social_welfare - gi.social_welfare;
    rep.deltas.platform_total = in.platform_total - gi.platform_total;

    rep.conditions.r_gt_rl = r > rep.policy_integrated.r_l;
    rep.conditions.t_gt_welfare_bound = params.t > (3.0 - std::sqrt(6.0)) * params.v;
    rep.conditions.delta_gt_welfare_bound =
        params.delta > 4.0 * params.t / (3.0 * params.v - params.t);
    return rep;
}

}  // namespace adsplit
