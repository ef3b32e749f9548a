#include <array>
#include <cmath>

#include "doctest.h"

#include "adsplit/policy.hpp"
#include "support.hpp"

using namespace adsplit;
using testsupport::ParamSampler;

namespace {

ModelParams with_r(ModelParams p, double r) {
    p.r = r;
    return p;
}

// Platform profit by piecewise-exact integration over the signal axis, using
// only the per-signal demand table and the bid schedule. Independent of the
// closed forms it is used to check.
double platform_profit_by_integration(const ModelParams& p, double beta) {
    const Precision b(beta);
    const EquilibriumSolution sol = solve_equilibrium(p, b);
    const PricePair prices{sol.p_star, sol.p_star};

    const std::array<double, 5> cuts{0.0, sol.z_B_star, 0.5, sol.z_A_star, 1.0};
    double commission = 0.0, fees = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double len = cuts[i + 1] - cuts[i];
        if (len <= 0.0) continue;
        const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
        const Product prominent = mid <= 0.5 ? Product::A : Product::B;
        const DemandPair d = demand_given_signal(p, b, prices, prominent, mid);
        commission += len * p.r * (d.d_A + d.d_B) * sol.p_star;
        const BidPair bids = bid_schedule(sol, mid);
        const double payment = std::min(bids.bid_A, bids.bid_B);  // loser's bid
        fees += len * p.alpha * payment;
    }
    return commission + fees;
}

}  // namespace

TEST_CASE("platform profit derivative: sign sweep, quadrature agreement, affinity in r") {
    const ModelParams tcase = validate_params(testsupport::t_case_params());

    // positive for every beta at r = 0.25, hence beta* = 1
    for (int k = 0; k <= 20; ++k)
        CHECK(platform_profit_beta_derivative(tcase, Precision(k / 20.0)) > 0.0);

    // the printed derivative values at the bounds
    CHECK(platform_profit_beta_derivative(tcase, Precision(0.0)) ==
          doctest::Approx(0.00211542).epsilon(1e-4));
    CHECK(platform_profit_beta_derivative(tcase, Precision(1.0)) ==
          doctest::Approx(0.00161466).epsilon(1e-4));

    // a pure ad-fee platform dislikes precision
    CHECK(platform_profit_beta_derivative(with_r(tcase, 0.0), Precision(0.0)) < 0.0);

    // agreement with a derivative of the integration-based profit
    for (double beta : {0.2, 0.5, 0.8}) {
        const double h = 1e-5;
        const double via_integration = (platform_profit_by_integration(tcase, beta + h) -
                                        platform_profit_by_integration(tcase, beta - h)) /
                                       (2.0 * h);
        const double direct = platform_profit_beta_derivative(tcase, Precision(beta));
        CHECK(std::abs(direct - via_integration) / std::abs(direct) < 1e-6);
    }

    // affine structure in r
    ParamSampler sampler(31);
    for (int rep = 0; rep < 20; ++rep) {
        const ModelParams p = sampler.draw();
        const double beta = sampler.uni(0.0, 1.0);
        const double d0 = platform_profit_beta_derivative(with_r(p, 0.0), Precision(beta));
        const double d1 = platform_profit_beta_derivative(with_r(p, 1.0), Precision(beta));
        const double dh = platform_profit_beta_derivative(with_r(p, 0.5), Precision(beta));
        CHECK(std::abs(dh - 0.5 * (d0 + d1)) < 1e-9);
    }
}

TEST_CASE("commission thresholds: defining equations and ordering") {
    const ModelParams tcase = validate_params(testsupport::t_case_params());
    const CommissionThresholds th = commission_thresholds(tcase);
    CHECK(th.r_l > 0.0);
    CHECK(th.r_l < th.r_h);
    CHECK_FALSE(th.interior_empty);
    CHECK(th.r_h == doctest::Approx(std::min(th.r_h1, th.r_h2)));

    // at r = r_l the profit derivative at beta = 0 vanishes
    CHECK(std::abs(platform_profit_beta_derivative(with_r(tcase, th.r_l), Precision(0.0))) <
          1e-9);
    // at r = r_h2 the derivative at beta = 1 vanishes
    CHECK(std::abs(platform_profit_beta_derivative(with_r(tcase, th.r_h2), Precision(1.0))) <
          1e-9);
}

TEST_CASE("interior optimum: first-order condition, dominance, movement with r") {
    const ModelParams p = validate_params({1.0, 0.54, 0.75, 0.5, 0.35});
    const CommissionThresholds th = commission_thresholds(p);
    REQUIRE(th.r_l < 0.35);
    REQUIRE(0.35 < th.r_h);

    const Precision hat = interior_beta_hat(p, 0.35);
    CHECK(hat.value() > 0.0);
    CHECK(hat.value() < 1.0);
    CHECK(std::abs(platform_profit_beta_derivative(with_r(p, 0.35), hat)) < 1e-8);

    // profit at beta-hat dominates a fine grid
    auto profit = [&](double beta) {
        const Precision pb(beta);
        const ModelParams q = with_r(p, 0.35);
        return platform_commission(q, pb) + ad_revenue(q, pb);
    };
    const double at_hat = profit(hat.value());
    double grid_best = -1e300, prev = profit(0.0), max_step = 0.0;
    for (int k = 0; k <= 100; ++k) {
        const double value = profit(k / 100.0);
        grid_best = std::max(grid_best, value);
        max_step = std::max(max_step, std::abs(value - prev));
        prev = value;
    }
    CHECK(at_hat >= grid_best - max_step - 1e-12);

    // beta-hat grows with the commission rate inside the interior regime
    double prev_hat = -1.0;
    for (int i = 0; i < 5; ++i) {
        const double r = th.r_l + (th.r_h - th.r_l) * (0.2 + 0.15 * i);
        const double b = interior_beta_hat(p, r).value();
        CHECK(b > prev_hat);
        prev_hat = b;
    }

    // outside the bracket the root finder refuses
    CHECK_THROWS_AS(interior_beta_hat(p, th.r_l * 0.5), BracketError);
}

TEST_CASE("optimal precision by setup and regime") {
    const ModelParams tcase = validate_params(testsupport::t_case_params());

    const PolicyResult ind = optimal_beta(tcase, 0.25, SetupKind::Independent);
    CHECK(ind.beta_star == 0.0);

    const PolicyResult gi = optimal_beta(tcase, 0.25, SetupKind::Integrated);
    CHECK(gi.beta_star == 1.0);
    CHECK(gi.regime == Regime::HighCommission);

    // below r_l both setups sit at zero precision and outcomes coincide
    const CommissionThresholds th = commission_thresholds(tcase);
    const double low_r = th.r_l * 0.5;
    const PolicyResult low = optimal_beta(tcase, low_r, SetupKind::Integrated);
    CHECK(low.beta_star == 0.0);
    CHECK(low.regime == Regime::LowCommission);

    const ComparisonReport rep = compare_setups(tcase, low_r);
    CHECK(std::abs(rep.deltas.seller_profit) < 1e-12);
    CHECK(std::abs(rep.deltas.consumer_surplus) < 1e-12);
    CHECK(std::abs(rep.deltas.social_welfare) < 1e-12);
    CHECK(std::abs(rep.deltas.platform_total) <
          rep.outcomes_integrated.ad_revenue + 1e-12);  // attribution only

    CHECK_THROWS_AS(optimal_beta(tcase, 1.5, SetupKind::Integrated), DomainError);
}

TEST_CASE("setup comparison at the benchmark points") {
    const ModelParams tcase = validate_params(testsupport::t_case_params());
    const ComparisonReport t_case = compare_setups(tcase, 0.25);
    CHECK(t_case.outcomes_independent.social_welfare ==
          doctest::Approx(0.727203).epsilon(2e-6));
    CHECK(t_case.outcomes_integrated.social_welfare ==
          doctest::Approx(0.725461).epsilon(2e-6));
    CHECK(t_case.deltas.social_welfare > 0.0);  // separation helps welfare here

    const ModelParams dc = validate_params(testsupport::delta_case_params());
    const ComparisonReport d_case = compare_setups(dc, 0.35);
    CHECK(d_case.outcomes_integrated.social_welfare ==
          doctest::Approx(0.698673).epsilon(2e-6));
    CHECK(d_case.outcomes_independent.social_welfare ==
          doctest::Approx(0.696120).epsilon(2e-6));
    CHECK(d_case.deltas.social_welfare < 0.0);  // separation hurts welfare here

    CHECK(d_case.conditions.r_gt_rl);
    CHECK(d_case.conditions.t_gt_welfare_bound ==
          (dc.t > (3.0 - std::sqrt(6.0)) * dc.v));
}

TEST_CASE("directional claims over random draws") {
    ParamSampler sampler(77);
    for (int rep = 0; rep < 100; ++rep) {
        const ModelParams p = sampler.draw();
        const ComparisonReport rep_c = compare_setups(p, p.r);
        // precision ordering between setups
        CHECK(rep_c.policy_integrated.beta_star >= rep_c.policy_independent.beta_star);
        CHECK(rep_c.policy_independent.beta_star == 0.0);
        // sellers never gain, consumers never lose from separation
        CHECK(rep_c.deltas.seller_profit <= 1e-12);
        CHECK(rep_c.deltas.consumer_surplus >= -1e-12);
    }
}

TEST_CASE("welfare falls from separation on the stated sub-domain") {
    ParamSampler sampler(78);
    int tested = 0;
    while (tested < 40) {
        const ModelParams p = sampler.draw_welfare_subdomain();
        const ComparisonReport rep = compare_setups(p, p.r);
        if (!rep.conditions.r_gt_rl) continue;  // conditions require r above r_l
        REQUIRE(rep.conditions.t_gt_welfare_bound);
        REQUIRE(rep.conditions.delta_gt_welfare_bound);
        CHECK(rep.deltas.social_welfare < 0.0);
        ++tested;
    }
}
