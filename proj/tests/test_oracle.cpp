#include <cmath>
#include <cstdio>
#include <string>

#include "doctest.h"

#include "adsplit/oracle.hpp"
#include "adsplit/outcomes.hpp"
#include "support.hpp"

using namespace adsplit;

namespace {

std::string fingerprint(const SimReport& r) {
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "%.17g %.17g %.17g %.17g %.17g %.17g %.17g %.17g %.17g %.17g %.17g",
                  r.demand_A.mean, r.demand_A.std_error, r.demand_B.mean,
                  r.seller_profit_A.mean, r.seller_profit_B.mean, r.commission.mean,
                  r.ad_fees.mean, r.consumer_surplus.mean, r.social_welfare.mean,
                  r.social_welfare.std_error, r.max_identity_gap);
    return buf;
}

SimReport run_equilibrium_sim(const ModelParams& p, double beta, SimConfig cfg) {
    const EquilibriumSolution sol = solve_equilibrium(p, Precision(beta));
    return simulate_market(p, Precision(beta), {sol.p_star, sol.p_star},
                           [sol](double s) { return bid_schedule(sol, s); }, cfg);
}

bool within(double estimate, double target, double se, double sigmas) {
    return std::abs(estimate - target) <= sigmas * se + 1e-12;
}

}  // namespace

TEST_CASE("simulation is deterministic and worker-count independent") {
    const ModelParams p = validate_params(testsupport::t_case_params());
    SimConfig cfg;
    cfg.n = 60000;
    cfg.seed = 7;
    cfg.workers = 1;
    const std::string once = fingerprint(run_equilibrium_sim(p, 0.5, cfg));
    const std::string twice = fingerprint(run_equilibrium_sim(p, 0.5, cfg));
    CHECK(once == twice);
    cfg.workers = 4;
    CHECK(fingerprint(run_equilibrium_sim(p, 0.5, cfg)) == once);
    cfg.workers = 3;
    CHECK(fingerprint(run_equilibrium_sim(p, 0.5, cfg)) == once);
}

TEST_CASE("simulation rejects an empty sample") {
    const ModelParams p = validate_params(testsupport::t_case_params());
    SimConfig cfg;
    cfg.n = 0;
    CHECK_THROWS_AS(run_equilibrium_sim(p, 0.5, cfg), DomainError);
}

TEST_CASE("per-consumer accounting identity holds in the simulator") {
    const ModelParams p = validate_params(testsupport::delta_case_params());
    SimConfig cfg;
    cfg.n = 100000;
    const SimReport rep = run_equilibrium_sim(p, 0.7, cfg);
    CHECK(rep.max_identity_gap <= 1e-9);
}

TEST_CASE("simulated market matches the closed forms at positive precision") {
    struct Point {
        ModelParams params;
        double beta;
    };
    // spread across the domain: base point, CTR-heavy, CTR-light, wide gap
    const std::vector<Point> points = {
        {testsupport::t_case_params(), 0.5},
        {testsupport::t_case_params(), 1.0},
        {testsupport::alpha_case_params(), 0.25},
        {testsupport::delta_case_params(), 0.75},
        {{1.0, 0.54, 0.75, 0.5, 0.35}, 0.6},
    };
    SimConfig cfg;
    cfg.n = 300000;
    cfg.seed = 99;
    for (const Point& pt : points) {
        const ModelParams p = validate_params(pt.params);
        const SimReport sim = run_equilibrium_sim(p, pt.beta, cfg);
        const OutcomeReport want = outcome_report(p, Precision(pt.beta), SetupKind::Integrated);
        CHECK(within(sim.demand_A.mean, want.demand_A, sim.demand_A.std_error, 3));
        CHECK(within(sim.demand_B.mean, want.demand_B, sim.demand_B.std_error, 3));
        CHECK(within(sim.seller_profit_A.mean, want.seller_profit_A,
                     sim.seller_profit_A.std_error, 3));
        CHECK(within(sim.seller_profit_B.mean, want.seller_profit_B,
                     sim.seller_profit_B.std_error, 3));
        CHECK(within(sim.commission.mean, want.platform_commission, sim.commission.std_error, 3));
        CHECK(within(sim.ad_fees.mean, want.ad_revenue, sim.ad_fees.std_error, 3));
        CHECK(within(sim.consumer_surplus.mean, want.consumer_surplus,
                     sim.consumer_surplus.std_error, 3));
        CHECK(within(sim.social_welfare.mean, want.social_welfare,
                     sim.social_welfare.std_error, 3));
    }
}

TEST_CASE("aggregate quantities still match under an uninformative signal") {
    // With beta = 0 the bid schedule is flat, every auction ties, and the
    // deterministic tie rule hands A the prominent slot for all signals; the
    // per-seller split differs from the s-split closed forms then, but totals,
    // surplus and welfare do not.
    const ModelParams p = validate_params(testsupport::t_case_params());
    SimConfig cfg;
    cfg.n = 300000;
    const SimReport sim = run_equilibrium_sim(p, 0.0, cfg);
    const OutcomeReport want = outcome_report(p, Precision(0.0), SetupKind::Integrated);
    CHECK(within(sim.demand_A.mean + sim.demand_B.mean, want.demand_A + want.demand_B,
                 sim.demand_A.std_error + sim.demand_B.std_error, 3));
    CHECK(within(sim.seller_profit_A.mean + sim.seller_profit_B.mean,
                 2.0 * want.seller_profit_A,
                 sim.seller_profit_A.std_error + sim.seller_profit_B.std_error, 3));
    CHECK(within(sim.commission.mean, want.platform_commission, sim.commission.std_error, 3));
    CHECK(within(sim.ad_fees.mean, want.ad_revenue, sim.ad_fees.std_error, 3));
    CHECK(within(sim.consumer_surplus.mean, want.consumer_surplus,
                 sim.consumer_surplus.std_error, 3));
    CHECK(within(sim.social_welfare.mean, want.social_welfare,
                 sim.social_welfare.std_error, 3));
}

TEST_CASE("ad fees vanish as the position CTRs converge") {
    const ModelParams p = validate_params({1.0, 0.501, 0.7, 0.7 - 1e-6, 0.25});
    SimConfig cfg;
    cfg.n = 50000;
    const SimReport rep = run_equilibrium_sim(p, 0.5, cfg);
    CHECK(rep.ad_fees.mean < 1e-5);
}

TEST_CASE("conditional demand: degenerate cells under a perfect signal") {
    const ModelParams p = validate_params(testsupport::t_case_params());
    const PricePair prices = testsupport::equilibrium_prices(p, 1.0);
    const Thresholds th = Thresholds::from_prices(p, prices);
    SimConfig cfg;
    cfg.n = 50000;

    // C4 signal, A prominent: a perfectly informed consumer never buys A
    const double s4 = (th.z_A + 1.0) / 2.0;
    const auto [da, db] = conditional_demand_mc(p, Precision(1.0), prices, Product::A, s4, cfg);
    CHECK(da.mean == 0.0);
    CHECK(db.mean > 0.0);
}

TEST_CASE("conditional demand is signal-free when uninformative") {
    const ModelParams p = validate_params(testsupport::t_case_params());
    const PricePair prices = testsupport::equilibrium_prices(p, 0.0);
    SimConfig cfg;
    cfg.n = 100000;
    double prev_mean = -1.0;
    for (double s : {0.1, 0.5, 0.9}) {
        const auto [da, db] = conditional_demand_mc(p, Precision(0.0), prices, Product::A, s, cfg);
        if (prev_mean >= 0.0)
            CHECK(std::abs(da.mean - prev_mean) <= 3.0 * (da.std_error * 2.0));
        prev_mean = da.mean;
    }
}

TEST_CASE("deviation profit agrees with the closed-form seller profit at p*") {
    testsupport::ParamSampler sampler(55);
    for (int rep = 0; rep < 100; ++rep) {
        const ModelParams p = sampler.draw();
        const double beta = sampler.uni(0.0, 1.0);
        const auto sol = solve_equilibrium(p, Precision(beta));
        const double via_deviation =
            deviation_profit(p, Precision(beta), sol.p_star, sol.p_star, Product::A);
        const double closed = seller_profit(p, Precision(beta)).total;
        CHECK(via_deviation == doctest::Approx(closed).epsilon(1e-9));
        // the roles are symmetric
        CHECK(deviation_profit(p, Precision(beta), sol.p_star, sol.p_star, Product::B) ==
              doctest::Approx(closed).epsilon(1e-9));
    }
}

TEST_CASE("best response grid must bracket the equilibrium price") {
    const ModelParams p = validate_params(testsupport::t_case_params());
    CHECK_THROWS_AS(best_response_gap(p, Precision(0.5), 0.5, PriceGrid{0.9, 1.0, 1e-3}),
                    GridError);
}

TEST_CASE("bid deviations: downward never helps, upward wedge is the analytic one") {
    const ModelParams p = validate_params(testsupport::t_case_params());
    const Precision beta(0.5);
    SimConfig cfg;
    cfg.n = 400000;
    const BidDeviationReport rep =
        bid_deviation_check(p, beta, {0.0, 0.5, 0.9, 1.0, 1.1, 2.0}, cfg);
    REQUIRE(rep.rows.size() == 6);

    for (const auto& row : rep.rows) {
        if (row.multiplier <= 1.0) {
            CHECK_FALSE(row.profitable);
            if (row.multiplier < 1.0) CHECK(row.diff_mean < 0.0);
        }
        if (row.multiplier == 1.0) {
            CHECK(row.diff_mean == 0.0);
            CHECK(row.diff_se == 0.0);
        }
    }

    // Overbidding captures the opposite half of the tied middle band. Charged
    // per prominent click, the expected payment there is alpha * b_H against a
    // demand gain of b_H, so the measured gain must equal
    // (1 - alpha) * b_H * (z_A* - 1/2).
    const EquilibriumSolution sol = solve_equilibrium(p, beta);
    const double wedge = (1.0 - p.alpha) * sol.b_H * (sol.z_A_star - 0.5);
    for (const auto& row : rep.rows) {
        if (row.multiplier > 1.0) {
            CHECK(row.profitable);
            CHECK(std::abs(row.diff_mean - wedge) <= 4.0 * row.diff_se);
        }
    }
}
