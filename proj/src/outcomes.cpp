#include "adsplit/outcomes.hpp"

namespace adsplit {

namespace {

double denominator_q(const ModelParams& p, double b) {
    return 2.0 * (p.alpha + p.delta) - 3.0 * p.alpha * p.delta -
           2.0 * b * (p.alpha - p.delta);
}

// alpha*(1-beta) + delta*(1-alpha+beta); scales both demand and commission.
double demand_factor(const ModelParams& p, double b) {
    return p.alpha * (1.0 - b) + p.delta * (1.0 - p.alpha + b);
}

}  // namespace

double l3_quantity(const ModelParams& p, Precision beta) {
    const double b = beta.value();
    return p.alpha * (p.v * (1.0 - b * b) - (3.0 - b) * b * p.t) -
           p.delta * (p.t * (p.alpha * (1.0 - 2.0 * b) + b * (1.0 + b)) -
                      (b + 1.0) * p.v * (1.0 - p.alpha + b));
}

double platform_commission(const ModelParams& p, Precision beta) {
    const double b = beta.value();
    const double Q = denominator_q(p, b);
    const double L1 = aux_quantities(p, beta).L1;
    return p.r * L1 * L1 * demand_factor(p, b) / (p.t * Q * Q);
}

double ad_revenue(const ModelParams& p, Precision beta) {
    const double b = beta.value();
    const double Q = denominator_q(p, b);
    const double L1 = aux_quantities(p, beta).L1;
    return (1.0 - p.r) * L1 * l3_quantity(p, beta) * p.alpha * (p.alpha - p.delta) /
           (p.t * Q * Q);
}

SellerProfit seller_profit(const ModelParams& p, Precision beta) {
    const double b = beta.value();
    const double Q = denominator_q(p, b);
    const double L1 = aux_quantities(p, beta).L1;
    SellerProfit out;
    out.sales_component =
        (1.0 - p.r) * L1 * L1 * demand_factor(p, b) / (2.0 * p.t * Q * Q);
    out.adfee_component = (1.0 - p.r) * L1 * l3_quantity(p, beta) * p.alpha *
                          (p.alpha - p.delta) / (2.0 * p.t * Q * Q);
    out.total = out.sales_component - out.adfee_component;
    return out;
}

double consumer_surplus(const ModelParams& p, Precision beta) {
    const double b = beta.value();
    const double ps = solve_equilibrium(p, beta).p_star;
    const double edge = 2.0 * ps + p.t - 2.0 * p.v;  // both-click surplus boundary term
    const double informed = (1.0 - p.alpha) * p.delta * edge * edge +
                            p.alpha * p.t * (4.0 * p.v - 4.0 * ps - p.t);
    const double uninformed = 2.0 * p.delta * (ps - p.v) * (ps - p.v) +
                              2.0 * p.alpha * (ps - p.v) * (ps - p.v) -
                              p.alpha * p.delta * edge * edge;
    return (b * informed + (1.0 - b) * uninformed) / (4.0 * p.t);
}

double social_welfare(const ModelParams& p, Precision beta) {
    const double b = beta.value();
    const double ps = solve_equilibrium(p, beta).p_star;
    const double span = p.t - 2.0 * p.v;
    const double informed =
        (1.0 - p.alpha) * p.delta * (span * span - 4.0 * ps * ps) -
        p.alpha * p.t * (p.t - 4.0 * p.v);
    const double uninformed =
        2.0 * p.alpha * (p.v - ps) * (ps + p.v) +
        p.delta * (2.0 * p.v * p.v - (2.0 - 4.0 * p.alpha) * ps * ps -
                   p.alpha * span * span);
    return (b * informed + (1.0 - b) * uninformed) / (4.0 * p.t);
}

OutcomeReport outcome_report(const ModelParams& params, Precision beta, SetupKind setup) {
    const EquilibriumSolution sol = solve_equilibrium(params, beta);
    const DemandPair demand =
        aggregate_demand(params, beta, PricePair{sol.p_star, sol.p_star});
    const SellerProfit seller = seller_profit(params, beta);

    OutcomeReport rep;
    rep.p_star = sol.p_star;
    rep.demand_A = demand.d_A;
    rep.demand_B = demand.d_B;
    rep.seller_sales_component = seller.sales_component;
    rep.seller_adfee_component = seller.adfee_component;
    rep.seller_profit_A = seller.total;
    rep.seller_profit_B = seller.total;
    rep.platform_commission = platform_commission(params, beta);
    rep.ad_revenue = ad_revenue(params, beta);
    if (setup == SetupKind::Integrated) {
        rep.platform_total = rep.platform_commission + rep.ad_revenue;
        rep.adfirm_profit = 0.0;
    } else {
        rep.platform_total = rep.platform_commission;
        rep.adfirm_profit = rep.ad_revenue;
    }
    rep.consumer_surplus = consumer_surplus(params, beta);
    rep.social_welfare = social_welfare(params, beta);
    rep.setup = setup;
    rep.beta = beta.value();
    return rep;
}

}  // namespace adsplit
