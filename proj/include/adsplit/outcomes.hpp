#pragma once

// Profit, consumer-surplus and social-welfare evaluation at the symmetric
// equilibrium, for either marketplace setup. The Integrated setup books the
// ad fees to the platform, the Independent setup books them to a separate
// advertising firm; every other quantity coincides at equal precision.

#include "adsplit/equilibrium.hpp"
#include "adsplit/model.hpp"

namespace adsplit {

enum class SetupKind { Integrated, Independent };

// Intermediate quantity of the ad-revenue closed form; positive on the valid
// domain.
double l3_quantity(const ModelParams& params, Precision beta);

// Expected sales commission collected on both products.
double platform_commission(const ModelParams& params, Precision beta);

// Expected per-consumer ad fees (winner's second-price payments times the
// prominent-position CTR); strictly decreasing in beta.
double ad_revenue(const ModelParams& params, Precision beta);

struct SellerProfit {
    double sales_component;  // (1-r) * p* * expected demand, one seller
    double adfee_component;  // expected ad fees paid, == ad_revenue / 2
    double total;
};

SellerProfit seller_profit(const ModelParams& params, Precision beta);

// Expected consumer net utility at the symmetric equilibrium price.
double consumer_surplus(const ModelParams& params, Precision beta);

// Expected gross utility minus misfit cost; prices and fees are transfers.
double social_welfare(const ModelParams& params, Precision beta);

struct OutcomeReport {
    double p_star;
    double demand_A, demand_B;
    double seller_profit_A, seller_profit_B;
    double seller_sales_component, seller_adfee_component;
    double platform_commission;
    double ad_revenue;
    double platform_total;  // commission (+ ad revenue when Integrated)
    double adfirm_profit;   // ad revenue when Independent, else 0
    double consumer_surplus;
    double social_welfare;
    SetupKind setup;
    double beta;
};

OutcomeReport outcome_report(const ModelParams& params, Precision beta, SetupKind setup);

}  // namespace adsplit
