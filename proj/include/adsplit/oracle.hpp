#pragma once

// Independent verification layer: Monte Carlo simulation of the market from
// primitives (no closed forms on the inside), plus grid and deviation checks
// that certify the analytic equilibrium.

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "adsplit/equilibrium.hpp"
#include "adsplit/model.hpp"

namespace adsplit {

struct SimConfig {
    std::uint64_t n = 1'000'000;
    std::uint64_t seed = 42;
    unsigned workers = 0;  // 0 = hardware concurrency
};

struct Estimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t n = 0;
};

struct SimReport {
    Estimate demand_A, demand_B;
    Estimate seller_profit_A, seller_profit_B;
    Estimate commission, ad_fees;
    Estimate consumer_surplus, social_welfare;
    // Largest per-consumer violation of welfare = surplus + transfers.
    double max_identity_gap = 0.0;
};

// Bid pair as a function of the signal; must be pure (called concurrently).
using BidSchedule = std::function<BidPair(double s)>;

// Simulates n consumers: z uniform, signal informative with probability beta,
// positions from the per-signal auction, clicks per position CTR, purchases
// per the consumer rule. Identical output for any worker count.
SimReport simulate_market(const ModelParams& params, Precision beta, const PricePair& prices,
                          const BidSchedule& bids, const SimConfig& config);

// Estimates the per-signal demands d_A, d_B conditional on a fixed signal and a
// fixed prominent product; z is drawn from the posterior
// beta * (point mass at s) + (1 - beta) * Uniform[0,1].
std::pair<Estimate, Estimate> conditional_demand_mc(const ModelParams& params, Precision beta,
                                                    const PricePair& prices, Product prominent,
                                                    double s, const SimConfig& config);

// Exact expected profit of `who` at asymmetric prices under the equilibrium
// position rule (A prominent iff s <= 1/2), both sellers bidding WTP at their
// own price. Closed-form piecewise integration, no quadrature error.
double deviation_profit(const ModelParams& params, Precision beta, double own_price,
                        double opponent_price, Product who);

struct PriceGrid {
    double lo;
    double hi;
    double step;
};

struct BestResponseReport {
    double p_star;
    double eq_profit;       // deviator's profit at p_star
    double argmax_price;    // best grid price against the fixed opponent
    double argmax_profit;
    double gap;             // argmax_profit - eq_profit
    bool concave;           // profit second differences <= 0 across the grid
};

// Evaluates the deviator's exact profit over the price grid with the opponent
// fixed. Throws GridError when the grid does not bracket p*.
BestResponseReport best_response_gap(const ModelParams& params, Precision beta,
                                     double opponent_price, const PriceGrid& grid);

struct BidDeviationRow {
    double multiplier;
    double profit_mean, profit_se;
    double diff_mean, diff_se;  // deviated minus truthful, common random numbers
    bool profitable;            // diff_mean > 3 * diff_se
};

struct BidDeviationReport {
    std::vector<BidDeviationRow> rows;
    bool any_profitable = false;
};

// Scales seller A's equilibrium bid schedule by each multiplier and compares
// the simulated profit against truthful bidding on the same consumer stream.
BidDeviationReport bid_deviation_check(const ModelParams& params, Precision beta,
                                       const std::vector<double>& multipliers,
                                       const SimConfig& config);

}  // namespace adsplit
