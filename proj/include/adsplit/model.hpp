#pragma once

// Market primitives of the two-seller marketplace with two sponsored ad
// positions: parameter validation, consumer click/purchase behaviour, the
// signal-conditional demand algebra, willingness-to-pay bids, the per-signal
// second-price position auction, and aggregate demand under the equilibrium
// assignment rule.

#include <optional>
#include <vector>

#include "adsplit/errors.hpp"

namespace adsplit {

enum class Product { A, B };

inline Product other(Product p) { return p == Product::A ? Product::B : Product::A; }

// Click realisation for one consumer, relative to the two positions.
enum class ClickEvent { OnlyProminent, OnlyLess, Both, Neither };

// Partition of the signal axis by the purchase cutoffs:
// C1 = [0, z_B], C2 = (z_B, z_AB], C3 = (z_AB, z_A], C4 = (z_A, 1].
enum class SignalCase { C1, C2, C3, C4 };

struct ModelParams {
    double v;      // valuation of the ideal product
    double t;      // misfit cost per unit distance
    double alpha;  // CTR of the more-prominent position
    double delta;  // CTR of the less-prominent position
    double r;      // sales commission rate
};

// Returns the validated parameters or throws DomainError naming every
// violated bound. Admissible set: 0 < delta < alpha <= 1, t > 0, 0 < r < 1,
// t*(alpha/((2-alpha)*delta) + 1/2) < v < 2t.
ModelParams validate_params(const ModelParams& raw);

// Non-throwing variant; an empty vector means valid.
std::vector<BoundViolation> check_params(const ModelParams& raw);

// Targeting precision: probability that the signal reveals the consumer's
// true location.
class Precision {
public:
    explicit Precision(double beta);
    double value() const { return beta_; }

private:
    double beta_;
};

struct PricePair {
    double p_A;
    double p_B;
};

// Purchase cutoffs on the consumer axis. A consumer who clicked only A buys
// iff z <= z_A; one who clicked only B buys iff z > z_B; one who clicked both
// prefers A iff z <= z_AB (and buys the preferred product only at nonnegative
// net utility). z_B lives on the same axis as z: z_B = 1 - (v - p_B)/t.
struct Thresholds {
    double z_A;
    double z_B;
    double z_AB;

    static Thresholds from_prices(const ModelParams& params, const PricePair& prices);

    // 0 < z_B < z_AB < z_A < 1
    bool ordered_within_unit() const;
};

// Case containing s; boundary signals fall into the lower-numbered case.
SignalCase classify_signal(double s, const Thresholds& th);

// The consumer's purchase, if any, given her location, what she clicked and
// which product sat in the prominent slot. Total on all inputs.
std::optional<Product> purchase_decision(double z, ClickEvent event, Product prominent,
                                         const PricePair& prices, const ModelParams& params);

struct DemandPair {
    double d_A;
    double d_B;
};

// Expected demands conditional on signal s with `prominent` in the top slot.
// Equals beta * (demand at z = s) + (1 - beta) * (demand with z uniform).
// Throws ThresholdOrderError unless 0 < z_B < z_AB < z_A < 1.
DemandPair demand_given_signal(const ModelParams& params, Precision beta,
                               const PricePair& prices, Product prominent, double s);

// Position-demand differences (d_A^A - d_A^B, d_B^B - d_B^A) at signal s.
// Each component depends only on the respective seller's own price.
DemandPair demand_difference(const ModelParams& params, Precision beta,
                             const PricePair& prices, double s);

// Willingness-to-pay bid of `seller` at signal s: position demand difference
// times own margin, (d^own - d^other) * p * (1 - r).
double wtp_bid(Product seller, double s, const PricePair& prices, const ModelParams& params,
               Precision beta);

struct AuctionOutcome {
    Product prominent;
    double payment;  // per click on the prominent ad, paid by the winner
};

// Second-price position auction. Ties go to the product closer to the
// posterior mean location beta*s + (1-beta)/2; at an exactly central
// posterior (including every tie under beta = 0) A wins.
AuctionOutcome run_auction(double bid_A, double bid_B, double s, Precision beta);

// Expected demands integrated over s uniform on [0,1] under the equilibrium
// assignment rule (A prominent iff s <= 1/2). Validates threshold ordering.
DemandPair aggregate_demand(const ModelParams& params, Precision beta, const PricePair& prices);

// Same integral without the ordering check: cutoff probabilities are clamped
// to [0,1], so it stays meaningful for prices far from equilibrium. Used by
// the deviation-profit machinery.
DemandPair expected_demand_unchecked(const ModelParams& params, Precision beta,
                                     const PricePair& prices);

}  // namespace adsplit
