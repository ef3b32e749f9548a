#include "adsplit/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace adsplit {

namespace {

std::string num(double x) {
    std::ostringstream os;
    os.precision(9);
    os << x;
    return os.str();
}

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

// Length of [a,b] shared with [c,d].
double overlap(double a, double b, double c, double d) {
    return std::max(0.0, std::min(b, d) - std::max(a, c));
}

}  // namespace

std::vector<BoundViolation> check_params(const ModelParams& p) {
    std::vector<BoundViolation> out;
    if (!(p.t > 0.0)) out.push_back({"t", "t > 0 violated: t = " + num(p.t)});
    if (!(p.r > 0.0 && p.r < 1.0))
        out.push_back({"r", "0 < r < 1 violated: r = " + num(p.r)});
    if (!(p.delta > 0.0))
        out.push_back({"delta", "delta > 0 violated: delta = " + num(p.delta)});
    if (!(p.alpha <= 1.0))
        out.push_back({"alpha", "alpha <= 1 violated: alpha = " + num(p.alpha)});
    if (!(p.delta < p.alpha))
        out.push_back({"delta", "delta < alpha violated: " + num(p.delta) +
                                    " >= " + num(p.alpha)});
    // The valuation window needs well-defined CTRs to be evaluated at all.
    if (p.t > 0.0 && p.delta > 0.0 && p.alpha > p.delta && p.alpha < 2.0) {
        const double lower = p.t * (p.alpha / ((2.0 - p.alpha) * p.delta) + 0.5);
        if (!(p.v > lower))
            out.push_back({"v", "v > t*(alpha/((2-alpha)*delta) + 1/2) violated: " + num(p.v) +
                                    " <= " + num(lower)});
        if (!(p.v < 2.0 * p.t))
            out.push_back({"v", "v < 2t violated: " + num(p.v) + " >= " + num(2.0 * p.t)});
    }
    return out;
}

ModelParams validate_params(const ModelParams& raw) {
    auto violations = check_params(raw);
    if (!violations.empty()) throw DomainError(std::move(violations));
    return raw;
}

Precision::Precision(double beta) : beta_(beta) {
    if (!(beta >= 0.0 && beta <= 1.0))
        throw DomainError({BoundViolation{"beta", "beta out of [0,1]: beta = " + num(beta)}});
}

Thresholds Thresholds::from_prices(const ModelParams& params, const PricePair& prices) {
    Thresholds th;
    th.z_A = (params.v - prices.p_A) / params.t;
    th.z_B = 1.0 - (params.v - prices.p_B) / params.t;
    th.z_AB = 0.5 + (prices.p_B - prices.p_A) / (2.0 * params.t);
    return th;
}

bool Thresholds::ordered_within_unit() const {
    return 0.0 < z_B && z_B < z_AB && z_AB < z_A && z_A < 1.0;
}

SignalCase classify_signal(double s, const Thresholds& th) {
    if (s <= th.z_B) return SignalCase::C1;
    if (s <= th.z_AB) return SignalCase::C2;
    if (s <= th.z_A) return SignalCase::C3;
    return SignalCase::C4;
}

std::optional<Product> purchase_decision(double z, ClickEvent event, Product prominent,
                                         const PricePair& prices, const ModelParams& params) {
    const Thresholds th = Thresholds::from_prices(params, prices);
    const bool a_ok = z <= th.z_A;  // nonnegative net utility from A
    const bool b_ok = z > th.z_B;   // nonnegative net utility from B

    auto single = [&](Product clicked) -> std::optional<Product> {
        if (clicked == Product::A) return a_ok ? std::optional<Product>(Product::A) : std::nullopt;
        return b_ok ? std::optional<Product>(Product::B) : std::nullopt;
    };

    switch (event) {
        case ClickEvent::Neither:
            return std::nullopt;
        case ClickEvent::OnlyProminent:
            return single(prominent);
        case ClickEvent::OnlyLess:
            return single(other(prominent));
        case ClickEvent::Both:
            if (z <= th.z_AB) return a_ok ? std::optional<Product>(Product::A) : std::nullopt;
            return b_ok ? std::optional<Product>(Product::B) : std::nullopt;
    }
    return std::nullopt;
}

namespace {

// Clamped cutoffs driving every demand probability. a_cut / b_cut are the
// effective both-click purchase cutoffs (preference and nonnegative surplus).
struct Cutoffs {
    double z_A, z_B;        // clamped single-click cutoffs
    double a_cut, b_cut;    // clamped both-click purchase cutoffs
    double raw_z_A, raw_z_B, raw_a_cut, raw_b_cut;

    explicit Cutoffs(const ModelParams& params, const PricePair& prices) {
        const Thresholds th = Thresholds::from_prices(params, prices);
        raw_z_A = th.z_A;
        raw_z_B = th.z_B;
        raw_a_cut = std::min(th.z_AB, th.z_A);
        raw_b_cut = std::max(th.z_AB, th.z_B);
        z_A = clamp01(raw_z_A);
        z_B = clamp01(raw_z_B);
        a_cut = clamp01(raw_a_cut);
        b_cut = clamp01(raw_b_cut);
    }
};

// Demand of product A with z uniform on [0,1], by A's slot.
double uniform_demand_A(const ModelParams& p, const Cutoffs& c, bool a_prominent) {
    const double only = a_prominent ? p.alpha * (1.0 - p.delta) : (1.0 - p.alpha) * p.delta;
    return only * c.z_A + p.alpha * p.delta * c.a_cut;
}

double uniform_demand_B(const ModelParams& p, const Cutoffs& c, bool b_prominent) {
    const double only = b_prominent ? p.alpha * (1.0 - p.delta) : (1.0 - p.alpha) * p.delta;
    return only * (1.0 - c.z_B) + p.alpha * p.delta * (1.0 - c.b_cut);
}

// Demand at a known location z = s (the informative branch).
double informative_demand_A(const ModelParams& p, const Cutoffs& c, bool a_prominent, double s) {
    const double only = a_prominent ? p.alpha * (1.0 - p.delta) : (1.0 - p.alpha) * p.delta;
    double d = 0.0;
    if (s <= c.raw_z_A) d += only;
    if (s <= c.raw_a_cut) d += p.alpha * p.delta;
    return d;
}

double informative_demand_B(const ModelParams& p, const Cutoffs& c, bool b_prominent, double s) {
    const double only = b_prominent ? p.alpha * (1.0 - p.delta) : (1.0 - p.alpha) * p.delta;
    double d = 0.0;
    if (s > c.raw_z_B) d += only;
    if (s > c.raw_b_cut) d += p.alpha * p.delta;
    return d;
}

void require_ordered(const ModelParams& params, const PricePair& prices) {
    const Thresholds th = Thresholds::from_prices(params, prices);
    if (!th.ordered_within_unit()) {
        std::ostringstream os;
        os.precision(9);
        os << "threshold ordering 0 < z_B < z_AB < z_A < 1 violated: z_B = " << th.z_B
           << ", z_AB = " << th.z_AB << ", z_A = " << th.z_A;
        throw ThresholdOrderError(os.str());
    }
}

}  // namespace

DemandPair demand_given_signal(const ModelParams& params, Precision beta,
                               const PricePair& prices, Product prominent, double s) {
    require_ordered(params, prices);
    const Cutoffs c(params, prices);
    const bool a_prom = prominent == Product::A;
    const double b = beta.value();
    return {b * informative_demand_A(params, c, a_prom, s) +
                (1.0 - b) * uniform_demand_A(params, c, a_prom),
            b * informative_demand_B(params, c, !a_prom, s) +
                (1.0 - b) * uniform_demand_B(params, c, !a_prom)};
}

DemandPair demand_difference(const ModelParams& params, Precision beta, const PricePair& prices,
                             double s) {
    require_ordered(params, prices);
    const Cutoffs c(params, prices);
    const double gap = params.alpha - params.delta;
    const double b = beta.value();
    const double comp_A = gap * ((1.0 - b) * c.z_A + (s <= c.raw_z_A ? b : 0.0));
    const double comp_B = gap * ((1.0 - b) * (1.0 - c.z_B) + (s > c.raw_z_B ? b : 0.0));
    return {comp_A, comp_B};
}

double wtp_bid(Product seller, double s, const PricePair& prices, const ModelParams& params,
               Precision beta) {
    const DemandPair diff = demand_difference(params, beta, prices, s);
    if (seller == Product::A) return diff.d_A * prices.p_A * (1.0 - params.r);
    return diff.d_B * prices.p_B * (1.0 - params.r);
}

AuctionOutcome run_auction(double bid_A, double bid_B, double s, Precision beta) {
    if (bid_A > bid_B) return {Product::A, bid_B};
    if (bid_B > bid_A) return {Product::B, bid_A};
    const double posterior_mean = beta.value() * s + (1.0 - beta.value()) * 0.5;
    const Product winner = posterior_mean <= 0.5 ? Product::A : Product::B;
    return {winner, bid_A};
}

DemandPair expected_demand_unchecked(const ModelParams& params, Precision beta,
                                     const PricePair& prices) {
    const Cutoffs c(params, prices);
    const double b = beta.value();
    const double ad = params.alpha * params.delta;
    const double a_only_prom = params.alpha * (1.0 - params.delta);
    const double a_only_less = (1.0 - params.alpha) * params.delta;

    // A prominent on [0, 1/2], B prominent on (1/2, 1].
    double d_A = 0.5 * (1.0 - b) * (uniform_demand_A(params, c, true) +
                                    uniform_demand_A(params, c, false));
    d_A += b * (a_only_prom * overlap(0.0, 0.5, 0.0, c.z_A) + ad * overlap(0.0, 0.5, 0.0, c.a_cut));
    d_A += b * (a_only_less * overlap(0.5, 1.0, 0.0, c.z_A) + ad * overlap(0.5, 1.0, 0.0, c.a_cut));

    double d_B = 0.5 * (1.0 - b) * (uniform_demand_B(params, c, false) +
                                    uniform_demand_B(params, c, true));
    d_B += b * (a_only_less * overlap(0.0, 0.5, c.z_B, 1.0) + ad * overlap(0.0, 0.5, c.b_cut, 1.0));
    d_B += b * (a_only_prom * overlap(0.5, 1.0, c.z_B, 1.0) + ad * overlap(0.5, 1.0, c.b_cut, 1.0));

    return {d_A, d_B};
}

DemandPair aggregate_demand(const ModelParams& params, Precision beta, const PricePair& prices) {
    require_ordered(params, prices);
    return expected_demand_unchecked(params, beta, prices);
}

}  // namespace adsplit
