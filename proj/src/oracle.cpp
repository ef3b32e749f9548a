#include "adsplit/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "adsplit/rng.hpp"

namespace adsplit {

namespace {

// Fixed-size accumulation blocks make the reduction tree independent of the
// worker count, so sums are bit-identical for any parallelism degree.
constexpr std::uint64_t kBlock = 16384;

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

ClickEvent to_event(bool clicked_prominent, bool clicked_less) {
    if (clicked_prominent && clicked_less) return ClickEvent::Both;
    if (clicked_prominent) return ClickEvent::OnlyProminent;
    if (clicked_less) return ClickEvent::OnlyLess;
    return ClickEvent::Neither;
}

Estimate make_estimate(double sum, double sumsq, std::uint64_t n) {
    Estimate e;
    e.n = n;
    e.mean = sum / static_cast<double>(n);
    if (n > 1) {
        const double var =
            std::max(0.0, (sumsq - sum * sum / static_cast<double>(n)) /
                              static_cast<double>(n - 1));
        e.std_error = std::sqrt(var / static_cast<double>(n));
    }
    return e;
}

// Runs `blocks` work items on the requested number of threads; body(blk) must
// only touch its own slot.
template <class Body>
void run_blocks(std::uint64_t blocks, unsigned workers, Body&& body) {
    if (workers == 0) workers = std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, blocks));
    if (workers <= 1) {
        for (std::uint64_t b = 0; b < blocks; ++b) body(b);
        return;
    }
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::uint64_t b = next.fetch_add(1); b < blocks; b = next.fetch_add(1))
                body(b);
        });
    for (auto& th : pool) th.join();
}

enum Metric { kDemandA, kDemandB, kSellerA, kSellerB, kCommission, kAdFees, kCS, kSW, kMetricCount };

struct BlockSums {
    double sum[kMetricCount] = {};
    double sumsq[kMetricCount] = {};
    double gap = 0.0;
};

// One consumer's realized contributions under a given position assignment.
struct Realization {
    double m[kMetricCount] = {};
    double identity_gap = 0.0;
};

Realization realize_consumer(const ModelParams& p, const PricePair& prices, double z,
                             ClickEvent event, const AuctionOutcome& auction,
                             bool clicked_prominent) {
    Realization out;
    const auto bought = purchase_decision(z, event, auction.prominent, prices, p);
    if (bought) {
        const bool is_a = *bought == Product::A;
        const double price = is_a ? prices.p_A : prices.p_B;
        const double misfit = is_a ? p.t * z : p.t * (1.0 - z);
        out.m[is_a ? kDemandA : kDemandB] += 1.0;
        out.m[is_a ? kSellerA : kSellerB] += (1.0 - p.r) * price;
        out.m[kCommission] += p.r * price;
        out.m[kCS] += p.v - price - misfit;
        out.m[kSW] += p.v - misfit;
    }
    if (clicked_prominent) {
        out.m[auction.prominent == Product::A ? kSellerA : kSellerB] -= auction.payment;
        out.m[kAdFees] += auction.payment;
    }
    out.identity_gap = std::abs(out.m[kSW] - (out.m[kCS] + out.m[kSellerA] + out.m[kSellerB] +
                                              out.m[kCommission] + out.m[kAdFees]));
    return out;
}

void require_positive_n(const SimConfig& config) {
    if (config.n == 0) throw DomainError({BoundViolation{"n", "n >= 1 violated: n = 0"}});
}

}  // namespace

SimReport simulate_market(const ModelParams& params, Precision beta, const PricePair& prices,
                          const BidSchedule& bids, const SimConfig& config) {
    require_positive_n(config);
    const double b = beta.value();
    const std::uint64_t n = config.n;
    const std::uint64_t blocks = (n + kBlock - 1) / kBlock;
    std::vector<BlockSums> partial(blocks);

    run_blocks(blocks, config.workers, [&](std::uint64_t blk) {
        BlockSums bs;
        const std::uint64_t lo = blk * kBlock;
        const std::uint64_t hi = std::min(n, lo + kBlock);
        for (std::uint64_t i = lo; i < hi; ++i) {
            const double z = CounterRng::uniform(config.seed, i, 0);
            const bool informative = CounterRng::uniform(config.seed, i, 1) < b;
            const double s = informative ? z : CounterRng::uniform(config.seed, i, 2);
            const bool click_prom = CounterRng::uniform(config.seed, i, 3) < params.alpha;
            const bool click_less = CounterRng::uniform(config.seed, i, 4) < params.delta;

            const BidPair bp = bids(s);
            const AuctionOutcome auction = run_auction(bp.bid_A, bp.bid_B, s, beta);
            const Realization r = realize_consumer(params, prices, z,
                                                   to_event(click_prom, click_less), auction,
                                                   click_prom);
            for (int k = 0; k < kMetricCount; ++k) {
                bs.sum[k] += r.m[k];
                bs.sumsq[k] += r.m[k] * r.m[k];
            }
            bs.gap = std::max(bs.gap, r.identity_gap);
        }
        partial[blk] = bs;
    });

    BlockSums total;
    for (const auto& bs : partial) {
        for (int k = 0; k < kMetricCount; ++k) {
            total.sum[k] += bs.sum[k];
            total.sumsq[k] += bs.sumsq[k];
        }
        total.gap = std::max(total.gap, bs.gap);
    }

    SimReport rep;
    rep.demand_A = make_estimate(total.sum[kDemandA], total.sumsq[kDemandA], n);
    rep.demand_B = make_estimate(total.sum[kDemandB], total.sumsq[kDemandB], n);
    rep.seller_profit_A = make_estimate(total.sum[kSellerA], total.sumsq[kSellerA], n);
    rep.seller_profit_B = make_estimate(total.sum[kSellerB], total.sumsq[kSellerB], n);
    rep.commission = make_estimate(total.sum[kCommission], total.sumsq[kCommission], n);
    rep.ad_fees = make_estimate(total.sum[kAdFees], total.sumsq[kAdFees], n);
    rep.consumer_surplus = make_estimate(total.sum[kCS], total.sumsq[kCS], n);
    rep.social_welfare = make_estimate(total.sum[kSW], total.sumsq[kSW], n);
    rep.max_identity_gap = total.gap;
    return rep;
}

std::pair<Estimate, Estimate> conditional_demand_mc(const ModelParams& params, Precision beta,
                                                    const PricePair& prices, Product prominent,
                                                    double s, const SimConfig& config) {
    require_positive_n(config);
    const double b = beta.value();
    const std::uint64_t n = config.n;
    const std::uint64_t blocks = (n + kBlock - 1) / kBlock;

    struct Sums {
        double a = 0.0, b = 0.0;  // indicator sums; squares equal the sums
    };
    std::vector<Sums> partial(blocks);

    run_blocks(blocks, config.workers, [&](std::uint64_t blk) {
        Sums acc;
        const std::uint64_t lo = blk * kBlock;
        const std::uint64_t hi = std::min(n, lo + kBlock);
        for (std::uint64_t i = lo; i < hi; ++i) {
            const bool informative = CounterRng::uniform(config.seed, i, 0) < b;
            const double z = informative ? s : CounterRng::uniform(config.seed, i, 1);
            const bool click_prom = CounterRng::uniform(config.seed, i, 2) < params.alpha;
            const bool click_less = CounterRng::uniform(config.seed, i, 3) < params.delta;
            const auto bought = purchase_decision(z, to_event(click_prom, click_less),
                                                  prominent, prices, params);
            if (bought == Product::A) acc.a += 1.0;
            if (bought == Product::B) acc.b += 1.0;
        }
        partial[blk] = acc;
    });

    double sum_a = 0.0, sum_b = 0.0;
    for (const auto& p : partial) {
        sum_a += p.a;
        sum_b += p.b;
    }
    return {make_estimate(sum_a, sum_a, n), make_estimate(sum_b, sum_b, n)};
}

double deviation_profit(const ModelParams& p, Precision beta, double own_price,
                        double opponent_price, Product who) {
    const double b = beta.value();
    const double gap = p.alpha - p.delta;
    const double margin = 1.0 - p.r;
    const PricePair prices = who == Product::A ? PricePair{own_price, opponent_price}
                                               : PricePair{opponent_price, own_price};
    const DemandPair demand = expected_demand_unchecked(p, beta, prices);

    double fee;
    if (who == Product::A) {
        // A wins s in [0, 1/2] and pays B's bid per prominent click.
        const double cut_b = clamp01(1.0 - (p.v - opponent_price) / p.t);
        const double low = gap * (1.0 - b) * margin * opponent_price * (1.0 - cut_b);
        const double step = b * gap * margin * opponent_price;
        fee = p.alpha * (0.5 * low + step * std::max(0.0, 0.5 - cut_b));
        return margin * own_price * demand.d_A - fee;
    }
    const double cut_a = clamp01((p.v - opponent_price) / p.t);
    const double low = gap * (1.0 - b) * margin * opponent_price * cut_a;
    const double step = b * gap * margin * opponent_price;
    fee = p.alpha * (0.5 * low + step * std::max(0.0, cut_a - 0.5));
    return margin * own_price * demand.d_B - fee;
}

BestResponseReport best_response_gap(const ModelParams& params, Precision beta,
                                     double opponent_price, const PriceGrid& grid) {
    if (!(grid.step > 0.0) || !(grid.lo < grid.hi))
        throw GridError("best_response_gap: malformed grid");
    const EquilibriumSolution sol = solve_equilibrium(params, beta);
    if (sol.p_star < grid.lo || sol.p_star > grid.hi)
        throw GridError("best_response_gap: grid does not bracket p*");

    const auto count =
        static_cast<std::size_t>(std::floor((grid.hi - grid.lo) / grid.step + 1e-9)) + 1;
    std::vector<double> profit(count);
    std::size_t best = 0;
    for (std::size_t i = 0; i < count; ++i) {
        const double price = grid.lo + static_cast<double>(i) * grid.step;
        profit[i] = deviation_profit(params, beta, price, opponent_price, Product::A);
        if (profit[i] > profit[best]) best = i;
    }

    bool concave = true;
    for (std::size_t i = 1; i + 1 < count; ++i)
        if (profit[i - 1] - 2.0 * profit[i] + profit[i + 1] > 1e-12) concave = false;

    BestResponseReport rep;
    rep.p_star = sol.p_star;
    rep.eq_profit = deviation_profit(params, beta, sol.p_star, opponent_price, Product::A);
    rep.argmax_price = grid.lo + static_cast<double>(best) * grid.step;
    rep.argmax_profit = profit[best];
    rep.gap = rep.argmax_profit - rep.eq_profit;
    rep.concave = concave;
    return rep;
}

BidDeviationReport bid_deviation_check(const ModelParams& params, Precision beta,
                                       const std::vector<double>& multipliers,
                                       const SimConfig& config) {
    require_positive_n(config);
    const EquilibriumSolution sol = solve_equilibrium(params, beta);
    const PricePair prices{sol.p_star, sol.p_star};
    const double b = beta.value();
    const std::uint64_t n = config.n;
    const std::uint64_t blocks = (n + kBlock - 1) / kBlock;
    const std::size_t m_count = multipliers.size();

    struct Sums {
        std::vector<double> profit, profit_sq, diff, diff_sq;
        explicit Sums(std::size_t m)
            : profit(m, 0.0), profit_sq(m, 0.0), diff(m, 0.0), diff_sq(m, 0.0) {}
    };
    std::vector<Sums> partial(blocks, Sums(m_count));

    run_blocks(blocks, config.workers, [&](std::uint64_t blk) {
        Sums acc(m_count);
        const std::uint64_t lo = blk * kBlock;
        const std::uint64_t hi = std::min(n, lo + kBlock);
        for (std::uint64_t i = lo; i < hi; ++i) {
            const double z = CounterRng::uniform(config.seed, i, 0);
            const bool informative = CounterRng::uniform(config.seed, i, 1) < b;
            const double s = informative ? z : CounterRng::uniform(config.seed, i, 2);
            const bool click_prom = CounterRng::uniform(config.seed, i, 3) < params.alpha;
            const bool click_less = CounterRng::uniform(config.seed, i, 4) < params.delta;
            const ClickEvent event = to_event(click_prom, click_less);
            const BidPair eq_bids = bid_schedule(sol, s);

            auto seller_a_profit = [&](double bid_a) {
                const AuctionOutcome auction = run_auction(bid_a, eq_bids.bid_B, s, beta);
                double value = 0.0;
                const auto bought =
                    purchase_decision(z, event, auction.prominent, prices, params);
                if (bought == Product::A) value += (1.0 - params.r) * prices.p_A;
                if (click_prom && auction.prominent == Product::A) value -= auction.payment;
                return value;
            };

            const double truthful = seller_a_profit(eq_bids.bid_A);
            for (std::size_t k = 0; k < m_count; ++k) {
                const double deviated = seller_a_profit(multipliers[k] * eq_bids.bid_A);
                const double diff = deviated - truthful;
                acc.profit[k] += deviated;
                acc.profit_sq[k] += deviated * deviated;
                acc.diff[k] += diff;
                acc.diff_sq[k] += diff * diff;
            }
        }
        partial[blk] = std::move(acc);
    });

    Sums total(m_count);
    for (const auto& bs : partial)
        for (std::size_t k = 0; k < m_count; ++k) {
            total.profit[k] += bs.profit[k];
            total.profit_sq[k] += bs.profit_sq[k];
            total.diff[k] += bs.diff[k];
            total.diff_sq[k] += bs.diff_sq[k];
        }

    BidDeviationReport rep;
    rep.rows.reserve(m_count);
    for (std::size_t k = 0; k < m_count; ++k) {
        const Estimate ep = make_estimate(total.profit[k], total.profit_sq[k], n);
        const Estimate ed = make_estimate(total.diff[k], total.diff_sq[k], n);
        BidDeviationRow row;
        row.multiplier = multipliers[k];
        row.profit_mean = ep.mean;
        row.profit_se = ep.std_error;
        row.diff_mean = ed.mean;
        row.diff_se = ed.std_error;
        row.profitable = row.diff_mean > 3.0 * row.diff_se && row.diff_mean > 0.0;
        rep.any_profitable = rep.any_profitable || row.profitable;
        rep.rows.push_back(row);
    }
    return rep;
}

}  // namespace adsplit
