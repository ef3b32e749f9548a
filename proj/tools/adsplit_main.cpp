// adsplit — equilibrium, precision-policy and welfare analysis of a
// two-seller marketplace with two sponsored ad positions, with a Monte Carlo
// verification suite. Subcommands: eq, outcomes, policy, compare, sweep,
// simulate, verify.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "adsplit/oracle.hpp"
#include "adsplit/outcomes.hpp"
#include "adsplit/policy.hpp"

using namespace adsplit;

namespace {

constexpr int kExitVerifyFailure = 1;
constexpr int kExitInvalidInput = 2;

std::string fmt9(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

struct CliOptions {
    double v = 0, t = 0, alpha = 0, delta = 0, r = 0, beta = 0;
    std::string setup = "integrated";
    std::string axis;
    double lo = 0, hi = 0, step = 0;
    std::string mode = "compare";
    std::uint64_t n = 1000000, seed = 42;
    unsigned workers = 0;
    std::string out, plot_out, format = "csv";
    double perturb_price = 0.0;

    CLI::Option *opt_v = nullptr, *opt_t = nullptr, *opt_alpha = nullptr,
                *opt_delta = nullptr, *opt_r = nullptr, *opt_beta = nullptr;
};

[[noreturn]] void fail_input(const std::string& msg) {
    std::cerr << "error: " << msg << "\n";
    std::exit(kExitInvalidInput);
}

ModelParams require_params(const CliOptions& o) {
    std::string missing;
    auto need = [&](const CLI::Option* opt, const char* name) {
        if (!opt->count()) missing += missing.empty() ? name : std::string(", ") + name;
    };
    need(o.opt_v, "--v");
    need(o.opt_t, "--t");
    need(o.opt_alpha, "--alpha");
    need(o.opt_delta, "--delta");
    need(o.opt_r, "--r");
    if (!missing.empty()) fail_input("missing required flags: " + missing);
    try {
        return validate_params({o.v, o.t, o.alpha, o.delta, o.r});
    } catch (const DomainError& e) {
        fail_input(e.what());
    }
}

Precision require_beta(const CliOptions& o) {
    if (!o.opt_beta->count()) fail_input("missing required flag: --beta");
    try {
        return Precision(o.beta);
    } catch (const DomainError& e) {
        fail_input(e.what());
    }
}

SetupKind parse_setup(const std::string& s) {
    return s == "independent" ? SetupKind::Independent : SetupKind::Integrated;
}

SimConfig sim_config(const CliOptions& o) {
    SimConfig cfg;
    cfg.n = o.n;
    cfg.seed = o.seed;
    cfg.workers = o.workers;
    return cfg;
}

// ---- CSV ---------------------------------------------------------------

class CsvSink {
public:
    CsvSink(const std::string& path, char sep) : sep_(sep) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) fail_input("cannot open output file: " + path);
        }
    }
    std::ostream& os() { return file_.is_open() ? file_ : std::cout; }
    bool to_file() const { return file_.is_open(); }
    void row(const std::vector<std::string>& cells) {
        std::ostream& s = os();
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) s << sep_;
            s << cells[i];
        }
        s << "\n";
    }
    void schema_header() { os() << "# schema=1\n"; }

private:
    char sep_;
    std::ofstream file_;
};

char sep_for(const std::string& format) {
    if (format == "tsv") return '\t';
    if (format == "csv") return ',';
    fail_input("unknown --format (expected csv or tsv)");
}

std::vector<std::string> outcome_csv_header() {
    return {"setup", "beta", "p_star", "demand_A", "demand_B", "seller_sales_component",
            "seller_adfee_component", "seller_profit_A", "seller_profit_B",
            "platform_commission", "ad_revenue", "platform_total", "adfirm_profit",
            "consumer_surplus", "social_welfare"};
}

std::vector<std::string> outcome_csv_row(const OutcomeReport& rep) {
    return {rep.setup == SetupKind::Integrated ? "integrated" : "independent",
            fmt9(rep.beta), fmt9(rep.p_star), fmt9(rep.demand_A), fmt9(rep.demand_B),
            fmt9(rep.seller_sales_component), fmt9(rep.seller_adfee_component),
            fmt9(rep.seller_profit_A), fmt9(rep.seller_profit_B),
            fmt9(rep.platform_commission), fmt9(rep.ad_revenue), fmt9(rep.platform_total),
            fmt9(rep.adfirm_profit), fmt9(rep.consumer_surplus), fmt9(rep.social_welfare)};
}

void print_named(const std::vector<std::pair<std::string, std::string>>& rows) {
    std::size_t width = 0;
    for (const auto& [k, v] : rows) width = std::max(width, k.size());
    for (const auto& [k, v] : rows)
        std::cout << k << std::string(width - k.size() + 2, ' ') << v << "\n";
}

// ---- subcommands --------------------------------------------------------

int cmd_eq(const CliOptions& o) {
    const ModelParams params = require_params(o);
    const Precision beta = require_beta(o);
    const EquilibriumSolution sol = solve_equilibrium(params, beta);
    print_named({{"p_star", fmt9(sol.p_star)},
                 {"b_L", fmt9(sol.b_L)},
                 {"b_H", fmt9(sol.b_H)},
                 {"z_A_star", fmt9(sol.z_A_star)},
                 {"z_B_star", fmt9(sol.z_B_star)}});
    return 0;
}

int cmd_outcomes(const CliOptions& o) {
    const ModelParams params = require_params(o);
    const Precision beta = require_beta(o);
    const OutcomeReport rep = outcome_report(params, beta, parse_setup(o.setup));
    const auto header = outcome_csv_header();
    const auto row = outcome_csv_row(rep);
    std::vector<std::pair<std::string, std::string>> rows;
    for (std::size_t i = 0; i < header.size(); ++i) rows.emplace_back(header[i], row[i]);
    print_named(rows);
    if (!o.out.empty()) {
        CsvSink csv(o.out, sep_for(o.format));
        csv.schema_header();
        csv.row(header);
        csv.row(row);
    }
    return 0;
}

int cmd_policy(const CliOptions& o) {
    const ModelParams params = require_params(o);
    const CommissionThresholds th = commission_thresholds(params);
    const PolicyResult res = optimal_beta(params, params.r, parse_setup(o.setup));
    print_named({{"r", fmt9(params.r)},
                 {"r_l", fmt9(th.r_l)},
                 {"r_h", fmt9(th.r_h)},
                 {"r_h1", fmt9(th.r_h1)},
                 {"r_h2", fmt9(th.r_h2)},
                 {"interior_empty", th.interior_empty ? "true" : "false"},
                 {"setup", o.setup},
                 {"regime", regime_name(res.regime)},
                 {"beta_star", fmt9(res.beta_star)},
                 {"deriv_at_beta0", fmt9(res.deriv_at_zero)},
                 {"deriv_at_beta1", fmt9(res.deriv_at_one)}});
    return 0;
}

int cmd_compare(const CliOptions& o) {
    const ModelParams params = require_params(o);
    const ComparisonReport rep = compare_setups(params, params.r);
    const OutcomeReport& gi = rep.outcomes_integrated;
    const OutcomeReport& in = rep.outcomes_independent;

    struct Line {
        const char* name;
        double integrated, independent;
    };
    const std::vector<Line> lines = {
        {"beta_star", rep.policy_integrated.beta_star, rep.policy_independent.beta_star},
        {"p_star", gi.p_star, in.p_star},
        {"demand_A", gi.demand_A, in.demand_A},
        {"demand_B", gi.demand_B, in.demand_B},
        {"seller_profit", gi.seller_profit_A, in.seller_profit_A},
        {"platform_commission", gi.platform_commission, in.platform_commission},
        {"ad_revenue", gi.ad_revenue, in.ad_revenue},
        {"platform_total", gi.platform_total, in.platform_total},
        {"adfirm_profit", gi.adfirm_profit, in.adfirm_profit},
        {"consumer_surplus", gi.consumer_surplus, in.consumer_surplus},
        {"social_welfare", gi.social_welfare, in.social_welfare},
    };

    std::printf("%-22s %15s %15s %15s\n", "component", "integrated", "independent",
                "delta(ind-int)");
    for (const Line& l : lines)
        std::printf("%-22s %15s %15s %15s\n", l.name, fmt9(l.integrated).c_str(),
                    fmt9(l.independent).c_str(), fmt9(l.independent - l.integrated).c_str());
    std::printf("conditions: r>r_l=%s  t>(3-sqrt6)v=%s  delta>4t/(3v-t)=%s\n",
                rep.conditions.r_gt_rl ? "true" : "false",
                rep.conditions.t_gt_welfare_bound ? "true" : "false",
                rep.conditions.delta_gt_welfare_bound ? "true" : "false");
    std::printf("regimes: integrated=%s (r_l=%s, r_h=%s)\n",
                regime_name(rep.policy_integrated.regime),
                fmt9(rep.policy_integrated.r_l).c_str(),
                fmt9(rep.policy_integrated.r_h).c_str());

    if (!o.out.empty()) {
        CsvSink csv(o.out, sep_for(o.format));
        csv.schema_header();
        csv.row({"component", "integrated", "independent", "delta"});
        for (const Line& l : lines)
            csv.row({l.name, fmt9(l.integrated), fmt9(l.independent),
                     fmt9(l.independent - l.integrated)});
    }
    return 0;
}

// ---- sweep ----------------------------------------------------------------

struct SweepRow {
    double x = 0;
    bool valid = false;
    std::string violation;
    std::vector<std::string> cells;
    double sw_delta = 0;  // compare mode only
};

int cmd_sweep(const CliOptions& o) {
    const bool axis_ok = o.axis == "t" || o.axis == "alpha" || o.axis == "delta" ||
                         o.axis == "r" || o.axis == "beta";
    if (!axis_ok) fail_input("--axis must be one of t, alpha, delta, r, beta");
    if (!(o.step > 0.0) || !(o.lo < o.hi)) fail_input("sweep needs lo < hi and step > 0");
    if (o.axis == "beta" && o.mode != "outcomes")
        fail_input("axis beta requires mode outcomes (policy chooses beta itself)");

    std::string missing;
    auto need = [&](const CLI::Option* opt, const char* name, const char* axis_name) {
        if (o.axis != axis_name && !opt->count())
            missing += missing.empty() ? name : std::string(", ") + name;
    };
    need(o.opt_v, "--v", "");
    need(o.opt_t, "--t", "t");
    need(o.opt_alpha, "--alpha", "alpha");
    need(o.opt_delta, "--delta", "delta");
    need(o.opt_r, "--r", "r");
    if (!missing.empty()) fail_input("missing required flags: " + missing);

    double beta_fixed = 0.0;
    if (o.mode == "outcomes" && o.axis != "beta") {
        if (!o.opt_beta->count()) fail_input("mode outcomes requires --beta");
        beta_fixed = o.beta;
    }

    const int count = static_cast<int>(std::floor((o.hi - o.lo) / o.step + 1e-9)) + 1;
    std::vector<SweepRow> rows(static_cast<std::size_t>(count));

    auto evaluate = [&](int i) {
        SweepRow& row = rows[static_cast<std::size_t>(i)];
        const double x = o.lo + i * o.step;
        row.x = x;
        ModelParams p{o.v, o.t, o.alpha, o.delta, o.r};
        double beta = beta_fixed;
        if (o.axis == "t") p.t = x;
        if (o.axis == "alpha") p.alpha = x;
        if (o.axis == "delta") p.delta = x;
        if (o.axis == "r") p.r = x;
        if (o.axis == "beta") beta = x;

        const auto violations = check_params(p);
        if (!violations.empty() || (o.axis == "beta" && !(x >= 0.0 && x <= 1.0))) {
            row.valid = false;
            std::string why;
            for (const auto& bound : violations)
                why += (why.empty() ? "" : "; ") + bound.detail;
            if (why.empty()) why = "beta out of [0,1]";
            row.violation = why;
            return;
        }
        try {
            if (o.mode == "compare") {
                const ComparisonReport rep = compare_setups(p, p.r);
                row.sw_delta = rep.deltas.social_welfare;
                row.cells = {fmt9(x),
                             fmt9(rep.policy_integrated.beta_star),
                             fmt9(rep.policy_independent.beta_star),
                             regime_name(rep.policy_integrated.regime),
                             fmt9(rep.outcomes_integrated.social_welfare),
                             fmt9(rep.outcomes_independent.social_welfare),
                             fmt9(rep.outcomes_integrated.consumer_surplus),
                             fmt9(rep.outcomes_independent.consumer_surplus),
                             fmt9(rep.outcomes_integrated.seller_profit_A),
                             fmt9(rep.outcomes_independent.seller_profit_A),
                             fmt9(rep.outcomes_integrated.platform_total),
                             fmt9(rep.outcomes_independent.platform_total),
                             fmt9(rep.outcomes_independent.adfirm_profit),
                             "ok"};
            } else if (o.mode == "policy") {
                const PolicyResult res = optimal_beta(p, p.r, SetupKind::Integrated);
                row.cells = {fmt9(x),        fmt9(res.r_l),       fmt9(res.r_h),
                             regime_name(res.regime), fmt9(res.beta_star), fmt9(0.0),
                             "ok"};
            } else {
                const OutcomeReport rep =
                    outcome_report(p, Precision(beta), parse_setup(o.setup));
                row.cells = {fmt9(x)};
                for (const auto& cell : outcome_csv_row(rep)) row.cells.push_back(cell);
                row.cells.push_back("ok");
            }
            row.valid = true;
        } catch (const std::exception& e) {
            row.valid = false;
            row.violation = e.what();
        }
    };

    unsigned workers = o.workers ? o.workers : std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    workers = std::min<unsigned>(workers, static_cast<unsigned>(count));
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) evaluate(i);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (int i = static_cast<int>(w); i < count; i += static_cast<int>(workers))
                    evaluate(i);
            });
        for (auto& th : pool) th.join();
    }

    CsvSink csv(o.out, sep_for(o.format));
    csv.schema_header();
    std::vector<std::string> header;
    if (o.mode == "compare") {
        header = {"axis_value", "beta_star_integrated", "beta_star_independent",
                  "regime_integrated", "sw_integrated", "sw_independent", "cs_integrated",
                  "cs_independent", "seller_profit_integrated", "seller_profit_independent",
                  "platform_total_integrated", "platform_total_independent",
                  "adfirm_independent", "status"};
    } else if (o.mode == "policy") {
        header = {"axis_value", "r_l", "r_h", "regime", "beta_star_integrated",
                  "beta_star_independent", "status"};
    } else {
        header = {"axis_value"};
        for (const auto& h : outcome_csv_header()) header.push_back(h);
        header.push_back("status");
    }
    csv.row(header);
    for (const SweepRow& row : rows) {
        if (row.valid) {
            csv.row(row.cells);
        } else {
            std::vector<std::string> cells{fmt9(row.x)};
            cells.resize(header.size() - 1);
            cells.push_back("skipped: " + row.violation);
            csv.row(cells);
        }
    }

    // crossing report: intervals where the welfare ordering flips
    if (o.mode == "compare") {
        std::vector<std::string> crossings;
        const SweepRow* prev = nullptr;
        for (const SweepRow& row : rows) {
            if (!row.valid) continue;
            if (prev && (prev->sw_delta > 0) != (row.sw_delta > 0)) {
                std::ostringstream os;
                os << "# sw-crossing axis=" << o.axis << " interval=[" << fmt9(prev->x) << ","
                   << fmt9(row.x) << "] direction="
                   << (prev->sw_delta > 0 ? "independent->integrated"
                                          : "integrated->independent");
                crossings.push_back(os.str());
            }
            prev = &row;
        }
        if (crossings.empty()) crossings.push_back("# sw-crossing none");
        for (const auto& line : crossings) csv.os() << line << "\n";
        if (csv.to_file())
            for (const auto& line : crossings) std::cout << line << "\n";
    }

    if (!o.plot_out.empty() && o.mode == "compare") {
        std::ofstream plot(o.plot_out);
        if (!plot) fail_input("cannot open plot output file: " + o.plot_out);
        plot << "# block 0: axis_value sw_integrated\n";
        for (const SweepRow& row : rows)
            if (row.valid) plot << fmt9(row.x) << " " << row.cells[4] << "\n";
        plot << "\n\n# block 1: axis_value sw_independent\n";
        for (const SweepRow& row : rows)
            if (row.valid) plot << fmt9(row.x) << " " << row.cells[5] << "\n";
    }
    return 0;
}

// ---- simulate ---------------------------------------------------------------

int cmd_simulate(const CliOptions& o) {
    const ModelParams params = require_params(o);
    const Precision beta = require_beta(o);
    const EquilibriumSolution sol = solve_equilibrium(params, beta);
    const SimConfig cfg = sim_config(o);
    const SimReport sim =
        simulate_market(params, beta, {sol.p_star, sol.p_star},
                        [sol](double s) { return bid_schedule(sol, s); }, cfg);
    const OutcomeReport closed = outcome_report(params, beta, parse_setup(o.setup));

    std::printf("# market simulation: n=%llu seed=%llu workers=%s\n",
                static_cast<unsigned long long>(cfg.n),
                static_cast<unsigned long long>(cfg.seed),
                cfg.workers ? std::to_string(cfg.workers).c_str() : "auto");
    if (beta.value() == 0.0)
        std::printf("# note: with beta=0 every auction ties and A takes the prominent slot; "
                    "per-seller rows then split differently from the closed forms while "
                    "totals, surplus and welfare still agree\n");
    std::printf("%-18s %15s %15s %15s %8s\n", "metric", "estimate", "std_error",
                "closed_form", "z");
    auto line = [](const char* name, const Estimate& e, double closed_value) {
        const double z = e.std_error > 0 ? (e.mean - closed_value) / e.std_error : 0.0;
        std::printf("%-18s %15s %15s %15s %8.2f\n", name, fmt9(e.mean).c_str(),
                    fmt9(e.std_error).c_str(), fmt9(closed_value).c_str(), z);
    };
    line("demand_A", sim.demand_A, closed.demand_A);
    line("demand_B", sim.demand_B, closed.demand_B);
    line("seller_profit_A", sim.seller_profit_A, closed.seller_profit_A);
    line("seller_profit_B", sim.seller_profit_B, closed.seller_profit_B);
    line("commission", sim.commission, closed.platform_commission);
    line("ad_fees", sim.ad_fees, closed.ad_revenue);
    line("consumer_surplus", sim.consumer_surplus, closed.consumer_surplus);
    line("social_welfare", sim.social_welfare, closed.social_welfare);
    std::printf("# max per-consumer accounting gap: %s\n", fmt9(sim.max_identity_gap).c_str());
    return 0;
}

// ---- verify -----------------------------------------------------------------

struct VerifyState {
    int failures = 0;
    void check(bool ok, const std::string& name, const std::string& detail) {
        std::printf("%s  %s — %s\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
        if (!ok) ++failures;
    }
};

int cmd_verify(const CliOptions& o) {
    // defaults: the t-sweep base point of the welfare comparisons
    ModelParams params{1.0, 0.501, 0.7, 0.65, 0.25};
    if (o.opt_v->count() || o.opt_t->count() || o.opt_alpha->count() ||
        o.opt_delta->count() || o.opt_r->count())
        params = require_params(o);
    else
        params = validate_params(params);
    Precision beta(0.5);
    if (o.opt_beta->count()) {
        try {
            beta = Precision(o.beta);
        } catch (const DomainError& e) {
            fail_input(e.what());
        }
    }
    const SimConfig cfg = sim_config(o);
    VerifyState v;

    const EquilibriumSolution sol = solve_equilibrium(params, beta);
    const PricePair prices{sol.p_star, sol.p_star};

    // Per-signal demand cells against conditional Monte Carlo.
    {
        const Thresholds th = Thresholds::from_prices(params, prices);
        const double mids[4] = {th.z_B / 2, (th.z_B + th.z_AB) / 2, (th.z_AB + th.z_A) / 2,
                                (th.z_A + 1) / 2};
        double worst = 0.0;
        bool ok = true;
        for (double s : mids)
            for (Product prominent : {Product::A, Product::B}) {
                const DemandPair want = demand_given_signal(params, beta, prices, prominent, s);
                const auto [da, db] =
                    conditional_demand_mc(params, beta, prices, prominent, s, cfg);
                const double za = std::abs(da.mean - want.d_A) / (da.std_error + 1e-300);
                const double zb = std::abs(db.mean - want.d_B) / (db.std_error + 1e-300);
                worst = std::max({worst, za, zb});
                if (za > 3.0 || zb > 3.0) ok = false;
            }
        char detail[96];
        std::snprintf(detail, sizeof detail, "8 cells x 2 demands, worst |z| = %.2f", worst);
        v.check(ok, "demand-cells", detail);
    }

    // Best response on the deviation grid, optionally with an injected fault.
    {
        const double candidate = sol.p_star * (1.0 + o.perturb_price);
        const PriceGrid grid{0.8 * sol.p_star, 1.2 * sol.p_star, 1e-3};
        const BestResponseReport br = best_response_gap(params, beta, sol.p_star, grid);
        const double candidate_profit =
            deviation_profit(params, beta, candidate, sol.p_star, Product::A);
        const double gap = br.argmax_profit - candidate_profit;
        const bool ok = std::abs(br.argmax_price - candidate) <= grid.step + 1e-12 &&
                        gap <= 1e-6 && br.concave;
        char detail[128];
        std::snprintf(detail, sizeof detail, "candidate=%.9g argmax=%.9g gap=%.3e concave=%s",
                      candidate, br.argmax_price, gap, br.concave ? "yes" : "no");
        v.check(ok, "best-response", detail);
    }

    // Bid deviations around the truthful schedule.
    {
        const BidDeviationReport rep =
            bid_deviation_check(params, beta, {0.0, 0.5, 0.9, 1.1, 2.0}, cfg);
        for (const auto& row : rep.rows) {
            char name[32], detail[96];
            std::snprintf(name, sizeof name, "bid-deviation m=%.1f", row.multiplier);
            std::snprintf(detail, sizeof detail, "profit diff %+.3e (se %.1e)", row.diff_mean,
                          row.diff_se);
            v.check(!row.profitable, name, detail);
        }
    }

    // Simulated market against the closed forms.
    {
        const SimReport sim =
            simulate_market(params, beta, prices,
                            [sol](double s) { return bid_schedule(sol, s); }, cfg);
        const OutcomeReport closed = outcome_report(params, beta, SetupKind::Integrated);
        double worst = 0.0;
        auto fits = [&](const Estimate& e, double target) {
            const double score = std::abs(e.mean - target) / (e.std_error + 1e-300);
            worst = std::max(worst, score);
            return score <= 3.0;
        };
        bool ok;
        if (beta.value() > 0.0) {
            ok = fits(sim.demand_A, closed.demand_A) && fits(sim.demand_B, closed.demand_B) &&
                 fits(sim.seller_profit_A, closed.seller_profit_A) &&
                 fits(sim.seller_profit_B, closed.seller_profit_B);
        } else {
            // per-seller splits differ under the beta=0 tie rule; compare totals
            Estimate demand_total = sim.demand_A;
            demand_total.mean += sim.demand_B.mean;
            demand_total.std_error += sim.demand_B.std_error;
            Estimate seller_total = sim.seller_profit_A;
            seller_total.mean += sim.seller_profit_B.mean;
            seller_total.std_error += sim.seller_profit_B.std_error;
            ok = fits(demand_total, closed.demand_A + closed.demand_B) &&
                 fits(seller_total, 2.0 * closed.seller_profit_A);
        }
        ok = ok && fits(sim.commission, closed.platform_commission) &&
             fits(sim.ad_fees, closed.ad_revenue) &&
             fits(sim.consumer_surplus, closed.consumer_surplus) &&
             fits(sim.social_welfare, closed.social_welfare) &&
             sim.max_identity_gap <= 1e-9;
        char detail[96];
        std::snprintf(detail, sizeof detail, "worst |z| = %.2f, max accounting gap %.1e",
                      worst, sim.max_identity_gap);
        v.check(ok, "oracle-vs-closed-form", detail);
    }

    // Monotonicity of the headline quantities in precision.
    {
        double prev_p = -1e300, prev_bl = 1e300, prev_ad = 1e300, prev_sp = -1e300,
               prev_cs = 1e300;
        bool ok = true;
        for (int k = 0; k <= 10; ++k) {
            const Precision b(k / 10.0);
            const EquilibriumSolution s = solve_equilibrium(params, b);
            const double ad = ad_revenue(params, b);
            const double sp = seller_profit(params, b).total;
            const double cs = consumer_surplus(params, b);
            ok = ok && s.p_star > prev_p && s.b_L < prev_bl && ad < prev_ad && sp > prev_sp &&
                 cs < prev_cs;
            prev_p = s.p_star;
            prev_bl = s.b_L;
            prev_ad = ad;
            prev_sp = sp;
            prev_cs = cs;
        }
        v.check(ok, "monotonicity",
                "p* up, b_L down, ad revenue down, seller profit up, CS down over the beta grid");
    }

    std::printf("%s: %d failure(s)\n", v.failures ? "VERIFY FAILED" : "VERIFY OK", v.failures);
    return v.failures ? kExitVerifyFailure : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"equilibrium, precision-policy and welfare analysis of a two-seller "
                 "marketplace with sponsored positions"};
    app.fallthrough();
    app.require_subcommand(1);
    app.set_config("--config", "", "flat key=value file mirroring the long flags");

    CliOptions o;
    o.opt_v = app.add_option("--v", o.v, "ideal-product valuation");
    o.opt_t = app.add_option("--t", o.t, "misfit cost per unit distance");
    o.opt_alpha = app.add_option("--alpha", o.alpha, "CTR of the more-prominent position");
    o.opt_delta = app.add_option("--delta", o.delta, "CTR of the less-prominent position");
    o.opt_r = app.add_option("--r", o.r, "sales commission rate");
    o.opt_beta = app.add_option("--beta", o.beta, "targeting precision in [0,1]");
    app.add_option("--setup", o.setup, "integrated or independent")
        ->check(CLI::IsMember({"integrated", "independent"}));
    app.add_option("--axis", o.axis, "sweep axis: t, alpha, delta, r or beta");
    app.add_option("--lo", o.lo, "sweep lower bound");
    app.add_option("--hi", o.hi, "sweep upper bound");
    app.add_option("--step", o.step, "sweep step");
    app.add_option("--mode", o.mode, "sweep mode: outcomes, policy or compare")
        ->check(CLI::IsMember({"outcomes", "policy", "compare"}));
    app.add_option("--n", o.n, "simulated consumers");
    app.add_option("--seed", o.seed, "simulation seed");
    app.add_option("--workers", o.workers, "worker threads (0 = all)");
    app.add_option("--out", o.out, "write CSV to this path");
    app.add_option("--plot-out", o.plot_out, "write gnuplot-ready sweep data to this path");
    app.add_option("--format", o.format, "csv or tsv")->check(CLI::IsMember({"csv", "tsv"}));
    app.add_option("--perturb-price", o.perturb_price,
                   "verify self-test: offset the certified price by this fraction");

    auto* eq = app.add_subcommand("eq", "symmetric equilibrium prices, bids and cutoffs");
    auto* outcomes = app.add_subcommand("outcomes", "profits, surplus and welfare at a beta");
    auto* policy = app.add_subcommand("policy", "optimal precision and commission regimes");
    auto* compare = app.add_subcommand("compare", "integrated vs independent at optimal betas");
    auto* sweep = app.add_subcommand("sweep", "parameter sweep with CSV output");
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo run against the closed forms");
    auto* verify = app.add_subcommand("verify", "verification suite; nonzero exit on failure");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
        app.exit(e);
        return kExitInvalidInput;
    }

    try {
        if (eq->parsed()) return cmd_eq(o);
        if (outcomes->parsed()) return cmd_outcomes(o);
        if (policy->parsed()) return cmd_policy(o);
        if (compare->parsed()) return cmd_compare(o);
        if (sweep->parsed()) return cmd_sweep(o);
        if (simulate->parsed()) return cmd_simulate(o);
        if (verify->parsed()) return cmd_verify(o);
    } catch (const DomainError& e) {
        fail_input(e.what());
    } catch (const ThresholdOrderError& e) {
        fail_input(e.what());
    } catch (const GridError& e) {
        fail_input(e.what());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerifyFailure;
    }
    return 0;
}
