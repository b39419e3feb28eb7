#include "cptx/cli/run.hpp"

#include "cptx/binomial_solver.hpp"
#include "cptx/cli/estimate.hpp"
#include "cptx/continuous_solver.hpp"
#include "cptx/error.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <ostream>
#include <sstream>

namespace cptx::cli {
namespace {

constexpr int kInvalid = 2;
constexpr int kMismatch = 3;

std::string opt_text(const std::optional<double>& x) {
    return x ? format_number(*x) : std::string("undefined");
}

void describe_solution(RunSummary& s) {
    const auto& sol = s.solution;
    auto& d = s.diagnostics;
    d.emplace_back("case_id", sol.case_id);
    d.emplace_back("kind", to_string(sol.kind));
    if (sol.kind == SolutionKind::Interval) {
        d.emplace_back("theta_star", "[" + format_theta(sol.lo) + ", " + format_theta(sol.hi) + "]");
    } else {
        d.emplace_back("theta_star", format_theta(sol.representative()));
    }
    d.emplace_back("J_star", format_number(sol.prospect));
    d.emplace_back("boundary", sol.boundary ? "yes" : "no");
}

RunSummary solve_continuous(const RunConfig& cfg, const MarketModel& m,
                            const CptPreference& pref) {
    RunSummary s;
    ContinuousReport rep;
    const bool zero = cfg.mode == SolveMode::ZeroInitial;
    s.solution = zero ? solve_zero_initial(cfg.x0, m, pref, &rep)
                      : solve(build_portfolio(cfg), m, pref, &rep);
    const auto& in = rep.inputs;
    auto& d = s.diagnostics;
    d.emplace_back("mode", to_string(cfg.mode));
    d.emplace_back("pA1", format_number(in.pA1));
    if (zero) {
        d.emplace_back("pA3", format_number(in.pA3));
    } else {
        d.emplace_back("pA2", format_number(in.pA2));
    }
    const auto& shorts = zero ? in.zero_short_side : in.short_side;
    d.emplace_back("g1", format_number(in.long_side.gain));
    d.emplace_back("l1", format_number(in.long_side.loss));
    d.emplace_back(zero ? "g3" : "g2", format_number(shorts.gain));
    d.emplace_back(zero ? "l3" : "l2", format_number(shorts.loss));
    d.emplace_back("K1", opt_text(rep.ratios.K1));
    d.emplace_back(zero ? "K3" : "K2", opt_text(rep.ratios.K2));
    d.emplace_back("KM", opt_text(rep.ratios.KM));
    if (rep.candidates) {
        d.emplace_back("theta1", format_number(rep.candidates->theta1));
        d.emplace_back("theta2", format_number(rep.candidates->theta2));
    }
    s.row.K1 = rep.ratios.K1;
    s.row.K2 = rep.ratios.K2;
    if (rep.candidates) {
        s.row.candidate_long = rep.candidates->theta1;
        s.row.candidate_short = rep.candidates->theta2;
    }
    return s;
}

RunSummary solve_two_state(const RunConfig& cfg, const MarketModel& m,
                           const CptPreference& pref) {
    RunSummary s;
    BinomialReport rep;
    s.solution = solve_binomial(cfg.x0, m, pref, &rep);
    const auto& pp = rep.inputs.pp;
    auto& d = s.diagnostics;
    d.emplace_back("mode", to_string(cfg.mode));
    d.emplace_back("pbu", format_number(pp.pbu));
    d.emplace_back("pbd", format_number(pp.pbd));
    d.emplace_back("psu", format_number(pp.psu));
    d.emplace_back("psd", format_number(pp.psd));
    d.emplace_back("zeta_bar1", format_number(rep.thresholds.bar1));
    d.emplace_back("zeta_bar2", opt_text(rep.thresholds.bar2));
    d.emplace_back("zeta_under1", format_number(rep.thresholds.under1));
    d.emplace_back("zeta_under2", opt_text(rep.thresholds.under2));
    d.emplace_back("theta3", opt_text(rep.candidates.theta3));
    d.emplace_back("theta4", opt_text(rep.candidates.theta4));
    d.emplace_back("lambda_bar", format_number(rep.lambda_bar));
    d.emplace_back("no_trade", m.lambda >= rep.lambda_bar ? "yes (lambda >= lambda_bar)" : "no");
    d.emplace_back("buy_case", rep.buy.case_id);
    d.emplace_back("sell_case", rep.sell.case_id);
    s.row.candidate_long = rep.candidates.theta3;
    s.row.candidate_short = rep.candidates.theta4;
    return s;
}

std::string axis_of(const RunConfig& cfg) { return cfg.sweep ? cfg.sweep->name : "none"; }

void write_rows(const RunConfig& cfg, const std::string& axis, const std::vector<SweepRow>& rows,
                std::ostream& out) {
    const bool binomial = cfg.mode == SolveMode::Binomial;
    if (cfg.out.empty()) {
        write_sweep_csv(out, axis, binomial, rows);
        return;
    }
    std::ofstream f(cfg.out);
    require(static_cast<bool>(f), "output: cannot write " + cfg.out);
    write_sweep_csv(f, axis, binomial, rows);
}

}  // namespace

RunSummary solve_once(const RunConfig& cfg) {
    validate(cfg);
    const auto m = build_market(cfg);
    const auto pref = build_preference(cfg);
    RunSummary s = cfg.mode == SolveMode::Binomial ? solve_two_state(cfg, m, pref)
                                                   : solve_continuous(cfg, m, pref);
    describe_solution(s);
    s.row.theta_star = s.solution.representative();
    s.row.case_id = s.solution.case_id;
    s.row.J_star = s.solution.prospect;
    s.row.boundary = s.solution.boundary;
    if (cfg.oracle) {
        const auto p = build_portfolio(cfg);
        const auto grid = build_grid(cfg, default_grid(s.solution, p, m, pref));
        s.oracle = verify(s.solution, p, m, pref, grid, default_tolerance(m));
        auto& d = s.diagnostics;
        d.emplace_back("oracle", s.oracle->match ? "match" : "mismatch");
        d.emplace_back("oracle_argmax_theta", format_number(s.oracle->argmax_theta));
        d.emplace_back("oracle_max_J", format_number(s.oracle->max_J));
        d.emplace_back("oracle_final_step", format_number(s.oracle->final_step));
        d.emplace_back("oracle_details", s.oracle->details);
    }
    return s;
}

std::vector<SweepRow> sweep(const RunConfig& cfg, const SweepAxis& axis) {
    std::vector<SweepRow> rows;
    for (double value : axis.values()) {
        RunConfig point = cfg;
        point.sweep.reset();
        point.oracle = false;
        SweepRow row;
        try {
            set_parameter(point, axis.name, value);
            row = solve_once(point).row;
        } catch (const std::exception& e) {
            row = SweepRow{};
            row.error = e.what();
        }
        row.value = value;
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string format_summary(const RunSummary& s) {
    std::ostringstream o;
    for (const auto& [key, value] : s.diagnostics) o << key << ": " << value << "\n";
    return o.str();
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Prospect-theory optimal investment under proportional transaction costs"};
    app.require_subcommand(1);

    std::string config_path;
    std::string sweep_text;
    std::string out_path;
    std::string format;
    bool oracle = false;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "INI configuration file")->required();
        sub->add_option("--out", out_path, "Write results to this path");
        sub->add_option("--format", format, "csv or summary")
            ->check(CLI::IsMember({"csv", "summary"}));
    };

    auto* solve_cmd = app.add_subcommand("solve", "Solve one configuration");
    add_common(solve_cmd);
    solve_cmd->add_flag("--oracle", oracle, "Cross-check with the grid-search oracle");

    auto* sweep_cmd = app.add_subcommand("sweep", "Solve along one parameter grid");
    add_common(sweep_cmd);
    sweep_cmd->add_option("--sweep", sweep_text, "axis=start:stop:count");

    auto* verify_cmd = app.add_subcommand("verify", "Solve and check against the oracle");
    add_common(verify_cmd);

    auto* arb_cmd = app.add_subcommand("check-arb", "Check the no-arbitrage condition");
    arb_cmd->add_option("--config", config_path, "INI configuration file")->required();

    std::string prices_path;
    bool weekly = false;
    double annual_rate = 0.0;
    double periods = 52.0;
    auto* est_cmd = app.add_subcommand("estimate", "Estimate lognormal parameters from prices");
    est_cmd->add_option("--prices", prices_path, "CSV with header date,close")->required();
    est_cmd->add_flag("--weekly", weekly, "Keep the last close of each ISO week");
    auto* rate_opt = est_cmd->add_option("--annual-rate", annual_rate,
                                         "Annual riskless rate to convert per period");
    est_cmd->add_option("--periods", periods, "Periods per year for the rate conversion");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : kInvalid;
    }

    try {
        if (*est_cmd) {
            std::ifstream f(prices_path);
            require(static_cast<bool>(f), "prices: cannot open " + prices_path);
            auto prices = read_prices(f);
            if (weekly) prices = weekly_last(prices);
            const auto e = estimate_lognormal(prices);
            out << "mu: " << format_number(e.mu) << "\nsigma: " << format_number(e.sigma)
                << "\nn_obs: " << e.n_obs << "\n";
            if (*rate_opt) {
                out << "r: " << format_number(annualized_rate_to_period(annual_rate, periods))
                    << "\n";
            }
            return 0;
        }

        RunConfig cfg = load_config(config_path);
        if (!out_path.empty()) cfg.out = out_path;
        if (!format.empty()) cfg.format = format;

        if (*arb_cmd) {
            const auto m = build_market(cfg);
            const auto arb = check_no_arbitrage(m);
            out << "no_arbitrage: " << (arb.ok ? "pass" : "fail") << "\n";
            if (!arb.ok) out << "violated: " << arb.violation << "\n";
            return arb.ok ? 0 : kInvalid;
        }

        if (*sweep_cmd) {
            if (!sweep_text.empty()) cfg.sweep = parse_sweep_axis(sweep_text);
            require(cfg.sweep.has_value(), "sweep: no axis given (use --sweep or [sweep] axis)");
            RunConfig base = cfg;
            base.sweep.reset();
            const auto errors = validation_errors(base);
            for (const auto& e : errors) {
                if (e.rfind("output:", 0) == 0) throw InvalidArgument(e);
            }
            const auto rows = sweep(cfg, *cfg.sweep);
            write_rows(cfg, cfg.sweep->name, rows, out);
            return 0;
        }

        if (*verify_cmd) cfg.oracle = true;
        if (*solve_cmd && oracle) cfg.oracle = true;
        const auto s = solve_once(cfg);
        if (cfg.format == "csv") {
            write_rows(cfg, axis_of(cfg), {s.row}, out);
        } else {
            const std::string text = format_summary(s);
            if (cfg.out.empty()) {
                out << text;
            } else {
                std::ofstream f(cfg.out);
                require(static_cast<bool>(f), "output: cannot write " + cfg.out);
                f << text;
                out << text;
            }
        }
        if (s.oracle && !s.oracle->match) {
            err << "oracle mismatch: " << s.oracle->details << "\n";
            return kMismatch;
        }
        return 0;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << "\n";
        return kInvalid;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace cptx::cli
