// Acceptance harness: one PASS/FAIL line per criterion.

#include "cptx/binomial_solver.hpp"
#include "cptx/continuous_solver.hpp"
#include "cptx/market.hpp"
#include "cptx/oracle.hpp"
#include "cptx/preference.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace cptx;

namespace {

// Pinned tolerances and budgets.
constexpr double kBullK1 = 2.7144;
constexpr double kBullK2 = 0.3957;
constexpr double kBullTol = 0.002;
constexpr double kBullSeconds = 5.0;
constexpr double kFtseSeconds = 30.0;
constexpr double kMonotoneSlack = 1e-9;
constexpr double kSwitchLo = 5e-4;
constexpr double kSwitchHi = 10e-4;
constexpr double kBinomialTolJ = 1e-6;
constexpr double kBinomialSeconds = 60.0;
constexpr double kContinuousTolJ = 1e-5;
constexpr double kContinuousSeconds = 300.0;
constexpr int kFineRounds = 4;
constexpr double kReplicationTol = 1e-12;
constexpr double kFactorizationTol = 1e-7;
constexpr double kSymmetryTol = 1e-7;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            if (!pass) detail << "; ";
            detail << what;
            pass = false;
        }
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

CptPreference tk_power(double alpha, double beta, double k, double gamma = 0.61,
                       double delta = 0.69) {
    return {UtilityPair::power(alpha, beta, k), WeightingPair::tversky_kahneman(gamma, delta)};
}

MarketModel bull_market(double lambda) {
    return MarketModel::make(0.05, lambda, ReturnLaw::gbm(0.15, 0.20, 1.0), 1.0);
}

MarketModel ftse_market(double lambda) {
    return MarketModel::make(1.3380e-5, lambda, ReturnLaw::lognormal(3.2932e-4, 7.4383e-3));
}

std::vector<double> open_grid(double lo, double hi, int n, bool include_hi) {
    std::vector<double> out;
    const int denom = include_hi ? n : n + 1;
    for (int i = 1; i <= n; ++i) out.push_back(lo + (hi - lo) * i / denom);
    return out;
}

const Portfolio kHolding{1.0, 1.0};

void criterion_1(Outcome& o) {
    const auto start = Clock::now();
    ContinuousReport rep;
    const auto s = solve(kHolding, bull_market(0.01), tk_power(0.88, 0.88, 2.25), &rep);
    const double elapsed = seconds_since(start);
    const double k1 = rep.ratios.K1.value_or(NAN);
    const double k2 = rep.ratios.K2.value_or(NAN);
    o.detail << "K1=" << fmt(k1) << " K2=" << fmt(k2) << " " << to_string(s.kind) << " "
             << s.case_id << " ";
    o.require(std::abs(k1 - kBullK1) <= kBullTol, "K1 outside 2.7144 +- 0.002");
    o.require(std::abs(k2 - kBullK2) <= kBullTol, "K2 outside 0.3957 +- 0.002");
    o.require(s.kind == SolutionKind::PlusInfinity, "not PlusInfinity");
    o.require(elapsed < kBullSeconds, "runtime " + fmt(elapsed) + " s");
}

struct FtseRow {
    double lambda, k1, k2;
    Solution s;
};

std::vector<FtseRow> ftse_sweep() {
    std::vector<FtseRow> rows;
    const auto pref = tk_power(0.88, 0.88, 2.25);
    for (double lambda : open_grid(0.0, 0.05, 50, true)) {
        ContinuousReport rep;
        const auto s = solve(kHolding, ftse_market(lambda), pref, &rep);
        rows.push_back({lambda, rep.ratios.K1.value_or(NAN), rep.ratios.K2.value_or(NAN), s});
    }
    return rows;
}

void criterion_2(Outcome& o, const std::vector<FtseRow>& rows, double elapsed) {
    int k1_low = 0, k1_high = 0, k2_bad = 0, wrong_case = 0, traded = 0;
    double k1_min = INFINITY, k1_max = -INFINITY, k2_max = -INFINITY;
    for (const auto& r : rows) {
        k1_min = std::min(k1_min, r.k1);
        k1_max = std::max(k1_max, r.k1);
        k2_max = std::max(k2_max, r.k2);
        if (!(r.k1 > 1.0)) ++k1_low;
        if (!(r.k1 < 2.25)) ++k1_high;
        if (!(r.k2 < 1.0)) ++k2_bad;
        if (r.s.case_id != "T3.1-1d") ++wrong_case;
        if (!(r.s.kind == SolutionKind::FinitePoint && r.s.theta == 0.0)) ++traded;
    }
    o.detail << "K1 in [" << fmt(k1_min) << ", " << fmt(k1_max) << "] max K2=" << fmt(k2_max)
             << " ";
    o.require(k1_low == 0, std::to_string(k1_low) + "/50 points with K1 <= 1");
    o.require(k1_high == 0, std::to_string(k1_high) + "/50 points with K1 >= 2.25");
    o.require(k2_bad == 0, std::to_string(k2_bad) + "/50 points with K2 >= 1");
    o.require(wrong_case == 0, std::to_string(wrong_case) + "/50 points not T3.1-1d");
    o.require(traded == 0, std::to_string(traded) + "/50 points with theta* != 0");
    o.require(elapsed < kFtseSeconds, "runtime " + fmt(elapsed) + " s");
}

void criterion_3(Outcome& o, const std::vector<FtseRow>& rows) {
    int k1_up = 0, k2_down = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].k1 > rows[i - 1].k1 + kMonotoneSlack) ++k1_up;
        if (rows[i].k2 < rows[i - 1].k2 - kMonotoneSlack) ++k2_down;
    }
    o.detail << "K2 range " << fmt(rows.back().k2 - rows.front().k2) << " ";
    o.require(k1_up == 0, std::to_string(k1_up) + " increases of K1");
    o.require(k2_down == 0, std::to_string(k2_down) + " decreases of K2");
}

// 1 for the buy candidate, 2 for the sell candidate, 0 otherwise.
int branch(double lambda, double alpha, double beta) {
    ContinuousReport rep;
    const auto s = solve(kHolding, ftse_market(lambda), tk_power(alpha, beta, 2.25), &rep);
    if (s.kind != SolutionKind::FinitePoint || !rep.candidates) return 0;
    if (s.theta > 0.0 && s.theta == rep.candidates->theta1) return 1;
    if (s.theta < 0.0 && s.theta == rep.candidates->theta2) return 2;
    return 0;
}

void criterion_4(Outcome& o) {
    const auto grid = open_grid(0.0, 0.0015, 300, true);
    std::vector<int> branches;
    for (double lambda : grid) branches.push_back(branch(lambda, 0.8, 0.88));
    int switches = 0, others = 0;
    std::size_t first_sell = grid.size();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (branches[i] == 0) ++others;
        if (i > 0 && branches[i] != branches[i - 1]) ++switches;
        if (branches[i] == 2 && first_sell == grid.size()) first_sell = i;
    }
    o.require(others == 0, std::to_string(others) + " points on neither branch");
    o.require(branches.front() == 1, "does not start on the buy branch");
    o.require(branches.back() == 2, "does not end on the sell branch");
    o.require(switches == 1, std::to_string(switches) + " switches");
    if (first_sell == 0 || first_sell == grid.size()) return;
    double lo = grid[first_sell - 1], hi = grid[first_sell];
    for (int it = 0; it < 40; ++it) {
        const double mid = 0.5 * (lo + hi);
        (branch(mid, 0.8, 0.88) == 1 ? lo : hi) = mid;
    }
    o.detail << "switch at " << fmt(1e4 * hi) << " bps ";
    o.require(hi >= kSwitchLo && hi <= kSwitchHi, "switch outside [5, 10] bps");
}

void criterion_5(Outcome& o) {
    const auto m = ftse_market(0.01);
    auto run = [&](const std::vector<double>& grid, bool vary_beta, int expect_theta1,
                   const char* axis) {
        double prev1 = NAN, prev2 = NAN;
        int bad1 = 0, bad2 = 0, not_sell = 0;
        for (double v : grid) {
            ContinuousReport rep;
            const double alpha = vary_beta ? 0.88 : v;
            const double beta = vary_beta ? v : 0.88;
            const auto s = solve(kHolding, m, tk_power(alpha, beta, 2.25), &rep);
            if (!rep.candidates) {
                ++not_sell;
                continue;
            }
            const double t1 = rep.candidates->theta1, t2 = rep.candidates->theta2;
            if (!(s.kind == SolutionKind::FinitePoint && s.theta == t2)) ++not_sell;
            if (!std::isnan(prev1)) {
                const double slack1 = kMonotoneSlack * std::max(std::abs(t1), std::abs(prev1));
                const double slack2 = kMonotoneSlack * std::max(std::abs(t2), std::abs(prev2));
                if (expect_theta1 * (t1 - prev1) < -slack1) ++bad1;
                if (-expect_theta1 * (t2 - prev2) < -slack2) ++bad2;
            }
            prev1 = t1;
            prev2 = t2;
        }
        o.require(bad1 == 0, std::string(axis) + ": theta1 not monotone");
        o.require(bad2 == 0, std::string(axis) + ": theta2 not monotone");
        o.require(not_sell == 0,
                  std::string(axis) + ": " + std::to_string(not_sell) + " points off theta2");
    };
    // Over beta theta1 rises and theta2 falls; over alpha the reverse.
    run(open_grid(0.88, 1.0, 25, false), true, +1, "beta");
    run(open_grid(0.6, 0.88, 25, false), false, -1, "alpha");
}

// A rejected ray whose direct J never beats the stated limit on a geometric sweep
// out to 1e5/eta, and ends within 1e-9 of it there.
bool ray_confirmed(const Solution& s, const Portfolio& p, const MarketModel& m,
                   const CptPreference& pref, double eta) {
    const double sign = s.kind == SolutionKind::PlusInfinity ? 1.0 : -1.0;
    double j = 0.0;
    for (double t = 1e-3; t <= 1e5 / eta; t *= 1.05) {
        j = evaluate_J(p, m, pref, sign * t);
        if (j > s.prospect + 1e-9) return false;
    }
    return std::abs(evaluate_J(p, m, pref, sign * 1e5 / eta) - s.prospect) <= 1e-9;
}

void criterion_6(Outcome& o) {
    const auto start = Clock::now();
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int checked = 0, finite = 0, rays = 0, point_failures = 0;
    int dips = 0, slow = 0, other = 0, confirmed = 0;
    std::string first_failure;
    while (checked < 1000) {
        const double r = 0.03 * unit(rng);
        const double u = 1.0 + r + 0.005 + 0.4 * unit(rng);
        const double d = (1.0 + r) * (0.6 + 0.395 * unit(rng));
        const auto m = MarketModel::make(r, 0.1 * unit(rng),
                                         ReturnLaw::binomial(u, d, 0.05 + 0.9 * unit(rng)));
        const double eta = 0.2 + 3.0 * unit(rng);
        const CptPreference pref{UtilityPair::exponential(eta, eta, 1.01 + 3.0 * unit(rng)),
                                 WeightingPair::tversky_kahneman(0.28 + 0.72 * unit(rng),
                                                                 0.28 + 0.72 * unit(rng))};
        const double x0 = 2.0 * unit(rng);
        if (!check_no_arbitrage(m).ok) continue;
        ++checked;
        const Portfolio p{x0, 0.0};
        const auto s = solve_binomial(x0, m, pref);
        const auto rep = verify(s, p, m, pref, default_grid(s, p, m, pref), kBinomialTolJ);
        if (s.is_finite()) {
            ++finite;
            if (!rep.match) {
                ++point_failures;
                if (first_failure.empty()) first_failure = s.case_id + ": " + rep.details;
            }
            continue;
        }
        ++rays;
        if (rep.match) continue;
        if (rep.details.find("not increasing") != std::string::npos) {
            ++dips;
        } else if (rep.details.find("misses the limit") != std::string::npos) {
            ++slow;
        } else {
            ++other;
        }
        confirmed += ray_confirmed(s, p, m, pref, eta);
    }
    const double elapsed = seconds_since(start);
    const int ray_failures = dips + slow + other;
    o.detail << checked << " instances (" << finite << " finite, " << rays << " unbounded) "
             << fmt(elapsed) << " s ";
    o.require(point_failures == 0,
              std::to_string(point_failures) + " finite mismatches, first " + first_failure);
    o.require(ray_failures == 0,
              std::to_string(ray_failures) + " rays rejected by the ladder (" +
                  std::to_string(dips) + " dip before rising, " + std::to_string(slow) +
                  " reach the limit after 10^3/eta, " + std::to_string(other) + " other; " +
                  std::to_string(confirmed) + " confirmed unbounded by a sweep to 10^5/eta)");
    o.require(elapsed < kBinomialSeconds, "runtime over 60 s");
}

void criterion_7(Outcome& o) {
    const auto start = Clock::now();
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int failed = 0, coarse = 0, interior = 0;
    std::string first_failure;
    for (int i = 0; i < 200; ++i) {
        const auto m = MarketModel::make(0.05 * unit(rng), 0.03 * unit(rng),
                                         ReturnLaw::lognormal(-0.05 + 0.2 * unit(rng),
                                                              0.05 + 0.35 * unit(rng)));
        const double alpha = 0.5 + 0.4 * unit(rng);
        const double beta = std::min(0.99, alpha + 0.01 + 0.1 * unit(rng));
        const auto pref = tk_power(alpha, beta, 1.0 + 2.0 * unit(rng), 0.5 + 0.4 * unit(rng),
                                   0.5 + 0.4 * unit(rng));
        const Portfolio p{2.0 * unit(rng), 0.5 + 1.5 * unit(rng)};
        const auto s = solve(p, m, pref);
        if (s.kind == SolutionKind::FinitePoint && s.theta != 0.0 && s.theta != -p.y0) ++interior;
        auto grid = default_grid(s, p, m, pref);
        auto rep = verify(s, p, m, pref, grid, kContinuousTolJ);
        if (!rep.match) {
            // Optima inside one cell of the default grid need a finer final step.
            ++coarse;
            grid.refinement_rounds = kFineRounds;
            rep = verify(s, p, m, pref, grid, kContinuousTolJ);
        }
        if (!rep.match || !s.is_finite()) {
            ++failed;
            if (first_failure.empty()) first_failure = s.case_id + ": " + rep.details;
        }
    }
    const double elapsed = seconds_since(start);
    o.detail << "200 instances (" << interior << " interior, " << coarse
             << " needed 4 refinement rounds) " << fmt(elapsed) << " s ";
    o.require(failed == 0, std::to_string(failed) + " mismatches, first " + first_failure);
    o.require(elapsed < kContinuousSeconds, "runtime over 5 min");
}

void criterion_8(Outcome& o) {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const double r = 0.05 * unit(rng);
        const double u = 1.0 + r + 0.01 + 0.5 * unit(rng);
        const double d = (1.0 + r) * (0.5 + 0.49 * unit(rng));
        const auto m = MarketModel::make(r, 0.1 * unit(rng), ReturnLaw::binomial(u, d, 0.5));
        const Payoff2 xi{10.0 * (unit(rng) - 0.5), 10.0 * (unit(rng) - 0.5)};
        const auto rep = replicate(m, xi);
        worst = std::max(worst, std::abs(terminal_wealth({rep.x, 0.0}, m, rep.theta, u) - xi.xi_u));
        worst = std::max(worst, std::abs(terminal_wealth({rep.x, 0.0}, m, rep.theta, d) - xi.xi_d));
    }
    o.detail << "max error " << fmt(worst) << " ";
    o.require(worst <= kReplicationTol, "error above 1e-12");
}

void criterion_9(Outcome& o) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int markets = 0, traded = 0, no_flip = 0;
    while (markets < 500) {
        const double r = 0.03 * unit(rng);
        const double u = 1.0 + r + 0.005 + 0.4 * unit(rng);
        const double d = (1.0 + r) * (0.6 + 0.395 * unit(rng));
        const double p = 0.05 + 0.9 * unit(rng);
        const auto law = ReturnLaw::binomial(u, d, p);
        const double bar = lambda_bar(MarketModel::make(r, 0.0, law));
        if (!(bar < 0.99)) continue;
        ++markets;
        const double eta = 0.2 + 3.0 * unit(rng);
        const CptPreference pref{UtilityPair::exponential(eta, eta, 1.01 + 3.0 * unit(rng)),
                                 WeightingPair::tversky_kahneman(0.28 + 0.72 * unit(rng),
                                                                 0.28 + 0.72 * unit(rng))};
        const auto below = pseudo_probabilities(MarketModel::make(r, bar * (1.0 - 1e-6), law));
        if (!(below.pbd > 0.0 || below.psu > 0.0)) ++no_flip;
        for (double lambda : {bar, bar * (1.0 + 1e-6), bar + (0.99 - bar) * unit(rng)}) {
            const auto m = MarketModel::make(r, lambda, law);
            const auto pp = pseudo_probabilities(m);
            if (pp.pbd > 1e-12 || pp.psu > 1e-12) ++no_flip;
            const auto s = solve_binomial(2.0 * unit(rng), m, pref);
            if (!(s.kind == SolutionKind::FinitePoint && s.theta == 0.0)) ++traded;
        }
    }
    o.detail << "500 markets ";
    o.require(traded == 0, std::to_string(traded) + " trades at or above the threshold");
    o.require(no_flip == 0, std::to_string(no_flip) + " sign checks failed");
}

void criterion_10(Outcome& o) {
    std::mt19937_64 rng(10);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const auto m = MarketModel::make(0.05 * unit(rng), 0.03 * unit(rng),
                                         ReturnLaw::lognormal(-0.05 + 0.2 * unit(rng),
                                                              0.05 + 0.35 * unit(rng)));
        const double alpha = 0.5 + 0.4 * unit(rng);
        const auto pref = tk_power(alpha, alpha + (0.99 - alpha) * unit(rng),
                                   1.0 + 2.0 * unit(rng));
        const Portfolio p{2.0 * unit(rng), 0.5 + 1.5 * unit(rng)};
        const double theta = i % 2 ? p.y0 * (0.01 + 0.99 * unit(rng)) * -1.0
                                   : 0.01 + 10.0 * unit(rng);
        const auto in = power_case_inputs(p, m, pref);
        const double factored =
            theta > 0.0 ? ray_prospect(in.long_side, in.alpha, in.beta, in.k, theta)
                        : ray_prospect(in.short_side, in.alpha, in.beta, in.k, -theta);
        const double direct = evaluate_J(p, m, pref, theta, ratio_quadrature());
        worst = std::max(worst, std::abs(direct - factored) / std::abs(factored));
    }
    o.detail << "max relative gap " << fmt(worst) << " ";
    o.require(worst <= kFactorizationTol, "gap above 1e-7");
}

void criterion_11(Outcome& o) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const MarketModel laws[] = {
        MarketModel::make(0.02, 0.0, ReturnLaw::lognormal(0.05, 0.2)),
        MarketModel::make(0.0, 0.0, ReturnLaw::student_t(5.0, 0.01, 0.05)),
        MarketModel::make(0.01, 0.0, ReturnLaw::binomial(1.2, 0.9, 0.4)),
    };
    double law_gap = 0.0;
    for (const auto& m : laws) {
        const auto z1 = excess_transform(m, Excess::Z1);
        const auto z2 = excess_transform(m, Excess::Z2);
        for (int i = 0; i <= 200; ++i) {
            const double x = -0.5 + i * 0.005;
            law_gap = std::max(law_gap, std::abs(z1.cdf(x) - z2.cdf(x)));
        }
    }
    double pp_gap = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double r = 0.03 * unit(rng);
        const auto m = MarketModel::make(
            r, 0.0,
            ReturnLaw::binomial(1.0 + r + 0.005 + 0.4 * unit(rng),
                                (1.0 + r) * (0.6 + 0.395 * unit(rng)), 0.05 + 0.9 * unit(rng)));
        const auto pp = pseudo_probabilities(m);
        pp_gap = std::max({pp_gap, std::abs(pp.pbu - pp.psu), std::abs(pp.pbd - pp.psd)});
    }
    // Z2 = R - r is symmetric about 0 when R is centred on r.
    const MarketModel symmetric[] = {
        MarketModel::make(0.02, 0.0, ReturnLaw::normal(0.02, 0.15)),
        MarketModel::make(0.01, 0.0, ReturnLaw::student_t(5.0, 0.01, 0.1)),
        MarketModel::make(0.03, 0.0, ReturnLaw::uniform(0.83, 1.23)),
    };
    double k_gap = 0.0;
    for (const auto& m : symmetric) {
        const auto r = k_ratios(power_case_inputs(kHolding, m, tk_power(0.88, 0.88, 2.25)));
        k_gap = std::max(k_gap, std::abs(*r.K1 - *r.K2));
    }
    o.detail << "cdf gap " << fmt(law_gap) << " pseudo-probability gap " << fmt(pp_gap)
             << " |K1-K2| " << fmt(k_gap) << " ";
    o.require(law_gap <= 1e-12, "Z1 and Z2 differ in law");
    o.require(pp_gap <= 1e-12, "buy and sell pseudo-probabilities differ");
    o.require(k_gap <= kSymmetryTol, "K1 != K2 for symmetric excess");
}

}  // namespace

int main() {
    std::vector<FtseRow> ftse;
    double ftse_seconds = 0.0;
    const std::vector<std::function<void(Outcome&)>> criteria = {
        criterion_1,
        [&](Outcome& o) {
            const auto start = Clock::now();
            ftse = ftse_sweep();
            ftse_seconds = seconds_since(start);
            criterion_2(o, ftse, ftse_seconds);
        },
        [&](Outcome& o) { criterion_3(o, ftse); },
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
        criterion_11,
    };
    int passed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        const auto start = Clock::now();
        try {
            criteria[i](o);
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        passed += o.pass;
        std::printf("criterion %zu: %s  %s [%.2f s]\n", i + 1, o.pass ? "PASS" : "FAIL",
                    o.detail.str().c_str(), seconds_since(start));
        std::fflush(stdout);
    }
    std::printf("acceptance: %d/%zu passed\n", passed, criteria.size());
    return passed == static_cast<int>(criteria.size()) ? 0 : 1;
}
