#pragma once

#include "cptx/market.hpp"
#include "cptx/preference.hpp"
#include "cptx/solution.hpp"

#include <optional>

namespace cptx {

/// Replication weights on the buy and sell branches. They coincide with the
/// risk-neutral measure when lambda = 0.
struct PseudoProbabilities {
    double pbu, pbd;
    double psu, psd;
};

/// Requires a binomial return law.
PseudoProbabilities pseudo_probabilities(const MarketModel& m);

/// Two-state payoff (value in the up state, value in the down state).
struct Payoff2 {
    double xi_u;
    double xi_d;
};

struct Replication {
    double theta;  ///< Money moved into the risky asset.
    double x;      ///< Initial riskless wealth needed.
};

Replication replicate(const MarketModel& m, const Payoff2& xi);

/// Cost level above which neither buying nor selling is ever optimal.
double lambda_bar(const MarketModel& m);

struct BinomialInputs {
    double u = 0.0, d = 0.0, p = 0.0;  ///< p is the down-state probability.
    double r = 0.0, lambda = 0.0;
    PseudoProbabilities pp{};
    double eta = 1.0;
    double zeta = 2.0;
    double reference = 0.0;  ///< (1+r) x0
    double w_gain_up = 0.0;     ///< w+(1-p)
    double w_loss_down = 0.0;   ///< w-(p)
    double w_gain_down = 0.0;   ///< w+(p)
    double w_loss_up = 0.0;     ///< w-(1-p)
};

BinomialInputs binomial_inputs(double x0, const MarketModel& m, const CptPreference& pref);

struct ZetaThresholds {
    double bar1;
    std::optional<double> bar2;  ///< Needs pbu > 0.
    double under1;
    std::optional<double> under2;  ///< Needs psd > 0.
};

ZetaThresholds zeta_thresholds(const BinomialInputs& in);

/// theta3 (buy) and theta4 (sell); each is empty outside its regime.
struct BinomialCandidates {
    std::optional<double> theta3;
    std::optional<double> theta4;
};

BinomialCandidates candidate_thetas_binomial(const BinomialInputs& in);

/// J(theta) in closed form for the two-state market.
double binomial_prospect(const BinomialInputs& in, double theta);

/// Limit prospects as theta -> +inf and theta -> -inf.
double limit_prospect_up(const BinomialInputs& in);
double limit_prospect_down(const BinomialInputs& in);

Solution solve_buy(const BinomialInputs& in);
Solution solve_sell(const BinomialInputs& in);
Solution solve_binomial_case(const BinomialInputs& in);

struct BinomialReport {
    BinomialInputs inputs;
    ZetaThresholds thresholds{};
    BinomialCandidates candidates;
    double lambda_bar = 0.0;
    Solution buy;
    Solution sell;
};

/// Optimal strategy for y0 = 0, binomial returns and exponential utility
/// with equal risk aversion on both sides.
Solution solve_binomial(double x0, const MarketModel& m, const CptPreference& pref,
                        BinomialReport* report = nullptr);

}  // namespace cptx
