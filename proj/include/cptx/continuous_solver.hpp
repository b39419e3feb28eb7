#pragma once

#include "cptx/market.hpp"
#include "cptx/preference.hpp"
#include "cptx/quadrature.hpp"
#include "cptx/signed_distribution.hpp"
#include "cptx/solution.hpp"

#include <optional>

namespace cptx {

/// Gains and losses of one unit of an excess return under power utility.
/// Losses exclude the loss-aversion factor k.
struct GainLoss {
    double gain = 0.0;
    double loss = 0.0;
    double gain_error = 0.0;
    double loss_error = 0.0;
};

/// Tolerances used for the gain/loss integrals behind the ratios.
quadrature::Options ratio_quadrature();

/// (g1, l1): gains on the positive tail of z, losses on its negative tail.
GainLoss long_integrals(const CptPreference& pref, const SignedDistribution& z,
                        const quadrature::Options& opt = ratio_quadrature());

/// (g2, l2): gains on the negative tail of z, losses on its positive tail.
GainLoss short_integrals(const CptPreference& pref, const SignedDistribution& z,
                         const quadrature::Options& opt = ratio_quadrature());

/// Everything the case dispatch needs. Probabilities come with their
/// complements so that "equals one" tests are exact.
struct PowerCaseInputs {
    double pA1 = 0.0, qA1 = 1.0;  ///< P(Z1 < 0), P(Z1 >= 0)
    double pA2 = 0.0, qA2 = 1.0;  ///< P(Z2 > 0), P(Z2 <= 0)
    double pA3 = 0.0, qA3 = 1.0;  ///< P(Z3 > 0), P(Z3 <= 0)
    GainLoss long_side;           ///< g1, l1 from Z1
    GainLoss short_side;          ///< g2, l2 from Z2
    GainLoss zero_short_side;     ///< g3, l3 from Z3
    double alpha = 0.88;
    double beta = 0.88;
    double k = 2.25;
    double y0 = 0.0;
};

/// Gains-to-losses ratio with its absolute error estimate. Empty when the
/// losses vanish.
struct Ratio {
    double value;
    double error;
};
std::optional<Ratio> gain_loss_ratio(const GainLoss& gl);

struct KRatios {
    std::optional<double> K1;
    std::optional<double> K2;
    std::optional<double> KM;
};
KRatios k_ratios(const PowerCaseInputs& in);

/// Interior stationary points of the long and short prospects.
struct Candidates {
    double theta1;  ///< >= 0
    double theta2;  ///< <= 0
};
/// Requires alpha < beta.
Candidates interior_candidates(const PowerCaseInputs& in);

/// The scalar form of theta1 or |theta2| for a ratio K.
double interior_candidate(double alpha, double beta, double k, double ratio);

/// J(theta) = g theta^alpha - k l theta^beta for theta >= 0.
double ray_prospect(const GainLoss& gl, double alpha, double beta, double k, double theta);

PowerCaseInputs power_case_inputs(const Portfolio& p, const MarketModel& m,
                                  const CptPreference& pref);

/// Buy-only sub-problem.
Solution solve_long(const PowerCaseInputs& in);
/// Sell-only sub-problem with theta >= -y0.
Solution solve_short(const PowerCaseInputs& in);
/// Full dispatch for y0 > 0 with the no-short-selling constraint.
Solution solve_power_case(const PowerCaseInputs& in);
/// Unconstrained dispatch for y0 = 0, selling valued through Z3.
Solution solve_zero_initial_case(const PowerCaseInputs& in);

struct ContinuousReport {
    PowerCaseInputs inputs;
    KRatios ratios;
    std::optional<Candidates> candidates;
};

/// Optimal strategy for y0 > 0, power utility, no short selling.
Solution solve(const Portfolio& p, const MarketModel& m, const CptPreference& pref,
               ContinuousReport* report = nullptr);

/// Optimal strategy for y0 = 0 without a short-selling constraint.
Solution solve_zero_initial(double x0, const MarketModel& m, const CptPreference& pref,
                            ContinuousReport* report = nullptr);

}  // namespace cptx
