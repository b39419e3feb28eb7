#pragma once

#include "cptx/return_law.hpp"
#include "cptx/signed_distribution.hpp"

#include <memory>
#include <string>

namespace cptx {

/// Single-period market: riskless simple return r, proportional cost rate
/// lambda on risky trades, and the law of the risky gross return.
struct MarketModel {
    double r = 0.0;
    double lambda = 0.0;
    std::shared_ptr<const ReturnLaw> returns;
    /// Length of the period in years; metadata only.
    double horizon = 1.0;

    static MarketModel make(double r, double lambda, ReturnLaw law, double horizon = 1.0);

    /// Rejects r < 0, lambda outside [0, 1) and a missing law.
    void validate() const;
};

struct Portfolio {
    double x0 = 0.0;  ///< Money in the riskless asset.
    double y0 = 0.0;  ///< Money in the risky asset.
};

/// Terminal wealth written as slope * G + intercept.
struct WealthCoefficients {
    double slope;
    double intercept;
};

double terminal_wealth(const Portfolio& p, const MarketModel& m, double theta,
                       double gross_return);

WealthCoefficients wealth_coefficients(const Portfolio& p, const MarketModel& m, double theta);
WealthCoefficients reference_coefficients(const Portfolio& p, const MarketModel& m);

/// Law of the terminal wealth of the strategy that does not trade.
SignedDistribution reference_point(const Portfolio& p, const MarketModel& m);

/// Law of W(theta) - B.
SignedDistribution wealth_minus_reference(const Portfolio& p, const MarketModel& m, double theta);

struct ArbitrageCheck {
    bool ok = true;
    std::string violation;  ///< Empty when ok.
};

ArbitrageCheck check_no_arbitrage(const MarketModel& m);

enum class Excess { Z1, Z2, Z3 };

/// Z1 = (1-lambda)(1+R) - (1+r); Z2 = (1-lambda)(R - r); Z3 = 1+R - (1-lambda)(1+r).
SignedDistribution excess_transform(const MarketModel& m, Excess which);

struct LossSetProbabilities {
    double pA1;  ///< P(Z1 < 0)
    double pA2;  ///< P(Z2 > 0)
    double pA3;  ///< P(Z3 > 0)
};

LossSetProbabilities loss_set_probabilities(const MarketModel& m);

}  // namespace cptx
