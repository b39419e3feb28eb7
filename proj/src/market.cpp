#include "cptx/market.hpp"

#include "cptx/error.hpp"

#include <algorithm>
#include <cmath>

namespace cptx {
namespace {

double positive_part(double x) { return std::max(x, 0.0); }
double negative_part(double x) { return std::max(-x, 0.0); }

bool nearly_equal(double a, double b) {
    return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b));
}

}  // namespace

MarketModel MarketModel::make(double r, double lambda, ReturnLaw law, double horizon) {
    MarketModel m{r, lambda, std::make_shared<const ReturnLaw>(std::move(law)), horizon};
    m.validate();
    return m;
}

void MarketModel::validate() const {
    require(std::isfinite(r) && r >= 0.0, "market: r must be >= 0");
    require(lambda >= 0.0 && lambda < 1.0, "market: lambda must lie in [0, 1)");
    require(horizon > 0.0, "market: horizon must be > 0");
    require(returns != nullptr, "market: return law missing");
}

double terminal_wealth(const Portfolio& p, const MarketModel& m, double theta,
                       double gross_return) {
    const double bank = 1.0 + m.r;
    const double risky = gross_return * (p.y0 + theta);
    return bank * (p.x0 - theta) + risky -
           m.lambda * (positive_part(risky) + bank * negative_part(theta));
}

WealthCoefficients wealth_coefficients(const Portfolio& p, const MarketModel& m, double theta) {
    const double bank = 1.0 + m.r;
    const double units = p.y0 + theta;
    return {units - m.lambda * positive_part(units),
            bank * (p.x0 - theta) - m.lambda * bank * negative_part(theta)};
}

WealthCoefficients reference_coefficients(const Portfolio& p, const MarketModel& m) {
    return {p.y0 - m.lambda * positive_part(p.y0), (1.0 + m.r) * p.x0};
}

SignedDistribution reference_point(const Portfolio& p, const MarketModel& m) {
    const auto ref = reference_coefficients(p, m);
    if (ref.slope == 0.0) return SignedDistribution::constant(ref.intercept);
    return SignedDistribution::affine(m.returns, ref.slope, ref.intercept);
}

SignedDistribution wealth_minus_reference(const Portfolio& p, const MarketModel& m,
                                          double theta) {
    const auto w = wealth_coefficients(p, m, theta);
    const auto ref = reference_coefficients(p, m);
    const double slope = w.slope - ref.slope;
    const double intercept = w.intercept - ref.intercept;
    if (slope == 0.0) return SignedDistribution::constant(intercept);
    return SignedDistribution::affine(m.returns, slope, intercept);
}

ArbitrageCheck check_no_arbitrage(const MarketModel& m) {
    m.validate();
    const ReturnLaw& law = *m.returns;
    const double bank = 1.0 + m.r;
    const double keep = 1.0 - m.lambda;

    if (auto c = law.constant_value()) {
        if (nearly_equal(keep * *c, bank)) {
            return {false, "degenerate: (1-lambda)(1+R) is identically 1+r"};
        }
        if (nearly_equal(*c, keep * bank)) {
            return {false, "degenerate: 1+R is identically (1-lambda)(1+r)"};
        }
    }
    if (const auto* b = std::get_if<ReturnLaw::Binomial>(&law.spec())) {
        if (!(b->u > keep * bank)) return {false, "u > (1-lambda)(1+r) fails"};
        if (!(keep * bank > keep * keep * b->d)) {
            return {false, "(1-lambda)(1+r) > (1-lambda)^2 d fails"};
        }
        return {};
    }
    if (!(law.cdf_below(bank / keep) > 0.0)) {
        return {false, "P((1-lambda)(1+R) < 1+r) > 0 fails"};
    }
    if (!(law.sf(keep * bank) > 0.0)) {
        return {false, "P(1+R > (1-lambda)(1+r)) > 0 fails"};
    }
    return {};
}

SignedDistribution excess_transform(const MarketModel& m, Excess which) {
    const double bank = 1.0 + m.r;
    const double keep = 1.0 - m.lambda;
    switch (which) {
        case Excess::Z1:
            return SignedDistribution::affine(m.returns, keep, -bank);
        case Excess::Z2:
            return SignedDistribution::affine(m.returns, keep, -keep * bank);
        case Excess::Z3:
            return SignedDistribution::affine(m.returns, 1.0, -keep * bank);
    }
    throw InvalidArgument("excess_transform: unknown transform");
}

LossSetProbabilities loss_set_probabilities(const MarketModel& m) {
    return {excess_transform(m, Excess::Z1).cdf_below(0.0),
            excess_transform(m, Excess::Z2).sf(0.0),
            excess_transform(m, Excess::Z3).sf(0.0)};
}

}  // namespace cptx
