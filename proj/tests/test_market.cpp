#include "cptx/error.hpp"
#include "cptx/market.hpp"
#include "cptx/normal.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace cptx;

TEST(TerminalWealth, DoingNothingWithoutInterest) {
    const auto m = MarketModel::make(0.0, 0.0, ReturnLaw::lognormal(0.0, 0.1));
    EXPECT_DOUBLE_EQ(terminal_wealth({1.0, 0.0}, m, 0.0, 1.1), 1.0);
}

TEST(TerminalWealth, LiquidationCostOnRiskyHolding) {
    const auto m = MarketModel::make(0.0, 0.1, ReturnLaw::lognormal(0.0, 0.1));
    EXPECT_DOUBLE_EQ(terminal_wealth({0.0, 1.0}, m, 0.0, 1.0), 0.9);
}

TEST(TerminalWealth, BuyingWithCosts) {
    const auto m = MarketModel::make(0.05, 0.01, ReturnLaw::lognormal(0.0, 0.1));
    EXPECT_NEAR(terminal_wealth({1.0, 0.0}, m, 0.5, 1.2), 0.5 * 1.05 + 0.6 - 0.01 * 0.6, 1e-15);
}

TEST(TerminalWealth, FrictionlessAlgebra) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    const auto m = MarketModel::make(0.03, 0.0, ReturnLaw::lognormal(0.0, 0.1));
    for (int i = 0; i < 500; ++i) {
        const Portfolio p{u(rng), std::abs(u(rng))};
        const double theta = u(rng);
        const double g = 1.0 + 0.5 * u(rng);
        const double expected = 1.03 * p.x0 + g * p.y0 + (g - 1.0 - 0.03) * theta;
        EXPECT_NEAR(terminal_wealth(p, m, theta, g), expected, 1e-13);
    }
}

TEST(TerminalWealth, ZeroTradeMatchesReferencePathwise) {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(0.0, 3.0);
    const auto m = MarketModel::make(0.02, 0.07, ReturnLaw::lognormal(0.0, 0.1));
    for (int i = 0; i < 200; ++i) {
        const Portfolio p{u(rng) - 1.0, u(rng)};
        const auto ref = reference_coefficients(p, m);
        const double g = u(rng);
        EXPECT_NEAR(terminal_wealth(p, m, 0.0, g), ref.slope * g + ref.intercept, 1e-13);
        const auto d = wealth_minus_reference(p, m, 0.0);
        EXPECT_EQ(d.cdf(0.0), 1.0);
        EXPECT_EQ(d.cdf_below(0.0), 0.0);
    }
}

TEST(TerminalWealth, AffineLawMatchesPointwiseFormula) {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    const auto m = MarketModel::make(0.01, 0.03, ReturnLaw::uniform(0.7, 1.4));
    for (int i = 0; i < 300; ++i) {
        const Portfolio p{u(rng), std::abs(u(rng))};
        const double theta = std::max(u(rng), -p.y0);
        const auto w = wealth_coefficients(p, m, theta);
        const double g = 0.7 + 0.7 * (u(rng) + 1.5) / 3.0;
        EXPECT_NEAR(w.slope * g + w.intercept, terminal_wealth(p, m, theta, g), 1e-13);
    }
}

TEST(ReferencePoint, ConstantWithoutRiskyHolding) {
    const auto m = MarketModel::make(0.0, 0.02, ReturnLaw::lognormal(0.0, 0.1));
    const auto b = reference_point({1.0, 0.0}, m);
    EXPECT_TRUE(b.is_discrete());
    EXPECT_EQ(b.quantile(0.3), 1.0);
}

TEST(ReferencePoint, TwoPointLawWithFrictionlessHolding) {
    const auto m = MarketModel::make(0.0, 0.0, ReturnLaw::binomial(1.2, 0.9, 0.4));
    const auto a = reference_point({0.0, 1.0}, m).atoms();
    ASSERT_EQ(a.size(), 2u);
    EXPECT_DOUBLE_EQ(a[0].value, 0.9);
    EXPECT_DOUBLE_EQ(a[0].probability, 0.4);
    EXPECT_DOUBLE_EQ(a[1].value, 1.2);
}

TEST(ReferencePoint, ConstantReturnArithmetic) {
    const auto m = MarketModel::make(0.05, 0.1, ReturnLaw::empirical({1.1}));
    EXPECT_NEAR(reference_point({2.0, 1.0}, m).quantile(0.5), 3.09, 1e-14);
}

TEST(NoArbitrage, BinomialExamples) {
    EXPECT_TRUE(check_no_arbitrage(MarketModel::make(0.05, 0.0, ReturnLaw::binomial(1.2, 0.9, 0.5))).ok);
    const auto fail = check_no_arbitrage(MarketModel::make(0.05, 0.0, ReturnLaw::binomial(1.04, 1.02, 0.5)));
    EXPECT_FALSE(fail.ok);
    EXPECT_FALSE(fail.violation.empty());
    EXPECT_TRUE(check_no_arbitrage(MarketModel::make(0.0, 0.5, ReturnLaw::binomial(1.1, 0.9, 0.5))).ok);
}

TEST(NoArbitrage, DegenerateConstantReturns) {
    const auto one = check_no_arbitrage(MarketModel::make(0.05, 0.1, ReturnLaw::empirical({1.05 / 0.9})));
    EXPECT_FALSE(one.ok);
    const auto two = check_no_arbitrage(MarketModel::make(0.05, 0.1, ReturnLaw::empirical({0.9 * 1.05})));
    EXPECT_FALSE(two.ok);
    EXPECT_FALSE(check_no_arbitrage(MarketModel::make(0.05, 0.0, ReturnLaw::empirical({1.1}))).ok);
}

TEST(NoArbitrage, ContinuousLawsPass) {
    EXPECT_TRUE(check_no_arbitrage(MarketModel::make(0.05, 0.01, ReturnLaw::lognormal(0.13, 0.2))).ok);
    EXPECT_FALSE(check_no_arbitrage(MarketModel::make(0.0, 0.0, ReturnLaw::uniform(1.01, 1.2))).ok);
}

TEST(MarketModel, RejectsInvalidRates) {
    EXPECT_THROW(MarketModel::make(-0.01, 0.0, ReturnLaw::lognormal(0.0, 0.1)), InvalidArgument);
    EXPECT_THROW(MarketModel::make(0.0, 1.0, ReturnLaw::lognormal(0.0, 0.1)), InvalidArgument);
    EXPECT_THROW(MarketModel::make(0.0, -0.1, ReturnLaw::lognormal(0.0, 0.1)), InvalidArgument);
}

TEST(ExcessTransform, CollapseWithoutCosts) {
    const auto m = MarketModel::make(0.02, 0.0, ReturnLaw::lognormal(0.05, 0.2));
    const auto z1 = excess_transform(m, Excess::Z1);
    const auto z2 = excess_transform(m, Excess::Z2);
    const auto z3 = excess_transform(m, Excess::Z3);
    for (double p : {0.05, 0.3, 0.5, 0.8}) {
        const double target = m.returns->quantile(p) - 1.02;
        EXPECT_NEAR(z1.quantile(p), target, 1e-14);
        EXPECT_NEAR(z2.quantile(p), target, 1e-14);
        EXPECT_NEAR(z3.quantile(p), target, 1e-14);
    }
}

TEST(ExcessTransform, ConstantReturnArithmetic) {
    const auto m = MarketModel::make(0.0, 0.01, ReturnLaw::empirical({1.1}));
    EXPECT_NEAR(excess_transform(m, Excess::Z1).quantile(0.5), 0.089, 1e-15);
    EXPECT_NEAR(excess_transform(m, Excess::Z2).quantile(0.5), 0.099, 1e-15);
    EXPECT_NEAR(excess_transform(m, Excess::Z3).quantile(0.5), 0.11, 1e-15);
}

TEST(ExcessTransform, LongExcessBelowShortExcessPointwise) {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(0.01, 0.99);
    const auto m = MarketModel::make(0.01, 0.03, ReturnLaw::lognormal(0.0, 0.2));
    const auto z1 = excess_transform(m, Excess::Z1);
    const auto z2 = excess_transform(m, Excess::Z2);
    for (int i = 0; i < 200; ++i) {
        const double p = u(rng);
        EXPECT_LT(z1.quantile(p), z2.quantile(p));
    }
}

TEST(LossSets, LognormalWithoutCosts) {
    const auto m = MarketModel::make(0.03, 0.0, ReturnLaw::lognormal(0.05, 0.2));
    const auto ps = loss_set_probabilities(m);
    EXPECT_NEAR(ps.pA1, normal::cdf((std::log(1.03) - 0.05) / 0.2), 1e-14);
    EXPECT_NEAR(ps.pA2, 1.0 - ps.pA1, 1e-14);
}

TEST(LossSets, BinomialEnumeratesStates) {
    const auto m = MarketModel::make(0.05, 0.0, ReturnLaw::binomial(1.2, 0.9, 0.35));
    const auto ps = loss_set_probabilities(m);
    EXPECT_DOUBLE_EQ(ps.pA1, 0.35);
    EXPECT_DOUBLE_EQ(ps.pA2, 0.65);
    EXPECT_DOUBLE_EQ(ps.pA3, 0.65);
}

TEST(LossSets, NoArbitrageImpliesPositiveLossSets) {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int checked = 0;
    for (int i = 0; i < 2000; ++i) {
        const double d = 0.5 + u(rng);
        const double up = d + 0.01 + u(rng);
        const auto m = MarketModel::make(0.1 * u(rng), 0.3 * u(rng),
                                         ReturnLaw::binomial(up, d, 0.05 + 0.9 * u(rng)));
        if (!check_no_arbitrage(m).ok) continue;
        ++checked;
        const auto ps = loss_set_probabilities(m);
        EXPECT_GT(ps.pA1, 0.0);
        EXPECT_GT(ps.pA3, 0.0);
        if (ps.pA2 == 0.0) {
            EXPECT_EQ(ps.pA1, 1.0);
        }
    }
    EXPECT_GT(checked, 100);
}
