#include "cptx/binomial_solver.hpp"

#include "cptx/error.hpp"

#include <algorithm>
#include <cmath>

namespace cptx {
namespace {

constexpr double kBand = 1e-12;

const ReturnLaw::Binomial& binomial_law(const MarketModel& m) {
    m.validate();
    const auto* b = std::get_if<ReturnLaw::Binomial>(&m.returns->spec());
    require(b != nullptr, "binomial solver needs a binomial return law");
    return *b;
}

enum class Cmp { Less, Equal, Greater };

Cmp compare(double a, double b) {
    const double band = kBand * std::max({1.0, std::abs(a), std::abs(b)});
    if (std::abs(a - b) <= band) return Cmp::Equal;
    return a < b ? Cmp::Less : Cmp::Greater;
}

bool nonpositive(double x) { return x <= kBand; }

// Outcome class of a sub-problem: zero, flat interval, unbounded, or interior point.
enum class Regime { Zero = 1, Flat = 2, Unbounded = 3, Interior = 4 };

Regime regime(const Solution& s) {
    const char tail = s.case_id[s.case_id.find('-') + 1];
    return static_cast<Regime>(tail - '0');
}

}  // namespace

PseudoProbabilities pseudo_probabilities(const MarketModel& m) {
    const auto& b = binomial_law(m);
    const double bank = 1.0 + m.r;
    const double keep = 1.0 - m.lambda;
    const double spread = b.u - b.d;
    PseudoProbabilities pp{};
    pp.pbu = (bank - keep * b.d) / (keep * spread);
    pp.pbd = (keep * b.u - bank) / (keep * spread);
    pp.psu = (keep * bank - b.d) / spread;
    pp.psd = (b.u - keep * bank) / spread;
    return pp;
}

Replication replicate(const MarketModel& m, const Payoff2& xi) {
    const auto& b = binomial_law(m);
    const auto pp = pseudo_probabilities(m);
    const double bank = 1.0 + m.r;
    const double spread = b.u - b.d;
    if (xi.xi_u >= xi.xi_d) {
        return {(xi.xi_u - xi.xi_d) / ((1.0 - m.lambda) * spread),
                (pp.pbu * xi.xi_u + pp.pbd * xi.xi_d) / bank};
    }
    return {(xi.xi_u - xi.xi_d) / spread, (pp.psu * xi.xi_u + pp.psd * xi.xi_d) / bank};
}

double lambda_bar(const MarketModel& m) {
    const auto& b = binomial_law(m);
    const double bank = 1.0 + m.r;
    return std::max(1.0 - bank / b.u, 1.0 - b.d / bank);
}

BinomialInputs binomial_inputs(double x0, const MarketModel& m, const CptPreference& pref) {
    const auto& b = binomial_law(m);
    require(std::isfinite(x0), "portfolio: x0 must be finite");
    require(!pref.utility.is_power(), "binomial solver needs exponential utility");
    const auto& u = pref.utility.as_exponential();
    require(u.eta_plus == u.eta_minus, "binomial solver needs eta_plus == eta_minus");
    const auto arb = check_no_arbitrage(m);
    require(arb.ok, "market admits arbitrage: " + arb.violation);

    BinomialInputs in;
    in.u = b.u;
    in.d = b.d;
    in.p = b.p;
    in.r = m.r;
    in.lambda = m.lambda;
    in.pp = pseudo_probabilities(m);
    in.eta = u.eta_plus;
    in.zeta = u.zeta;
    in.reference = (1.0 + m.r) * x0;
    const double up = 1.0 - b.p;
    in.w_gain_up = pref.weighting.weight(Side::Gain, up, b.p);
    in.w_loss_down = pref.weighting.weight(Side::Loss, b.p, up);
    in.w_gain_down = pref.weighting.weight(Side::Gain, b.p, up);
    in.w_loss_up = pref.weighting.weight(Side::Loss, up, b.p);
    return in;
}

ZetaThresholds zeta_thresholds(const BinomialInputs& in) {
    ZetaThresholds z{};
    z.bar1 = in.w_gain_up / in.w_loss_down;
    z.under1 = in.w_gain_down / in.w_loss_up;
    if (in.pp.pbu > 0.0) z.bar2 = in.pp.pbd / in.pp.pbu * z.bar1;
    if (in.pp.psd > 0.0) z.under2 = in.pp.psu / in.pp.psd * z.under1;
    return z;
}

BinomialCandidates candidate_thetas_binomial(const BinomialInputs& in) {
    BinomialCandidates c;
    const auto z = zeta_thresholds(in);
    const double bank = 1.0 + in.r;
    const double keep = 1.0 - in.lambda;
    const auto& pp = in.pp;
    if (pp.pbu > 0.0 && compare(pp.pbd, pp.pbu) == Cmp::Greater && z.bar2 &&
        compare(in.zeta, *z.bar2) == Cmp::Less) {
        c.theta3 = std::log(*z.bar2 / in.zeta) / (in.eta * (keep * (in.u + in.d) - 2.0 * bank));
    }
    if (pp.psd > 0.0 && compare(pp.psu, pp.psd) == Cmp::Greater && z.under2 &&
        compare(in.zeta, *z.under2) == Cmp::Less) {
        c.theta4 =
            -std::log(*z.under2 / in.zeta) / (in.eta * (2.0 * keep * bank - (in.u + in.d)));
    }
    return c;
}

double binomial_prospect(const BinomialInputs& in, double theta) {
    const double bank = 1.0 + in.r;
    const double keep = 1.0 - in.lambda;
    if (theta >= 0.0) {
        const double gain = keep * in.u - bank;  // per unit, up state
        const double loss = bank - keep * in.d;  // per unit, down state
        // No arbitrage keeps the down state a loss; the up state is the milder
        // loss when it is not a gain.
        double j = -in.zeta * in.w_loss_down * -std::expm1(-in.eta * loss * theta);
        if (gain > 0.0) j += in.w_gain_up * -std::expm1(-in.eta * gain * theta);
        else j -= in.zeta * (1.0 - in.w_loss_down) * -std::expm1(in.eta * gain * theta);
        return j;
    }
    const double t = -theta;
    const double gain = keep * bank - in.d;  // per unit sold, down state
    const double loss = in.u - keep * bank;  // per unit sold, up state
    double j = -in.zeta * in.w_loss_up * -std::expm1(-in.eta * loss * t);
    if (gain > 0.0) j += in.w_gain_down * -std::expm1(-in.eta * gain * t);
    else j -= in.zeta * (1.0 - in.w_loss_up) * -std::expm1(in.eta * gain * t);
    return j;
}

double limit_prospect_up(const BinomialInputs& in) {
    return in.w_gain_up - in.zeta * in.w_loss_down;
}

double limit_prospect_down(const BinomialInputs& in) {
    return in.w_gain_down - in.zeta * in.w_loss_up;
}

Solution solve_buy(const BinomialInputs& in) {
    const auto& pp = in.pp;
    const auto z = zeta_thresholds(in);
    if (nonpositive(pp.pbd)) return Solution::point(0.0, "T4.1-1a", 0.0, std::abs(pp.pbd) <= kBand);
    const Cmp shape = compare(pp.pbd, pp.pbu);
    if (shape == Cmp::Equal) {
        switch (compare(in.zeta, z.bar1)) {
            case Cmp::Greater: return Solution::point(0.0, "T4.1-1b", 0.0, true);
            case Cmp::Equal: return Solution::interval(0.0, kInfinity, "T4.1-2", 0.0, true);
            case Cmp::Less: return Solution::plus_infinity("T4.1-3a", limit_prospect_up(in), true);
        }
    }
    if (shape == Cmp::Less) {
        const Cmp c = compare(in.zeta, z.bar1);
        if (c != Cmp::Less) return Solution::point(0.0, "T4.1-1c", 0.0, c == Cmp::Equal);
        return Solution::plus_infinity("T4.1-3b", limit_prospect_up(in));
    }
    const Cmp c = compare(in.zeta, *z.bar2);
    if (c != Cmp::Less) return Solution::point(0.0, "T4.1-1d", 0.0, c == Cmp::Equal);
    const double t3 = *candidate_thetas_binomial(in).theta3;
    return Solution::point(t3, "T4.1-4", binomial_prospect(in, t3));
}

Solution solve_sell(const BinomialInputs& in) {
    const auto& pp = in.pp;
    const auto z = zeta_thresholds(in);
    if (nonpositive(pp.psu)) return Solution::point(0.0, "T4.2-1a", 0.0, std::abs(pp.psu) <= kBand);
    const Cmp shape = compare(pp.psu, pp.psd);
    if (shape == Cmp::Equal) {
        switch (compare(in.zeta, z.under1)) {
            case Cmp::Greater: return Solution::point(0.0, "T4.2-1b", 0.0, true);
            case Cmp::Equal: return Solution::interval(-kInfinity, 0.0, "T4.2-2", 0.0, true);
            case Cmp::Less:
                return Solution::minus_infinity("T4.2-3a", limit_prospect_down(in), true);
        }
    }
    if (shape == Cmp::Less) {
        const Cmp c = compare(in.zeta, z.under1);
        if (c != Cmp::Less) return Solution::point(0.0, "T4.2-1c", 0.0, c == Cmp::Equal);
        return Solution::minus_infinity("T4.2-3b", limit_prospect_down(in));
    }
    const Cmp c = compare(in.zeta, *z.under2);
    if (c != Cmp::Less) return Solution::point(0.0, "T4.2-1d", 0.0, c == Cmp::Equal);
    const double t4 = *candidate_thetas_binomial(in).theta4;
    return Solution::point(t4, "T4.2-4", binomial_prospect(in, t4));
}

Solution solve_binomial_case(const BinomialInputs& in) {
    const Solution buy = solve_buy(in);
    const Solution sell = solve_sell(in);
    const Regime rb = regime(buy);
    const Regime rs = regime(sell);
    const bool inherited = buy.boundary || sell.boundary;
    const double jb = buy.prospect;
    const double js = sell.prospect;
    const bool sell_flat = rs == Regime::Zero || rs == Regime::Flat;
    const bool buy_flat = rb == Regime::Zero || rb == Regime::Flat;
    // Returns whether a >= b, and whether the comparison sat inside the band.
    auto at_least = [](double a, double b) {
        const Cmp c = compare(a, b);
        return std::pair{c != Cmp::Less, c == Cmp::Equal};
    };
    auto with = [&](Solution s, std::string id, bool tie) {
        s.case_id = std::move(id);
        s.boundary = inherited || tie;
        return s;
    };

    if (rb == Regime::Zero && rs == Regime::Zero) {
        return Solution::point(0.0, "T4.3-1", 0.0, inherited);
    }
    if (rb == Regime::Interior) {
        if (sell_flat) return with(buy, "T4.3-2a", false);
        const auto [ge, tie] = at_least(jb, js);
        if (rs == Regime::Unbounded) return ge ? with(buy, "T4.3-2b", tie) : with(sell, "T4.3-8c", tie);
        return ge ? with(buy, "T4.3-2c", tie) : with(sell, "T4.3-3c", tie);
    }
    if (rs == Regime::Interior) {
        if (buy_flat) return with(sell, "T4.3-3a", false);
        const auto [ge, tie] = at_least(js, jb);
        return ge ? with(sell, "T4.3-3b", tie) : with(buy, "T4.3-7c", tie);
    }
    if (rb == Regime::Unbounded) {
        if (sell_flat) return with(buy, "T4.3-7a", false);
        const auto [ge, tie] = at_least(jb, js);
        return ge ? with(buy, "T4.3-7b", tie) : with(sell, "T4.3-8b", tie);
    }
    if (rs == Regime::Unbounded) return with(sell, "T4.3-8a", false);
    if (rb == Regime::Flat && rs == Regime::Flat) {
        return Solution::interval(-kInfinity, kInfinity, "T4.3-6", 0.0, true);
    }
    if (rb == Regime::Flat) return Solution::interval(0.0, kInfinity, "T4.3-4", 0.0, true);
    return Solution::interval(-kInfinity, 0.0, "T4.3-5", 0.0, true);
}

Solution solve_binomial(double x0, const MarketModel& m, const CptPreference& pref,
                        BinomialReport* report) {
    const auto in = binomial_inputs(x0, m, pref);
    const auto out = solve_binomial_case(in);
    if (report) {
        report->inputs = in;
        report->thresholds = zeta_thresholds(in);
        report->candidates = candidate_thetas_binomial(in);
        report->lambda_bar = lambda_bar(m);
        report->buy = solve_buy(in);
        report->sell = solve_sell(in);
    }
    return out;
}

}  // namespace cptx
