#include "cptx/preference.hpp"

#include "cptx/error.hpp"

#include <algorithm>
#include <cmath>

namespace cptx {
namespace {

template <class... Ts>
struct overloaded : Ts... { using Ts::operator()...; };
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// TK weight and derivative pieces from q^g and the complement.
struct TkTerms {
    double w;
    double bracket;  // w'(q) q / w
};

TkTerms tk_terms(double g, double q_pow, double q, double q_complement) {
    const double c_pow = std::pow(q_complement, g);
    const double s = q_pow + c_pow;
    const double log_w = std::log(q_pow) - std::log(s) / g;
    const double bracket = g - (q_pow - q * std::pow(q_complement, g - 1.0)) / s;
    return {std::exp(log_w), bracket};
}

double check_q(double q) {
    require(q >= 0.0 && q <= 1.0, "weight: q outside [0, 1]");
    return q;
}

}  // namespace

UtilityPair UtilityPair::power(double alpha, double beta, double k) {
    require(alpha > 0.0 && alpha <= 1.0, "power utility: alpha must lie in (0, 1]");
    require(beta > 0.0 && beta <= 1.0, "power utility: beta must lie in (0, 1]");
    require(alpha <= beta, "power utility: alpha <= beta required");
    require(k > 1.0 && std::isfinite(k), "power utility: k must be > 1");
    return UtilityPair(PowerUtility{alpha, beta, k});
}

UtilityPair UtilityPair::exponential(double eta_plus, double eta_minus, double zeta) {
    require(eta_plus > 0.0 && std::isfinite(eta_plus), "exponential utility: eta_plus must be > 0");
    require(eta_minus > 0.0 && std::isfinite(eta_minus),
            "exponential utility: eta_minus must be > 0");
    require(zeta > 1.0 && std::isfinite(zeta), "exponential utility: zeta must be > 1");
    require(eta_minus <= eta_plus && zeta * eta_minus > eta_plus,
            "exponential utility: loss aversion needs eta_minus <= eta_plus and "
            "zeta * eta_minus > eta_plus");
    return UtilityPair(ExponentialUtility{eta_plus, eta_minus, zeta});
}

const PowerUtility& UtilityPair::as_power() const {
    const auto* p = std::get_if<PowerUtility>(&form_);
    require(p != nullptr, "utility is not of power form");
    return *p;
}

const ExponentialUtility& UtilityPair::as_exponential() const {
    const auto* e = std::get_if<ExponentialUtility>(&form_);
    require(e != nullptr, "utility is not of exponential form");
    return *e;
}

double UtilityPair::eval(Side side, double x) const {
    require(x >= 0.0, "utility: negative argument");
    return std::visit(overloaded{
                          [&](const PowerUtility& u) {
                              return side == Side::Gain ? std::pow(x, u.alpha)
                                                        : u.k * std::pow(x, u.beta);
                          },
                          [&](const ExponentialUtility& u) {
                              return side == Side::Gain ? -std::expm1(-u.eta_plus * x)
                                                        : -u.zeta * std::expm1(-u.eta_minus * x);
                          },
                      },
                      form_);
}

WeightingPair WeightingPair::tversky_kahneman(double gamma, double delta) {
    require(gamma >= 0.28 && std::isfinite(gamma), "TK weighting: gamma must be >= 0.28");
    require(delta >= 0.28 && std::isfinite(delta), "TK weighting: delta must be >= 0.28");
    return WeightingPair(TverskyKahneman{gamma, delta});
}

WeightingPair WeightingPair::prelec(double gamma, double delta_plus, double delta_minus) {
    require(gamma > 0.0 && gamma < 1.0, "Prelec weighting: gamma must lie in (0, 1)");
    require(delta_plus > 0.0 && std::isfinite(delta_plus),
            "Prelec weighting: delta_plus must be > 0");
    require(delta_minus > 0.0 && std::isfinite(delta_minus),
            "Prelec weighting: delta_minus must be > 0");
    return WeightingPair(Prelec{gamma, delta_plus, delta_minus});
}

WeightingPair WeightingPair::identity() { return WeightingPair(IdentityWeighting{}); }

double WeightingPair::weight(Side side, double q) const {
    return weight(side, check_q(q), 1.0 - q);
}

double WeightingPair::weight(Side side, double q, double q_complement) const {
    check_q(q);
    if (q == 0.0) return 0.0;
    if (q_complement <= 0.0) return 1.0;
    return std::visit(
        overloaded{
            [&](const TverskyKahneman& w) {
                const double g = side == Side::Gain ? w.gamma : w.delta;
                return std::min(1.0, tk_terms(g, std::pow(q, g), q, q_complement).w);
            },
            [&](const Prelec& w) {
                const double d = side == Side::Gain ? w.delta_plus : w.delta_minus;
                const double tail_log = q <= 0.5 ? -std::log(q) : -std::log1p(-q_complement);
                return std::exp(-d * std::pow(tail_log, w.gamma));
            },
            [&](const IdentityWeighting&) { return q; },
        },
        form_);
}

double WeightingPair::derivative(Side side, double q) const {
    return derivative(side, q, 1.0 - q);
}

double WeightingPair::derivative(Side side, double q, double q_complement) const {
    require(q > 0.0 && q_complement > 0.0, "weight derivative: q must lie in (0, 1)");
    return std::visit(
        overloaded{
            [&](const TverskyKahneman& w) {
                const double g = side == Side::Gain ? w.gamma : w.delta;
                const auto t = tk_terms(g, std::pow(q, g), q, q_complement);
                return t.w * t.bracket / q;
            },
            [&](const Prelec& w) {
                const double d = side == Side::Gain ? w.delta_plus : w.delta_minus;
                const double tail_log = q <= 0.5 ? -std::log(q) : -std::log1p(-q_complement);
                return std::exp(-d * std::pow(tail_log, w.gamma)) * d * w.gamma *
                       std::pow(tail_log, w.gamma - 1.0) / q;
            },
            [&](const IdentityWeighting&) { return 1.0; },
        },
        form_);
}

double WeightingPair::derivative_times_q_log(Side side, double tail_log) const {
    require(tail_log > 0.0, "weight derivative: tail_log must be > 0");
    const double q = std::exp(-tail_log);
    const double q_complement = -std::expm1(-tail_log);
    return std::visit(
        overloaded{
            [&](const TverskyKahneman& w) {
                const double g = side == Side::Gain ? w.gamma : w.delta;
                const double q_pow = std::exp(-g * tail_log);
                if (q_pow == 0.0) return 0.0;
                const auto t = tk_terms(g, q_pow, q, q_complement);
                return t.w * t.bracket;
            },
            [&](const Prelec& w) {
                const double d = side == Side::Gain ? w.delta_plus : w.delta_minus;
                return std::exp(-d * std::pow(tail_log, w.gamma)) * d * w.gamma *
                       std::pow(tail_log, w.gamma - 1.0);
            },
            [&](const IdentityWeighting&) { return q; },
        },
        form_);
}

double WeightingPair::endpoint_power(Side side) const {
    return std::visit(overloaded{
                          [&](const TverskyKahneman& w) {
                              const double g = side == Side::Gain ? w.gamma : w.delta;
                              return std::max(2.0, 1.0 / g);
                          },
                          [](const Prelec& w) { return std::max(2.0, 1.0 / w.gamma); },
                          [](const IdentityWeighting&) { return 2.0; },
                      },
                      form_);
}

}  // namespace cptx
