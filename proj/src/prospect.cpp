#include "cptx/prospect.hpp"

#include "cptx/error.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace cptx {
namespace {

struct SideResult {
    double value = 0.0;
    double error = 0.0;
    bool converged = true;
};

// Rank-dependent sum over atoms ordered from the extreme inward.
double discrete_side(const CptPreference& pref, const std::vector<Atom>& atoms, Side side) {
    double value = 0.0;
    double cumulative = 0.0;
    double w_prev = 0.0;
    auto visit = [&](const Atom& a) {
        const double magnitude = side == Side::Gain ? a.value : -a.value;
        cumulative += a.probability;
        const double w_next = pref.weighting.weight(side, std::min(cumulative, 1.0));
        value += pref.utility.eval(side, magnitude) * (w_next - w_prev);
        w_prev = w_next;
    };
    if (side == Side::Gain) {
        for (auto it = atoms.rbegin(); it != atoms.rend() && it->value > 0.0; ++it) visit(*it);
    } else {
        for (auto it = atoms.begin(); it != atoms.end() && it->value < 0.0; ++it) visit(*it);
    }
    return value;
}

// Quantile-domain integral of u(|x(q)|) w'(q) over q in (0, mass), where x(q)
// is the outcome ranked at tail probability q on this side.
SideResult continuous_side(const CptPreference& pref, const SignedDistribution& d, Side side,
                           const quadrature::Options& opt) {
    const bool gain = side == Side::Gain;
    const double mass = gain ? d.sf(0.0) : d.cdf_below(0.0);
    const double mass_complement = gain ? d.cdf(0.0) : d.sf_at_or_above(0.0);
    if (mass <= 0.0) return {};

    const double half = 0.5 * mass;
    const double log_half = std::log(half);
    const auto& w = pref.weighting;
    const auto& u = pref.utility;

    auto magnitude_log = [&](double tail_log) {
        return gain ? d.upper_quantile_log(tail_log) : -d.lower_quantile_log(tail_log);
    };
    auto magnitude = [&](double q, double q_complement) {
        const double x = gain ? d.value_at_survival(q, q_complement)
                              : (q <= q_complement ? d.quantile(q) : d.upper_quantile(q_complement));
        return gain ? x : -x;
    };

    // Deep tail q = half * exp(-s), s = t / (1 - t).
    auto tail = [&](double t) {
        if (t >= 1.0) return 0.0;
        const double s = t / (1.0 - t);
        const double tail_log = s - log_half;
        const double density = w.derivative_times_q_log(side, tail_log);
        if (density == 0.0) return 0.0;
        const double m = std::max(magnitude_log(tail_log), 0.0);
        if (std::isinf(m) && u.is_power()) {
            // Overflowing outcome: combine utility and weight in log space.
            const auto& pw = u.as_power();
            const double log_m = d.log_abs_tail_value(tail_log, gain);
            const double log_u = gain ? pw.alpha * log_m : std::log(pw.k) + pw.beta * log_m;
            return std::exp(log_u + std::log(density) - 2.0 * std::log1p(-t));
        }
        return u.eval(side, m) * density / ((1.0 - t) * (1.0 - t));
    };
    // Near the edge q = mass - half * t^p, where the outcome approaches zero.
    const double power = w.endpoint_power(side);
    auto edge = [&](double t) {
        if (t <= 0.0) return 0.0;
        const double offset = half * std::pow(t, power);
        const double q = mass - offset;
        const double q_complement = mass_complement + offset;
        if (q <= 0.0 || q_complement <= 0.0) return 0.0;
        const double m = std::max(magnitude(q, q_complement), 0.0);
        if (m == 0.0) return 0.0;
        return u.eval(side, m) * w.derivative(side, q, q_complement) * half * power *
               std::pow(t, power - 1.0);
    };

    const auto a = quadrature::integrate(tail, 0.0, 1.0, opt);
    const auto b = quadrature::integrate(edge, 0.0, 1.0, opt);
    SideResult out;
    out.value = a.value + b.value;
    out.error = a.error + b.error;
    out.converged = a.converged && b.converged;
    return out;
}

SideResult side_value(const CptPreference& pref, const SignedDistribution& d, Side side,
                      const quadrature::Options& opt) {
    if (d.is_discrete()) return {discrete_side(pref, d.atoms(), side), 0.0, true};
    return continuous_side(pref, d, side, opt);
}

}  // namespace

ProspectBreakdown evaluate_prospect(const CptPreference& pref, const SignedDistribution& d,
                                    const quadrature::Options& opt) {
    const auto gains = side_value(pref, d, Side::Gain, opt);
    const auto losses = side_value(pref, d, Side::Loss, opt);
    ProspectBreakdown out;
    out.v_plus = gains.value;
    out.v_minus = losses.value;
    out.plus_finite = gains.converged;
    out.minus_finite = losses.converged;
    out.plus_error = gains.error;
    out.minus_error = losses.error;
    out.total = out.v_plus - out.v_minus;
    return out;
}

ProspectBreakdown prospect_value(const CptPreference& pref, const SignedDistribution& d,
                                 const quadrature::Options& opt) {
    auto out = evaluate_prospect(pref, d, opt);
    if (!out.plus_finite) {
        throw DivergenceError("gains", "gains integral did not converge (estimate " +
                                           std::to_string(out.v_plus) + ")");
    }
    if (!out.minus_finite) {
        throw DivergenceError("losses", "losses integral did not converge (estimate " +
                                            std::to_string(out.v_minus) + ")");
    }
    return out;
}

double gains_value(const CptPreference& pref, const SignedDistribution& d,
                   const quadrature::Options& opt, double* error) {
    const auto r = side_value(pref, d, Side::Gain, opt);
    if (!r.converged) {
        throw DivergenceError("gains", "gains integral did not converge (estimate " +
                                           std::to_string(r.value) + ")");
    }
    if (error) *error = r.error;
    return r.value;
}

Finiteness check_finiteness(const CptPreference& pref, const ReturnLaw& law) {
    if (law.is_bounded()) return Finiteness::Finite;
    if (!pref.utility.is_power()) return Finiteness::Finite;
    const auto& spec = law.spec();
    const bool gaussian_tails = std::holds_alternative<ReturnLaw::Normal>(spec);
    const bool lognormal = std::holds_alternative<ReturnLaw::LogNormal>(spec);
    const auto* t = std::get_if<ReturnLaw::StudentT>(&spec);
    const auto& u = pref.utility.as_power();

    if (std::holds_alternative<IdentityWeighting>(pref.weighting.form())) {
        if (gaussian_tails || lognormal) return Finiteness::Finite;
        if (t && t->nu > u.beta) return Finiteness::Finite;
        return Finiteness::Unverified;
    }
    if (const auto* tk = std::get_if<TverskyKahneman>(&pref.weighting.form())) {
        if (gaussian_tails || lognormal) return Finiteness::Finite;
        // Tail probability ~ x^-nu, weighted ~ x^-nu*gamma; u grows like x^alpha.
        if (t && tk->gamma * t->nu > u.alpha && tk->delta * t->nu > u.beta) {
            return Finiteness::Finite;
        }
        return Finiteness::Unverified;
    }
    const auto& prelec = std::get<Prelec>(pref.weighting.form());
    if (gaussian_tails) return Finiteness::Finite;
    // ln(1+R) normal: the upper tail of 1+R needs exp(-(ln x)^(2 gamma)) to beat any power.
    if (lognormal && prelec.gamma > 0.5) return Finiteness::Finite;
    return Finiteness::Unverified;
}

}  // namespace cptx
