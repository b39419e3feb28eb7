#include "cptx/continuous_solver.hpp"

#include "cptx/error.hpp"
#include "cptx/prospect.hpp"

#include <algorithm>
#include <cmath>

namespace cptx {
namespace {

enum class Cmp { Less, Equal, Greater };

// k against a ratio, inside a band widened by the ratio's quadrature error.
Cmp compare_k(double k, const std::optional<Ratio>& ratio) {
    if (!ratio) return Cmp::Less;
    const double band = std::max(1e-9, 10.0 * ratio->error);
    const double diff = k - ratio->value;
    if (std::abs(diff) <= band) return Cmp::Equal;
    return diff < 0.0 ? Cmp::Less : Cmp::Greater;
}

double relative_error(const GainLoss& gl) {
    double rel = 0.0;
    if (gl.gain > 0.0) rel += gl.gain_error / gl.gain;
    if (gl.loss > 0.0) rel += gl.loss_error / gl.loss;
    return rel;
}

// Relative band for comparing two prospect values.
double prospect_band(double a, double b, double rel_error) {
    return std::max(1e-9, 10.0 * rel_error) * std::max(std::abs(a), std::abs(b));
}

bool full(double complement) { return complement <= 0.0; }

double short_prospect(const GainLoss& gl, const PowerCaseInputs& in, double theta) {
    return ray_prospect(gl, in.alpha, in.beta, in.k, -theta);
}

}  // namespace

quadrature::Options ratio_quadrature() { return {0.0, 1e-10, 2000}; }

GainLoss long_integrals(const CptPreference& pref, const SignedDistribution& z,
                        const quadrature::Options& opt) {
    const auto& u = pref.utility.as_power();
    const auto v = prospect_value(pref, z, opt);
    return {v.v_plus, v.v_minus / u.k, v.plus_error, v.minus_error / u.k};
}

GainLoss short_integrals(const CptPreference& pref, const SignedDistribution& z,
                         const quadrature::Options& opt) {
    return long_integrals(pref, z.negated(), opt);
}

std::optional<Ratio> gain_loss_ratio(const GainLoss& gl) {
    if (!(gl.loss > 0.0)) return std::nullopt;
    const double value = gl.gain / gl.loss;
    const double error = (gl.gain > 0.0 ? value * relative_error(gl) : gl.gain_error / gl.loss);
    return Ratio{value, error};
}

KRatios k_ratios(const PowerCaseInputs& in) {
    KRatios out;
    if (auto r = gain_loss_ratio(in.long_side)) out.K1 = r->value;
    if (in.pA2 > 0.0) {
        if (auto r = gain_loss_ratio(in.short_side)) out.K2 = r->value;
    }
    if (out.K1 && out.K2) {
        out.KM = std::max(*out.K1, *out.K2);
    } else if (out.K1) {
        out.KM = out.K1;
    }
    return out;
}

double interior_candidate(double alpha, double beta, double k, double ratio) {
    require(alpha < beta, "interior candidates need alpha < beta");
    return std::pow(alpha * ratio / (beta * k), 1.0 / (beta - alpha));
}

Candidates interior_candidates(const PowerCaseInputs& in) {
    require(in.alpha < in.beta, "interior candidates need alpha < beta");
    auto ratio = [](const GainLoss& gl) {
        auto r = gain_loss_ratio(gl);
        require(r.has_value(), "interior candidates: losses vanish");
        return r->value;
    };
    const double K1 = ratio(in.long_side);
    const double K2 = in.pA2 > 0.0 ? ratio(in.short_side) : 0.0;
    return {interior_candidate(in.alpha, in.beta, in.k, K1),
            -interior_candidate(in.alpha, in.beta, in.k, K2)};
}

double ray_prospect(const GainLoss& gl, double alpha, double beta, double k, double theta) {
    if (theta == 0.0) return 0.0;
    return gl.gain * std::pow(theta, alpha) - k * gl.loss * std::pow(theta, beta);
}

PowerCaseInputs power_case_inputs(const Portfolio& p, const MarketModel& m,
                                  const CptPreference& pref) {
    m.validate();
    require(std::isfinite(p.x0) && std::isfinite(p.y0), "portfolio: non-finite holdings");
    require(p.y0 >= 0.0, "portfolio: y0 must be >= 0");
    require(pref.utility.is_power(), "continuous solver needs power utility");
    const auto arb = check_no_arbitrage(m);
    require(arb.ok, "market admits arbitrage: " + arb.violation);

    const auto& u = pref.utility.as_power();
    PowerCaseInputs in;
    in.alpha = u.alpha;
    in.beta = u.beta;
    in.k = u.k;
    in.y0 = p.y0;

    const auto z1 = excess_transform(m, Excess::Z1);
    const auto z2 = excess_transform(m, Excess::Z2);
    const auto z3 = excess_transform(m, Excess::Z3);
    in.pA1 = z1.cdf_below(0.0);
    in.qA1 = z1.sf_at_or_above(0.0);
    in.pA2 = z2.sf(0.0);
    in.qA2 = z2.cdf(0.0);
    in.pA3 = z3.sf(0.0);
    in.qA3 = z3.cdf(0.0);
    in.long_side = long_integrals(pref, z1);
    in.short_side = short_integrals(pref, z2);
    in.zero_short_side = short_integrals(pref, z3);
    return in;
}

Solution solve_long(const PowerCaseInputs& in) {
    if (full(in.qA1)) return Solution::point(0.0, "T3.2-1a", 0.0);
    if (in.alpha < in.beta) {
        const double t1 = interior_candidates(in).theta1;
        return Solution::point(t1, "T3.2-2",
                               ray_prospect(in.long_side, in.alpha, in.beta, in.k, t1));
    }
    switch (compare_k(in.k, gain_loss_ratio(in.long_side))) {
        case Cmp::Greater: return Solution::point(0.0, "T3.2-1b", 0.0);
        case Cmp::Equal: return Solution::interval(0.0, kInfinity, "T3.2-3", 0.0, true);
        case Cmp::Less: break;
    }
    return Solution::plus_infinity("T3.2-4", kInfinity);
}

Solution solve_short(const PowerCaseInputs& in) {
    const double y0 = in.y0;
    auto at = [&](double theta) { return short_prospect(in.short_side, in, theta); };
    if (in.pA2 <= 0.0) return Solution::point(-y0, "T3.3-4a", at(-y0));
    if (full(in.qA2)) return Solution::point(0.0, "T3.3-1a", 0.0);
    if (in.alpha < in.beta) {
        const double t2 = interior_candidates(in).theta2;
        const bool edge = std::abs(t2 + y0) <= 1e-12 * y0;
        if (t2 >= -y0 || edge) return Solution::point(std::max(t2, -y0), "T3.3-2", at(t2), edge);
        return Solution::point(-y0, "T3.3-4c", at(-y0));
    }
    switch (compare_k(in.k, gain_loss_ratio(in.short_side))) {
        case Cmp::Greater: return Solution::point(0.0, "T3.3-1b", 0.0);
        case Cmp::Equal: return Solution::interval(-y0, 0.0, "T3.3-3", at(-y0), true);
        case Cmp::Less: break;
    }
    return Solution::point(-y0, "T3.3-4b", at(-y0));
}

Solution solve_power_case(const PowerCaseInputs& in) {
    require(in.y0 > 0.0, "constrained dispatch needs y0 > 0");
    const double y0 = in.y0;
    const bool a1_full = full(in.qA1);
    const bool a2_full = full(in.qA2);
    const bool a2_empty = in.pA2 <= 0.0;
    const bool equal_powers = in.alpha == in.beta;
    auto short_at = [&](double theta) { return short_prospect(in.short_side, in, theta); };
    auto long_at = [&](double theta) {
        return ray_prospect(in.long_side, in.alpha, in.beta, in.k, theta);
    };

    if (a2_empty) return Solution::point(-y0, "T3.1-4a", short_at(-y0));
    if (a1_full && a2_full) return Solution::point(0.0, "T3.1-1a", 0.0);

    if (a1_full) {
        if (equal_powers) {
            switch (compare_k(in.k, gain_loss_ratio(in.short_side))) {
                case Cmp::Greater: return Solution::point(0.0, "T3.1-1b", 0.0);
                case Cmp::Equal:
                    return Solution::interval(-y0, 0.0, "T3.1-6a", short_at(-y0), true);
                case Cmp::Less: return Solution::point(-y0, "T3.1-4b", short_at(-y0));
            }
        }
        const double t2 = interior_candidates(in).theta2;
        const bool edge = std::abs(t2 + y0) <= 1e-12 * y0;
        if (t2 >= -y0 || edge) {
            const double theta = std::max(t2, -y0);
            return Solution::point(theta, "T3.1-3a", short_at(theta), edge);
        }
        return Solution::point(-y0, "T3.1-4c", short_at(-y0));
    }

    if (a2_full) {
        if (equal_powers) {
            switch (compare_k(in.k, gain_loss_ratio(in.long_side))) {
                case Cmp::Greater: return Solution::point(0.0, "T3.1-1c", 0.0);
                case Cmp::Equal: return Solution::interval(0.0, kInfinity, "T3.1-5a", 0.0, true);
                case Cmp::Less: return Solution::plus_infinity("T3.1-8a", kInfinity);
            }
        }
        const double t1 = interior_candidates(in).theta1;
        return Solution::point(t1, "T3.1-2a", long_at(t1));
    }

    if (equal_powers) {
        const Cmp c1 = compare_k(in.k, gain_loss_ratio(in.long_side));
        const Cmp c2 = compare_k(in.k, gain_loss_ratio(in.short_side));
        if (c1 == Cmp::Less) return Solution::plus_infinity("T3.1-8b", kInfinity);
        const bool band = c1 == Cmp::Equal || c2 == Cmp::Equal;
        // k < K2: selling all of y0 has positive prospect and beats any purchase.
        if (c2 == Cmp::Less) return Solution::point(-y0, "T3.1-4e", short_at(-y0), band);
        if (c1 == Cmp::Equal) {
            if (c2 == Cmp::Greater) return Solution::interval(0.0, kInfinity, "T3.1-5b", 0.0, true);
            return Solution::interval(-y0, kInfinity, "T3.1-7", short_at(-y0), true);
        }
        if (c2 == Cmp::Equal) return Solution::interval(-y0, 0.0, "T3.1-6b", short_at(-y0), true);
        return Solution::point(0.0, "T3.1-1d", 0.0);
    }

    const auto cand = interior_candidates(in);
    const double j1 = long_at(cand.theta1);
    const bool edge = std::abs(cand.theta2 + y0) <= 1e-12 * y0;
    const bool interior = cand.theta2 >= -y0 || edge;
    const double short_theta = interior ? std::max(cand.theta2, -y0) : -y0;
    const double js = short_at(short_theta);
    const double band =
        prospect_band(j1, js, relative_error(in.long_side) + relative_error(in.short_side));
    const bool tie = std::abs(j1 - js) <= band;
    if (j1 >= js || tie) return Solution::point(cand.theta1, "T3.1-2b", j1, tie || edge);
    return Solution::point(short_theta, interior ? "T3.1-3b" : "T3.1-4d", js, edge);
}

Solution solve_zero_initial_case(const PowerCaseInputs& in) {
    const bool a1_full = full(in.qA1);
    const bool a3_full = full(in.qA3);
    const auto& gl1 = in.long_side;
    const auto& gl3 = in.zero_short_side;
    auto long_at = [&](double theta) { return ray_prospect(gl1, in.alpha, in.beta, in.k, theta); };
    auto short_at = [&](double theta) { return short_prospect(gl3, in, theta); };

    if (in.alpha < in.beta) {
        const double t1 = a1_full ? 0.0 : interior_candidate(in.alpha, in.beta, in.k,
                                                             gain_loss_ratio(gl1)->value);
        const double t3 = a3_full ? 0.0 : -interior_candidate(in.alpha, in.beta, in.k,
                                                              gain_loss_ratio(gl3)->value);
        if (t1 == 0.0 && t3 == 0.0) return Solution::point(0.0, "T3.4-1", 0.0);
        const double j1 = long_at(t1);
        const double j3 = short_at(t3);
        const double band = prospect_band(j1, j3, relative_error(gl1) + relative_error(gl3));
        const bool tie = std::abs(j1 - j3) <= band;
        if (t1 > 0.0 && (j1 >= j3 || tie)) return Solution::point(t1, "T3.4-2", j1, tie);
        return Solution::point(t3, "T3.4-3", j3);
    }

    const Cmp c1 = a1_full ? Cmp::Greater : compare_k(in.k, gain_loss_ratio(gl1));
    const Cmp c3 = a3_full ? Cmp::Greater : compare_k(in.k, gain_loss_ratio(gl3));
    const bool band = c1 == Cmp::Equal || c3 == Cmp::Equal;
    if (c1 == Cmp::Less && c3 == Cmp::Less) {
        // Both rays unbounded: report the one whose prospect grows faster.
        const double up = gl1.gain - in.k * gl1.loss;
        const double down = gl3.gain - in.k * gl3.loss;
        if (up >= down) return Solution::plus_infinity("T3.4-8", kInfinity, band);
        return Solution::minus_infinity("T3.4-4", kInfinity, band);
    }
    if (c1 == Cmp::Less) return Solution::plus_infinity("T3.4-8", kInfinity, band);
    if (c3 == Cmp::Less) return Solution::minus_infinity("T3.4-4", kInfinity, band);
    if (c1 == Cmp::Equal && c3 == Cmp::Equal) {
        return Solution::interval(-kInfinity, kInfinity, "T3.4-7", 0.0, true);
    }
    if (c1 == Cmp::Equal) return Solution::interval(0.0, kInfinity, "T3.4-5", 0.0, true);
    if (c3 == Cmp::Equal) return Solution::interval(-kInfinity, 0.0, "T3.4-6", 0.0, true);
    return Solution::point(0.0, "T3.4-1", 0.0);
}

Solution solve(const Portfolio& p, const MarketModel& m, const CptPreference& pref,
               ContinuousReport* report) {
    require(p.y0 > 0.0, "solve: y0 must be > 0 (use solve_zero_initial for y0 = 0)");
    const auto in = power_case_inputs(p, m, pref);
    if (report) {
        report->inputs = in;
        report->ratios = k_ratios(in);
        report->candidates.reset();
        if (in.alpha < in.beta && in.long_side.loss > 0.0 &&
            (in.pA2 <= 0.0 || in.short_side.loss > 0.0)) {
            report->candidates = interior_candidates(in);
        }
    }
    return solve_power_case(in);
}

Solution solve_zero_initial(double x0, const MarketModel& m, const CptPreference& pref,
                            ContinuousReport* report) {
    const auto in = power_case_inputs({x0, 0.0}, m, pref);
    if (report) {
        report->inputs = in;
        report->ratios = {};
        if (auto r = gain_loss_ratio(in.long_side)) report->ratios.K1 = r->value;
        if (auto r = gain_loss_ratio(in.zero_short_side)) report->ratios.K2 = r->value;
        if (report->ratios.K1 && report->ratios.K2) {
            report->ratios.KM = std::max(*report->ratios.K1, *report->ratios.K2);
        }
        report->candidates.reset();
        if (in.alpha < in.beta && in.long_side.loss > 0.0 && in.zero_short_side.loss > 0.0) {
            report->candidates =
                Candidates{interior_candidate(in.alpha, in.beta, in.k,
                                              gain_loss_ratio(in.long_side)->value),
                           -interior_candidate(in.alpha, in.beta, in.k,
                                               gain_loss_ratio(in.zero_short_side)->value)};
        }
    }
    return solve_zero_initial_case(in);
}

}  // namespace cptx
