#include "cptx/oracle.hpp"

#include "cptx/error.hpp"
#include "cptx/prospect.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>
#include <vector>

namespace cptx {
namespace {

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> xs(static_cast<std::size_t>(n));
    const double step = (hi - lo) / (n - 1);
    for (int i = 0; i < n; ++i) xs[static_cast<std::size_t>(i)] = lo + step * i;
    xs.back() = hi;
    return xs;
}

// The no-trade point is always sampled: J has a kink there.
std::vector<double> grid_with_origin(double lo, double hi, int n) {
    auto xs = linspace(lo, hi, n);
    if (lo < 0.0 && hi > 0.0) {
        const auto at = std::lower_bound(xs.begin(), xs.end(), 0.0);
        if (*at != 0.0) xs.insert(at, 0.0);
    }
    return xs;
}

// Relative band inside which two prospect values are the same double up to rounding.
constexpr double kRoundingBand = 1e-14;

std::vector<double> evaluate_all(const Portfolio& p, const MarketModel& m,
                                 const CptPreference& pref, const std::vector<double>& thetas) {
    std::vector<double> js(thetas.size());
    const std::size_t workers =
        std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 16);
    if (workers == 1 || thetas.size() < 64) {
        for (std::size_t i = 0; i < thetas.size(); ++i) js[i] = evaluate_J(p, m, pref, thetas[i]);
        return js;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < thetas.size(); i += workers) {
                    js[i] = evaluate_J(p, m, pref, thetas[i]);
                }
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return js;
}

std::size_t first_max(const std::vector<double>& js) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < js.size(); ++i) {
        if (js[i] > js[best]) best = i;
    }
    return best;
}

bool is_binomial_setting(const MarketModel& m, const CptPreference& pref) {
    return m.returns->is_discrete() && !pref.utility.is_power();
}

// Where the limit prospect is checked: 10^3/eta for exponential utility.
double limit_theta(const CptPreference& pref) {
    if (pref.utility.is_power()) return 1e3;
    return 1e3 / pref.utility.as_exponential().eta_plus;
}

void certify_ray(OracleReport& rep, const Portfolio& p, const MarketModel& m,
                 const CptPreference& pref, const Solution& s) {
    const double sign = s.kind == SolutionKind::PlusInfinity ? 1.0 : -1.0;
    const bool has_limit = std::isfinite(s.prospect);
    std::ostringstream why;
    double prev = evaluate_J(p, m, pref, 0.0);
    rep.match = true;
    for (int j = 0; j <= 3; ++j) {
        const double theta = sign * std::pow(10.0, j);
        const double jv = evaluate_J(p, m, pref, theta);
        const bool saturated = has_limit && std::abs(jv - s.prospect) <= 1e-9;
        if (!(jv > prev || (saturated && jv >= prev))) {
            rep.match = false;
            rep.worst_theta = theta;
            rep.j_gap = prev - jv;
            why << "J not increasing along the ray at theta=" << theta << "; ";
        }
        prev = jv;
        rep.argmax_theta = theta;
        rep.max_J = jv;
    }
    const double far = sign * limit_theta(pref);
    const double j_far = evaluate_J(p, m, pref, far);
    if (has_limit && std::abs(j_far - s.prospect) > 1e-9) {
        rep.match = false;
        rep.worst_theta = far;
        rep.j_gap = std::abs(j_far - s.prospect);
        why << "J at theta=" << far << " misses the limit by " << rep.j_gap;
    }
    rep.closed_form_theta = sign * kInfinity;
    rep.closed_form_J = s.prospect;
    rep.details = rep.match ? "ray certified" : why.str();
}

}  // namespace

double evaluate_J(const Portfolio& p, const MarketModel& m, const CptPreference& pref,
                  double theta, const quadrature::Options& opt) {
    require(std::isfinite(theta), "evaluate_J: theta must be finite");
    return prospect_value(pref, wealth_minus_reference(p, m, theta), opt).total;
}

GridResult grid_search(const Portfolio& p, const MarketModel& m, const CptPreference& pref,
                       const GridSpec& spec) {
    require(spec.lo < spec.hi, "grid: lo < hi required");
    require(spec.n_points >= 3, "grid: at least 3 points required");
    require(spec.refinement_rounds >= 0, "grid: refinement rounds must be >= 0");
    auto thetas = grid_with_origin(spec.lo, spec.hi, spec.n_points);
    auto js = evaluate_all(p, m, pref, thetas);
    std::size_t best = first_max(js);
    GridResult out{thetas[best], js[best], (spec.hi - spec.lo) / (spec.n_points - 1)};
    for (int round = 0; round < spec.refinement_rounds; ++round) {
        const double lo = std::max(spec.lo, out.argmax_theta - 2.0 * out.final_step);
        const double hi = std::min(spec.hi, out.argmax_theta + 2.0 * out.final_step);
        out.final_step /= 10.0;
        const int n = static_cast<int>(std::lround((hi - lo) / out.final_step)) + 1;
        if (n < 2) break;
        thetas = grid_with_origin(lo, hi, n);
        js = evaluate_all(p, m, pref, thetas);
        best = first_max(js);
        if (js[best] > out.max_J) {
            out.argmax_theta = thetas[best];
            out.max_J = js[best];
        }
    }
    return out;
}

double default_tolerance(const MarketModel& m) {
    return m.returns->is_discrete() ? 1e-6 : 1e-5;
}

GridSpec default_grid(const Solution& s, const Portfolio& p, const MarketModel& m,
                      const CptPreference& pref) {
    double center = s.is_finite() ? std::abs(s.representative()) : 0.0;
    GridSpec g;
    if (is_binomial_setting(m, pref)) {
        g.hi = 10.0 * (1.0 + center);
        g.lo = -g.hi;
    } else if (p.y0 > 0.0) {
        g.lo = -p.y0;
        g.hi = std::max(10.0, 10.0 * center);
    } else {
        g.hi = std::max(10.0, 10.0 * center);
        g.lo = -g.hi;
    }
    return g;
}

OracleReport verify(const Solution& s, const Portfolio& p, const MarketModel& m,
                    const CptPreference& pref, const GridSpec& spec, double tol_J) {
    OracleReport rep;
    if (!s.is_finite()) {
        certify_ray(rep, p, m, pref, s);
        return rep;
    }
    const auto grid = grid_search(p, m, pref, spec);
    rep.argmax_theta = grid.argmax_theta;
    rep.max_J = grid.max_J;
    rep.final_step = grid.final_step;
    std::ostringstream why;

    if (s.kind == SolutionKind::FinitePoint) {
        rep.closed_form_theta = s.theta;
        rep.closed_form_J = evaluate_J(p, m, pref, s.theta);
        const double gap = rep.max_J - rep.closed_form_J;
        const double distance = std::abs(rep.argmax_theta - s.theta);
        const double scale = std::max(1.0, std::abs(rep.closed_form_J));
        const bool value_ok = std::abs(gap) <= tol_J * scale;
        // Grid points whose J ties the maximum to rounding are all argmaxes.
        const bool place_ok = distance <= grid.final_step * (1.0 + 1e-9) ||
                              gap <= kRoundingBand * scale;
        rep.match = value_ok && place_ok;
        rep.worst_theta = rep.argmax_theta;
        rep.j_gap = gap;
        if (!value_ok) why << "grid maximum exceeds J(theta*) by " << gap << "; ";
        if (!place_ok) why << "grid argmax is " << distance << " from theta*";
        rep.details = rep.match ? "point confirmed" : why.str();
        return rep;
    }

    // Interval: J must be flat on the sampled part and no grid point may beat it.
    double lo = s.lo;
    double hi = s.hi;
    if (!std::isfinite(lo) && !std::isfinite(hi)) {
        lo = 0.0;
        hi = 10.0;
    } else if (!std::isfinite(lo)) {
        lo = hi - 10.0;
    } else {
        hi = std::min(hi, lo + 10.0);
    }
    rep.closed_form_theta = s.representative();
    rep.closed_form_J = evaluate_J(p, m, pref, rep.closed_form_theta);
    rep.match = true;
    for (int i = 0; i <= 10; ++i) {
        const double theta = lo + (hi - lo) * i / 10.0;
        const double gap = std::abs(evaluate_J(p, m, pref, theta) - rep.closed_form_J);
        if (gap > tol_J * std::max(1.0, std::abs(rep.closed_form_J)) && gap > rep.j_gap) {
            rep.match = false;
            rep.worst_theta = theta;
            rep.j_gap = gap;
        }
    }
    if (!rep.match) why << "J varies on the optimal interval by " << rep.j_gap << "; ";
    const double excess = rep.max_J - rep.closed_form_J;
    if (excess > tol_J * std::max(1.0, std::abs(rep.closed_form_J))) {
        rep.match = false;
        rep.worst_theta = rep.argmax_theta;
        rep.j_gap = excess;
        why << "grid maximum exceeds the interval value by " << excess;
    }
    rep.details = rep.match ? "interval confirmed" : why.str();
    return rep;
}

OracleReport verify(const Solution& s, const Portfolio& p, const MarketModel& m,
                    const CptPreference& pref) {
    return verify(s, p, m, pref, default_grid(s, p, m, pref), default_tolerance(m));
}

}  // namespace cptx
