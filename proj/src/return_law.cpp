#include "cptx/return_law.hpp"

#include "cptx/error.hpp"
#include "cptx/normal.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace cptx {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Below exp(-kLogFloor) the plain quantile functions lose the argument.
constexpr double kLogFloor = 700.0;

template <class... Ts>
struct overloaded : Ts... { using Ts::operator()...; };
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double t_cdf(double nu, double t) {
    boost::math::students_t_distribution<double> dist(nu);
    return boost::math::cdf(dist, t);
}

double t_sf(double nu, double t) {
    boost::math::students_t_distribution<double> dist(nu);
    return boost::math::cdf(boost::math::complement(dist, t));
}

double t_quantile(double nu, double p) {
    if (p <= 0.0) return -kInf;
    if (p >= 1.0) return kInf;
    boost::math::students_t_distribution<double> dist(nu);
    return boost::math::quantile(dist, p);
}

// Upper quantile of T_nu at probability exp(-tail_log); leading-order power
// tail S(t) ~ c nu^((nu-1)/2) t^-nu once the probability leaves double range.
// ln of the upper t quantile in the deep tail, where P(T > t) ~ c nu^((nu-1)/2) t^-nu.
double t_log_upper_quantile_deep(double nu, double tail_log) {
    const double log_c = boost::math::lgamma((nu + 1.0) / 2.0) - boost::math::lgamma(nu / 2.0) -
                         0.5 * std::log(nu * std::numbers::pi);
    return (log_c + 0.5 * (nu - 1.0) * std::log(nu) + tail_log) / nu;
}

double t_upper_quantile_log(double nu, double tail_log) {
    if (tail_log < kLogFloor) return -t_quantile(nu, std::exp(-tail_log));
    return std::exp(t_log_upper_quantile_deep(nu, tail_log));
}

// Smallest atom index with cumulative probability >= p.
double discrete_quantile(std::span<const Atom> atoms, double p) {
    double cumulative = 0.0;
    for (const Atom& a : atoms) {
        cumulative += a.probability;
        if (cumulative >= p * (1.0 - 1e-15)) return a.value;
    }
    return atoms.back().value;
}

}  // namespace

ReturnLaw::ReturnLaw(Spec spec) : spec_(std::move(spec)) {
    std::visit(overloaded{
                   [this](const Binomial& b) {
                       atoms_ = {{b.d, b.p}, {b.u, 1.0 - b.p}};
                   },
                   [this](const Empirical& e) {
                       const double weight = 1.0 / static_cast<double>(e.gross.size());
                       for (double g : e.gross) {
                           if (!atoms_.empty() && atoms_.back().value == g) {
                               atoms_.back().probability += weight;
                           } else {
                               atoms_.push_back({g, weight});
                           }
                       }
                   },
                   [](const auto&) {},
               },
               spec_);
}

ReturnLaw ReturnLaw::lognormal(double mu, double sigma) {
    require(std::isfinite(mu), "lognormal: mu must be finite");
    require(sigma > 0.0 && std::isfinite(sigma), "lognormal: sigma must be > 0");
    return ReturnLaw(LogNormal{mu, sigma});
}

ReturnLaw ReturnLaw::normal(double mu, double sigma) {
    require(std::isfinite(mu), "normal: mu must be finite");
    require(sigma > 0.0 && std::isfinite(sigma), "normal: sigma must be > 0");
    return ReturnLaw(Normal{mu, sigma});
}

ReturnLaw ReturnLaw::student_t(double nu, double loc, double scale) {
    require(nu > 0.0 && std::isfinite(nu), "student_t: nu must be > 0");
    require(std::isfinite(loc), "student_t: loc must be finite");
    require(scale > 0.0 && std::isfinite(scale), "student_t: scale must be > 0");
    return ReturnLaw(StudentT{nu, loc, scale});
}

ReturnLaw ReturnLaw::uniform(double lo, double hi) {
    require(std::isfinite(lo) && std::isfinite(hi) && lo < hi, "uniform: need lo < hi");
    return ReturnLaw(Uniform{lo, hi});
}

ReturnLaw ReturnLaw::binomial(double u, double d, double p) {
    require(d > 0.0 && u > d && std::isfinite(u), "binomial: need u > d > 0");
    require(p > 0.0 && p < 1.0, "binomial: need 0 < p < 1");
    return ReturnLaw(Binomial{u, d, p});
}

ReturnLaw ReturnLaw::empirical(std::vector<double> gross_returns) {
    require(!gross_returns.empty(), "empirical: sample is empty");
    for (double g : gross_returns) require(std::isfinite(g), "empirical: non-finite sample");
    std::sort(gross_returns.begin(), gross_returns.end());
    return ReturnLaw(Empirical{std::move(gross_returns)});
}

ReturnLaw ReturnLaw::gbm(double drift, double volatility, double horizon) {
    require(horizon > 0.0, "gbm: horizon must be > 0");
    require(volatility > 0.0, "gbm: volatility must be > 0");
    return lognormal((drift - 0.5 * volatility * volatility) * horizon,
                     volatility * std::sqrt(horizon));
}

std::string ReturnLaw::name() const {
    return std::visit(overloaded{
                          [](const LogNormal&) { return std::string("lognormal"); },
                          [](const Normal&) { return std::string("normal"); },
                          [](const StudentT&) { return std::string("student_t"); },
                          [](const Uniform&) { return std::string("uniform"); },
                          [](const Binomial&) { return std::string("binomial"); },
                          [](const Empirical&) { return std::string("empirical"); },
                      },
                      spec_);
}

bool ReturnLaw::is_discrete() const noexcept { return !atoms_.empty(); }

bool ReturnLaw::is_bounded() const noexcept {
    return is_discrete() || std::holds_alternative<Uniform>(spec_);
}

double ReturnLaw::cdf(double g) const {
    return std::visit(
        overloaded{
            [g](const LogNormal& l) {
                return g <= 0.0 ? 0.0 : normal::cdf((std::log(g) - l.mu) / l.sigma);
            },
            [g](const Normal& n) { return normal::cdf((g - 1.0 - n.mu) / n.sigma); },
            [g](const StudentT& t) { return t_cdf(t.nu, (g - 1.0 - t.loc) / t.scale); },
            [g](const Uniform& u) { return std::clamp((g - u.lo) / (u.hi - u.lo), 0.0, 1.0); },
            [this, g](const auto&) {
                double total = 0.0;
                for (const Atom& a : atoms_) {
                    if (a.value <= g) total += a.probability;
                }
                return std::min(total, 1.0);
            },
        },
        spec_);
}

double ReturnLaw::cdf_below(double g) const {
    if (!is_discrete()) return cdf(g);
    double total = 0.0;
    for (const Atom& a : atoms_) {
        if (a.value < g) total += a.probability;
    }
    return std::min(total, 1.0);
}

double ReturnLaw::sf(double g) const {
    return std::visit(
        overloaded{
            [g](const LogNormal& l) {
                return g <= 0.0 ? 1.0 : normal::sf((std::log(g) - l.mu) / l.sigma);
            },
            [g](const Normal& n) { return normal::sf((g - 1.0 - n.mu) / n.sigma); },
            [g](const StudentT& t) { return t_sf(t.nu, (g - 1.0 - t.loc) / t.scale); },
            [g](const Uniform& u) { return std::clamp((u.hi - g) / (u.hi - u.lo), 0.0, 1.0); },
            [this, g](const auto&) {
                double total = 0.0;
                for (const Atom& a : atoms_) {
                    if (a.value > g) total += a.probability;
                }
                return std::min(total, 1.0);
            },
        },
        spec_);
}

double ReturnLaw::sf_at_or_above(double g) const {
    if (!is_discrete()) return sf(g);
    double total = 0.0;
    for (const Atom& a : atoms_) {
        if (a.value >= g) total += a.probability;
    }
    return std::min(total, 1.0);
}

double ReturnLaw::quantile(double p) const {
    require(p >= 0.0 && p <= 1.0, "quantile: p outside [0, 1]");
    return std::visit(
        overloaded{
            [p](const LogNormal& l) { return std::exp(l.mu + l.sigma * normal::quantile(p)); },
            [p](const Normal& n) { return 1.0 + n.mu + n.sigma * normal::quantile(p); },
            [p](const StudentT& t) { return 1.0 + t.loc + t.scale * t_quantile(t.nu, p); },
            [p](const Uniform& u) { return u.lo + p * (u.hi - u.lo); },
            [this, p](const auto&) { return discrete_quantile(atoms_, p); },
        },
        spec_);
}

double ReturnLaw::upper_quantile(double q) const {
    require(q >= 0.0 && q <= 1.0, "upper_quantile: q outside [0, 1]");
    return std::visit(
        overloaded{
            [q](const LogNormal& l) { return std::exp(l.mu - l.sigma * normal::quantile(q)); },
            [q](const Normal& n) { return 1.0 + n.mu - n.sigma * normal::quantile(q); },
            [q](const StudentT& t) { return 1.0 + t.loc - t.scale * t_quantile(t.nu, q); },
            [q](const Uniform& u) { return u.hi - q * (u.hi - u.lo); },
            [this, q](const auto&) { return discrete_quantile(atoms_, 1.0 - q); },
        },
        spec_);
}

double ReturnLaw::lower_quantile_log(double tail_log) const {
    require(tail_log >= 0.0, "lower_quantile_log: negative log-probability");
    return std::visit(
        overloaded{
            [tail_log](const LogNormal& l) {
                return std::exp(l.mu + l.sigma * normal::lower_quantile_log(tail_log));
            },
            [tail_log](const Normal& n) {
                return 1.0 + n.mu + n.sigma * normal::lower_quantile_log(tail_log);
            },
            [tail_log](const StudentT& t) {
                return 1.0 + t.loc - t.scale * t_upper_quantile_log(t.nu, tail_log);
            },
            [this, tail_log](const auto&) { return quantile(std::exp(-tail_log)); },
        },
        spec_);
}

double ReturnLaw::log_abs_tail_quantile(double tail_log, bool upper) const {
    const double g = upper ? upper_quantile_log(tail_log) : lower_quantile_log(tail_log);
    if (std::isfinite(g)) return std::log(std::fabs(g));
    if (const auto* t = std::get_if<StudentT>(&spec_)) {
        return std::log(t->scale) + t_log_upper_quantile_deep(t->nu, tail_log);
    }
    return g == 0.0 ? -std::numeric_limits<double>::infinity()
                    : std::numeric_limits<double>::infinity();
}

double ReturnLaw::upper_quantile_log(double tail_log) const {
    require(tail_log >= 0.0, "upper_quantile_log: negative log-probability");
    return std::visit(
        overloaded{
            [tail_log](const LogNormal& l) {
                return std::exp(l.mu - l.sigma * normal::lower_quantile_log(tail_log));
            },
            [tail_log](const Normal& n) {
                return 1.0 + n.mu - n.sigma * normal::lower_quantile_log(tail_log);
            },
            [tail_log](const StudentT& t) {
                return 1.0 + t.loc + t.scale * t_upper_quantile_log(t.nu, tail_log);
            },
            [this, tail_log](const auto&) { return upper_quantile(std::exp(-tail_log)); },
        },
        spec_);
}

std::optional<double> ReturnLaw::constant_value() const {
    if (atoms_.size() == 1) return atoms_.front().value;
    return std::nullopt;
}

}  // namespace cptx
