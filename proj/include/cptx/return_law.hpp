#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace cptx {

/// A point mass of a discrete law.
struct Atom {
    double value;
    double probability;
};

/// Law of the gross return G = 1 + R of the risky asset over one period.
///
/// Continuous members expose analytic quantiles in both tails, including
/// log-probability forms so that the quantile-domain quadrature can reach
/// probabilities below the smallest double. Discrete members expose sorted atoms.
class ReturnLaw {
public:
    /// ln(1 + R) ~ N(mu, sigma^2).
    struct LogNormal { double mu; double sigma; };
    /// R ~ N(mu, sigma^2).
    struct Normal { double mu; double sigma; };
    /// R = loc + scale * T_nu.
    struct StudentT { double nu; double loc; double scale; };
    /// 1 + R ~ U[lo, hi].
    struct Uniform { double lo; double hi; };
    /// 1 + R = u with probability 1 - p, d with probability p.
    struct Binomial { double u; double d; double p; };
    /// Equally weighted sample of gross returns, stored sorted.
    struct Empirical { std::vector<double> gross; };

    using Spec = std::variant<LogNormal, Normal, StudentT, Uniform, Binomial, Empirical>;

    static ReturnLaw lognormal(double mu, double sigma);
    static ReturnLaw normal(double mu, double sigma);
    static ReturnLaw student_t(double nu, double loc, double scale);
    static ReturnLaw uniform(double lo, double hi);
    static ReturnLaw binomial(double u, double d, double p);
    static ReturnLaw empirical(std::vector<double> gross_returns);

    /// Lognormal law of S(T)/S(0) for a geometric Brownian motion.
    static ReturnLaw gbm(double drift, double volatility, double horizon);

    const Spec& spec() const noexcept { return spec_; }
    std::string name() const;

    bool is_discrete() const noexcept;
    /// True when the support of G is bounded.
    bool is_bounded() const noexcept;

    /// P(G <= g).
    double cdf(double g) const;
    /// P(G < g); equals cdf for continuous laws.
    double cdf_below(double g) const;
    /// P(G > g).
    double sf(double g) const;
    /// P(G >= g).
    double sf_at_or_above(double g) const;

    /// Smallest g with P(G <= g) >= p.
    double quantile(double p) const;
    /// g with P(G > g) = q, accurate for small q.
    double upper_quantile(double q) const;
    /// quantile(exp(-tail_log)), valid far below the double range.
    double lower_quantile_log(double tail_log) const;
    /// upper_quantile(exp(-tail_log)), valid far below the double range.
    double upper_quantile_log(double tail_log) const;
    /// ln|g| at the same tail quantile; finite where the quantile overflows.
    double log_abs_tail_quantile(double tail_log, bool upper) const;

    /// Atoms in ascending order; empty for continuous laws.
    std::span<const Atom> atoms() const noexcept { return atoms_; }

    /// The common value when the law is a point mass.
    std::optional<double> constant_value() const;

private:
    explicit ReturnLaw(Spec spec);

    Spec spec_;
    std::vector<Atom> atoms_;
};

}  // namespace cptx
