#pragma once

#include "cptx/return_law.hpp"

#include <memory>
#include <span>
#include <vector>

namespace cptx {

/// Law of D = scale * G + shift, where G is a gross return with a ReturnLaw.
///
/// Quantiles are mapped through the affine transform exactly, so the tails of
/// D are as accurate as those of G. A zero scale gives the point mass at shift.
class SignedDistribution {
public:
    static SignedDistribution constant(double value);
    static SignedDistribution affine(std::shared_ptr<const ReturnLaw> law, double scale,
                                     double shift);

    double scale() const noexcept { return scale_; }
    double shift() const noexcept { return shift_; }
    /// Null for point masses.
    const ReturnLaw* law() const noexcept { return law_.get(); }

    bool is_discrete() const noexcept;
    bool is_bounded() const noexcept;

    /// P(D <= x).
    double cdf(double x) const;
    /// P(D < x).
    double cdf_below(double x) const;
    /// P(D > x).
    double sf(double x) const;
    /// P(D >= x).
    double sf_at_or_above(double x) const;

    /// Smallest x with P(D <= x) >= p.
    double quantile(double p) const;
    /// x with P(D > x) = q.
    double upper_quantile(double q) const;
    /// quantile(exp(-tail_log)).
    double lower_quantile_log(double tail_log) const;
    /// upper_quantile(exp(-tail_log)).
    double upper_quantile_log(double tail_log) const;
    /// ln|x| for upper_quantile_log (upper) or lower_quantile_log, without overflow.
    double log_abs_tail_value(double tail_log, bool upper) const;

    /// x with P(D > x) = q, given q and 1 - q computed separately.
    double value_at_survival(double q, double q_complement) const;

    /// Atoms of a discrete law, ascending.
    std::vector<Atom> atoms() const;

    SignedDistribution negated() const { return scaled(-1.0); }
    SignedDistribution scaled(double factor) const;
    SignedDistribution shifted(double offset) const;

private:
    SignedDistribution(std::shared_ptr<const ReturnLaw> law, double scale, double shift)
        : law_(std::move(law)), scale_(scale), shift_(shift) {}

    bool is_point() const noexcept { return !law_ || scale_ == 0.0; }

    std::shared_ptr<const ReturnLaw> law_;
    double scale_;
    double shift_;
};

}  // namespace cptx
