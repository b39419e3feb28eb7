#include "cptx/signed_distribution.hpp"

#include "cptx/error.hpp"

#include <algorithm>
#include <cmath>

namespace cptx {

SignedDistribution SignedDistribution::constant(double value) {
    require(std::isfinite(value), "constant distribution: value must be finite");
    return SignedDistribution(nullptr, 0.0, value);
}

SignedDistribution SignedDistribution::affine(std::shared_ptr<const ReturnLaw> law, double scale,
                                              double shift) {
    require(law != nullptr, "affine distribution: law is null");
    require(std::isfinite(scale) && std::isfinite(shift), "affine distribution: non-finite map");
    return SignedDistribution(std::move(law), scale, shift);
}

bool SignedDistribution::is_discrete() const noexcept { return is_point() || law_->is_discrete(); }

bool SignedDistribution::is_bounded() const noexcept { return is_point() || law_->is_bounded(); }

double SignedDistribution::cdf(double x) const {
    if (is_point()) return x >= shift_ ? 1.0 : 0.0;
    const double g = (x - shift_) / scale_;
    return scale_ > 0.0 ? law_->cdf(g) : law_->sf_at_or_above(g);
}

double SignedDistribution::cdf_below(double x) const {
    if (is_point()) return x > shift_ ? 1.0 : 0.0;
    const double g = (x - shift_) / scale_;
    return scale_ > 0.0 ? law_->cdf_below(g) : law_->sf(g);
}

double SignedDistribution::sf(double x) const {
    if (is_point()) return x < shift_ ? 1.0 : 0.0;
    const double g = (x - shift_) / scale_;
    return scale_ > 0.0 ? law_->sf(g) : law_->cdf_below(g);
}

double SignedDistribution::sf_at_or_above(double x) const {
    if (is_point()) return x <= shift_ ? 1.0 : 0.0;
    const double g = (x - shift_) / scale_;
    return scale_ > 0.0 ? law_->sf_at_or_above(g) : law_->cdf(g);
}

double SignedDistribution::quantile(double p) const {
    require(p >= 0.0 && p <= 1.0, "quantile: p outside [0, 1]");
    if (is_point()) return shift_;
    if (is_discrete()) {
        const auto a = atoms();
        double cumulative = 0.0;
        for (const Atom& atom : a) {
            cumulative += atom.probability;
            if (cumulative >= p * (1.0 - 1e-15)) return atom.value;
        }
        return a.back().value;
    }
    const double g = scale_ > 0.0 ? law_->quantile(p) : law_->upper_quantile(p);
    return scale_ * g + shift_;
}

double SignedDistribution::upper_quantile(double q) const {
    require(q >= 0.0 && q <= 1.0, "upper_quantile: q outside [0, 1]");
    if (is_point()) return shift_;
    if (is_discrete()) return quantile(1.0 - q);
    const double g = scale_ > 0.0 ? law_->upper_quantile(q) : law_->quantile(q);
    return scale_ * g + shift_;
}

double SignedDistribution::lower_quantile_log(double tail_log) const {
    if (is_point()) return shift_;
    const double g =
        scale_ > 0.0 ? law_->lower_quantile_log(tail_log) : law_->upper_quantile_log(tail_log);
    return scale_ * g + shift_;
}

double SignedDistribution::upper_quantile_log(double tail_log) const {
    if (is_point()) return shift_;
    const double g =
        scale_ > 0.0 ? law_->upper_quantile_log(tail_log) : law_->lower_quantile_log(tail_log);
    return scale_ * g + shift_;
}

double SignedDistribution::log_abs_tail_value(double tail_log, bool upper) const {
    const double x = upper ? upper_quantile_log(tail_log) : lower_quantile_log(tail_log);
    if (std::isfinite(x)) return std::log(std::fabs(x));
    // The shift is negligible once the scaled quantile overflows.
    return std::log(std::fabs(scale_)) + law_->log_abs_tail_quantile(tail_log, upper == (scale_ > 0.0));
}

double SignedDistribution::value_at_survival(double q, double q_complement) const {
    return q <= q_complement ? upper_quantile(q) : quantile(q_complement);
}

std::vector<Atom> SignedDistribution::atoms() const {
    if (is_point()) return {{shift_, 1.0}};
    std::vector<Atom> out;
    for (const Atom& a : law_->atoms()) out.push_back({scale_ * a.value + shift_, a.probability});
    if (scale_ < 0.0) std::reverse(out.begin(), out.end());
    return out;
}

SignedDistribution SignedDistribution::scaled(double factor) const {
    require(std::isfinite(factor), "scaled: factor must be finite");
    return SignedDistribution(law_, scale_ * factor, shift_ * factor);
}

SignedDistribution SignedDistribution::shifted(double offset) const {
    require(std::isfinite(offset), "shifted: offset must be finite");
    return SignedDistribution(law_, scale_, shift_ + offset);
}

}  // namespace cptx
