#pragma once

#include <variant>

namespace cptx {

enum class Side { Gain, Loss };

/// u+(x) = x^alpha, u-(x) = k x^beta.
struct PowerUtility {
    double alpha = 0.88;
    double beta = 0.88;
    double k = 2.25;
};

/// u+(x) = 1 - exp(-eta_plus x), u-(x) = zeta (1 - exp(-eta_minus x)).
struct ExponentialUtility {
    double eta_plus = 1.0;
    double eta_minus = 1.0;
    double zeta = 2.0;
};

class UtilityPair {
public:
    using Form = std::variant<PowerUtility, ExponentialUtility>;

    static UtilityPair power(double alpha, double beta, double k);
    static UtilityPair exponential(double eta_plus, double eta_minus, double zeta);

    const Form& form() const noexcept { return form_; }
    bool is_power() const noexcept { return std::holds_alternative<PowerUtility>(form_); }
    const PowerUtility& as_power() const;
    const ExponentialUtility& as_exponential() const;

    /// u+(x) or u-(x) for x >= 0.
    double eval(Side side, double x) const;

private:
    explicit UtilityPair(Form form) : form_(form) {}
    Form form_;
};

/// Tversky-Kahneman weighting, gamma on gains and delta on losses.
struct TverskyKahneman {
    double gamma = 0.61;
    double delta = 0.69;
};

/// w(x) = exp(-delta (-ln x)^gamma), with separate delta on each side.
struct Prelec {
    double gamma = 0.5;
    double delta_plus = 1.0;
    double delta_minus = 1.0;
};

struct IdentityWeighting {};

class WeightingPair {
public:
    using Form = std::variant<TverskyKahneman, Prelec, IdentityWeighting>;

    static WeightingPair tversky_kahneman(double gamma, double delta);
    static WeightingPair prelec(double gamma, double delta_plus, double delta_minus);
    static WeightingPair identity();

    const Form& form() const noexcept { return form_; }

    /// w(q) with q in [0, 1].
    double weight(Side side, double q) const;
    /// w(q) given q and its complement 1 - q computed separately.
    double weight(Side side, double q, double q_complement) const;

    /// w'(q) for q in (0, 1).
    double derivative(Side side, double q) const;
    double derivative(Side side, double q, double q_complement) const;

    /// w'(q) * q at q = exp(-tail_log); finite far below the double range.
    double derivative_times_q_log(Side side, double tail_log) const;

    /// Power used to flatten the endpoint singularity of w' near q = 1.
    double endpoint_power(Side side) const;

private:
    explicit WeightingPair(Form form) : form_(form) {}
    Form form_;
};

struct CptPreference {
    UtilityPair utility = UtilityPair::power(0.88, 0.88, 2.25);
    WeightingPair weighting = WeightingPair::tversky_kahneman(0.61, 0.69);
};

}  // namespace cptx
