#pragma once

#include <limits>
#include <string>

namespace cptx {

enum class SolutionKind { FinitePoint, Interval, PlusInfinity, MinusInfinity };

std::string to_string(SolutionKind kind);

/// Optimal strategy with the label of the case that produced it.
struct Solution {
    SolutionKind kind = SolutionKind::FinitePoint;
    double theta = 0.0;  ///< FinitePoint payload.
    double lo = 0.0;     ///< Interval bounds; either may be infinite.
    double hi = 0.0;
    std::string case_id;
    /// Optimal prospect; for infinite kinds the supremum or limit value.
    double prospect = 0.0;
    /// Set when a classification fell inside a tolerance band.
    bool boundary = false;

    static Solution point(double theta, std::string case_id, double prospect,
                          bool boundary = false);
    static Solution interval(double lo, double hi, std::string case_id, double prospect,
                             bool boundary = false);
    static Solution plus_infinity(std::string case_id, double prospect, bool boundary = false);
    static Solution minus_infinity(std::string case_id, double prospect, bool boundary = false);

    bool is_finite() const noexcept {
        return kind == SolutionKind::FinitePoint || kind == SolutionKind::Interval;
    }

    /// A finite optimal theta: the point, or the finite end of an interval
    /// (lo first). Infinite kinds return +-inf.
    double representative() const noexcept;
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

}  // namespace cptx
