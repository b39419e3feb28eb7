#include "cptx/solution.hpp"

#include <cmath>
#include <utility>

namespace cptx {

std::string to_string(SolutionKind kind) {
    switch (kind) {
        case SolutionKind::FinitePoint: return "FinitePoint";
        case SolutionKind::Interval: return "Interval";
        case SolutionKind::PlusInfinity: return "PlusInfinity";
        case SolutionKind::MinusInfinity: return "MinusInfinity";
    }
    return "unknown";
}

Solution Solution::point(double theta, std::string case_id, double prospect, bool boundary) {
    Solution s;
    s.kind = SolutionKind::FinitePoint;
    s.theta = s.lo = s.hi = theta;
    s.case_id = std::move(case_id);
    s.prospect = prospect;
    s.boundary = boundary;
    return s;
}

Solution Solution::interval(double lo, double hi, std::string case_id, double prospect,
                            bool boundary) {
    Solution s;
    s.kind = SolutionKind::Interval;
    s.lo = lo;
    s.hi = hi;
    s.theta = std::isfinite(lo) ? lo : (std::isfinite(hi) ? hi : 0.0);
    s.case_id = std::move(case_id);
    s.prospect = prospect;
    s.boundary = boundary;
    return s;
}

Solution Solution::plus_infinity(std::string case_id, double prospect, bool boundary) {
    Solution s;
    s.kind = SolutionKind::PlusInfinity;
    s.theta = s.lo = s.hi = kInfinity;
    s.case_id = std::move(case_id);
    s.prospect = prospect;
    s.boundary = boundary;
    return s;
}

Solution Solution::minus_infinity(std::string case_id, double prospect, bool boundary) {
    Solution s;
    s.kind = SolutionKind::MinusInfinity;
    s.theta = s.lo = s.hi = -kInfinity;
    s.case_id = std::move(case_id);
    s.prospect = prospect;
    s.boundary = boundary;
    return s;
}

double Solution::representative() const noexcept {
    switch (kind) {
        case SolutionKind::FinitePoint: return theta;
        case SolutionKind::Interval:
            if (std::isfinite(lo)) return lo;
            if (std::isfinite(hi)) return hi;
            return 0.0;
        case SolutionKind::PlusInfinity: return kInfinity;
        case SolutionKind::MinusInfinity: return -kInfinity;
    }
    return 0.0;
}

}  // namespace cptx
