#include "cptx/normal.hpp"

#include <cmath>
#include <limits>

namespace cptx::normal {
namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// AS241 PPND16 tail branch; r = sqrt(-ln(min(p, 1 - p))) > 0.425 region.
double tail_branch(double r) {
    if (r <= 5.0) {
        r -= 1.6;
        double num = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                           2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
                         3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
                       4.63033784615654529590e0) * r + 1.42343711074968357734e0);
        double den = (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                           1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                         6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
                       2.05319162663775882187e0) * r + 1.0);
        return num / den;
    }
    r -= 5.0;
    double num = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                       1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                     2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
                   5.46378491116411436990e0) * r + 6.65790464350110377720e0);
    double den = (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                       1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                     1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
                   5.99832206555887937690e-1) * r + 1.0);
    return num / den;
}

// ln P(Z <= z) for z <= 0, using the Mills ratio continued fraction in the far tail.
double log_cdf_lower(double z) {
    if (z > -20.0) return std::log(cdf(z));
    const double x = -z;
    double frac = x;
    for (int n = 60; n >= 1; --n) frac = x + n / frac;
    return -0.5 * x * x - 0.91893853320467274178 - std::log(frac);
}

}  // namespace

double cdf(double z) { return 0.5 * std::erfc(-z * kInvSqrt2); }

double sf(double z) { return 0.5 * std::erfc(z * kInvSqrt2); }

double quantile(double p) {
    if (!(p >= 0.0 && p <= 1.0)) return std::numeric_limits<double>::quiet_NaN();
    if (p == 0.0) return -std::numeric_limits<double>::infinity();
    if (p == 1.0) return std::numeric_limits<double>::infinity();

    const double q = p - 0.5;
    if (std::fabs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        double num = (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                           6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
                         1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
                       1.3314166789178437745e2) * r + 3.3871328727963666080e0);
        double den = (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                           3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
                         5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
                       4.2313330701600911252e1) * r + 1.0);
        return q * num / den;
    }
    const double tail = q < 0.0 ? p : 1.0 - p;
    const double value = tail_branch(std::sqrt(-std::log(tail)));
    return q < 0.0 ? -value : value;
}

double lower_quantile_log(double tail_log) {
    // exp(-L) <= 0.075 puts AS241 in its tail branch, which only needs sqrt(L).
    if (tail_log < 2.6) return quantile(std::exp(-tail_log));
    double z = -tail_branch(std::sqrt(tail_log));
    if (tail_log < 100.0) return z;
    // Newton on ln P(Z <= z) = -L; the slope is the reciprocal Mills ratio.
    for (int i = 0; i < 4; ++i) {
        const double x = -z;
        double frac = x;
        for (int n = 60; n >= 1; --n) frac = x + n / frac;
        const double step = (log_cdf_lower(z) + tail_log) / frac;
        z -= step;
        if (std::fabs(step) <= 1e-15 * std::fabs(z)) break;
    }
    return z;
}

}  // namespace cptx::normal
