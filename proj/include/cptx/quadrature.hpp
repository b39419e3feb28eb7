#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <vector>

namespace cptx::quadrature {

struct Result {
    double value = 0.0;
    double error = 0.0;
    int intervals = 0;
    bool converged = false;
};

struct Options {
    double abs_tol = 1e-10;
    double rel_tol = 1e-9;
    int max_intervals = 2000;
};

namespace detail {

// 15-point Kronrod abscissae on [0, 1] half-range; odd indices are the 7-point Gauss nodes.
inline constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrod = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGauss = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& other) const { return error < other.error; }
};

template <class F>
Panel gauss_kronrod(F& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kronrod = fc * kKronrod[7];
    double gauss = fc * kGauss[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kNodes[j];
        const double sum = f(center - dx) + f(center + dx);
        kronrod += kKronrod[j] * sum;
        if (j % 2 == 1) gauss += kGauss[j / 2] * sum;
    }
    return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace detail

/// Globally adaptive 15-point Gauss-Kronrod integration of f over [a, b].
/// The panel with the largest error estimate is bisected until the summed
/// error meets max(abs_tol, rel_tol * |I|) or the panel budget runs out.
template <class F>
Result integrate(F f, double a, double b, const Options& opt = {}) {
    std::priority_queue<detail::Panel> panels;
    const auto first = detail::gauss_kronrod(f, a, b);
    panels.push(first);
    double value = first.value;
    double error = first.error;
    int count = 1;
    auto done = [&] {
        return std::isfinite(value) && error <= std::max(opt.abs_tol, opt.rel_tol * std::abs(value));
    };
    while (!done() && count < opt.max_intervals && std::isfinite(value)) {
        const auto worst = panels.top();
        panels.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            panels.push(worst);
            break;
        }
        const auto left = detail::gauss_kronrod(f, worst.a, mid);
        const auto right = detail::gauss_kronrod(f, mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
        ++count;
    }
    // Recompute the totals from the panels to shed accumulated rounding.
    double total = 0.0;
    double total_error = 0.0;
    while (!panels.empty()) {
        total += panels.top().value;
        total_error += panels.top().error;
        panels.pop();
    }
    Result out{total, total_error, count, false};
    out.converged = std::isfinite(total) &&
                    total_error <= std::max(opt.abs_tol, opt.rel_tol * std::abs(total));
    return out;
}

}  // namespace cptx::quadrature
