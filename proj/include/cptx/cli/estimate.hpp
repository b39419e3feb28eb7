#pragma once

#include <chrono>
#include <iosfwd>
#include <vector>

namespace cptx::cli {

struct PriceObservation {
    std::chrono::sys_days date;
    double close;
};

/// Reads a CSV with header "date,close" and ISO-8601 dates.
std::vector<PriceObservation> read_prices(std::istream& in);

/// Keeps the last observation of each ISO-8601 week (Monday to Sunday).
std::vector<PriceObservation> weekly_last(const std::vector<PriceObservation>& daily);

struct LognormalEstimate {
    double mu;
    double sigma;
    int n_obs;  ///< Number of log returns.
};

/// Sample mean and standard deviation (n - 1) of ln(P_t / P_{t-1}).
LognormalEstimate estimate_lognormal(const std::vector<PriceObservation>& prices);

/// (1 + annual)^(1/periods) - 1.
double annualized_rate_to_period(double annual_rate, double periods_per_year);

}  // namespace cptx::cli
