#pragma once

#include "cptx/market.hpp"
#include "cptx/oracle.hpp"
#include "cptx/preference.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cptx::cli {

enum class SolveMode { Continuous, Binomial, ZeroInitial };

std::string to_string(SolveMode mode);

/// One gridded parameter: count points from start to stop inclusive.
struct SweepAxis {
    std::string name;
    double start = 0.0;
    double stop = 0.0;
    int count = 0;

    std::vector<double> values() const;
};

/// Parses "name=start:stop:count".
SweepAxis parse_sweep_axis(const std::string& text);

struct RunConfig {
    // [market]
    double r = 0.0;
    double lambda = 0.0;
    std::string law = "lognormal";
    double mu = 0.0;
    double sigma = 0.1;
    double nu = 4.0;
    double loc = 0.0;
    double scale = 0.01;
    double lo = 0.9;
    double hi = 1.1;
    double u = 1.2;
    double d = 0.9;
    double p = 0.5;
    double drift = 0.1;
    double volatility = 0.2;
    double horizon = 1.0;
    std::vector<double> gross;

    // [preference]
    std::string utility = "power";
    double alpha = 0.88;
    double beta = 0.88;
    double k = 2.25;
    double eta_plus = 1.0;
    double eta_minus = 1.0;
    double zeta = 2.0;
    std::string weighting = "tk";
    double gamma = 0.61;
    double delta = 0.69;
    double delta_plus = 1.0;
    double delta_minus = 1.0;

    // [portfolio]
    double x0 = 1.0;
    double y0 = 1.0;

    // [solve]
    SolveMode mode = SolveMode::Continuous;
    bool oracle = false;
    int grid_points = 4001;
    int refinement_rounds = 2;
    std::optional<double> grid_lo;
    std::optional<double> grid_hi;

    // [sweep]
    std::optional<SweepAxis> sweep;

    // [output]
    std::string out;
    std::string format = "summary";
};

/// Parses INI text; unknown keys and malformed values are rejected.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// INI text of the effective configuration, defaults included.
std::string serialize(const RunConfig& cfg);

/// Every violated precondition, one message each; empty when valid.
std::vector<std::string> validation_errors(const RunConfig& cfg);
/// Throws InvalidArgument listing all violations.
void validate(const RunConfig& cfg);

/// Overrides one sweepable parameter (lambda, alpha, beta, eta, zeta).
void set_parameter(RunConfig& cfg, const std::string& name, double value);

MarketModel build_market(const RunConfig& cfg);
CptPreference build_preference(const RunConfig& cfg);
Portfolio build_portfolio(const RunConfig& cfg);
GridSpec build_grid(const RunConfig& cfg, const GridSpec& fallback);

}  // namespace cptx::cli
