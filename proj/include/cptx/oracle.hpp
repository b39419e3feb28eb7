#pragma once

#include "cptx/market.hpp"
#include "cptx/preference.hpp"
#include "cptx/quadrature.hpp"
#include "cptx/solution.hpp"

#include <string>

namespace cptx {

struct GridSpec {
    double lo = -1.0;
    double hi = 1.0;
    int n_points = 4001;
    /// Each round re-grids +-2 steps around the incumbent at 10x resolution.
    int refinement_rounds = 2;
};

struct GridResult {
    double argmax_theta = 0.0;
    double max_J = 0.0;
    double final_step = 0.0;
};

struct OracleReport {
    double argmax_theta = 0.0;
    double max_J = 0.0;
    double closed_form_theta = 0.0;
    double closed_form_J = 0.0;
    double final_step = 0.0;
    bool match = false;
    /// Offending theta and the size of the violation when there is a mismatch.
    double worst_theta = 0.0;
    double j_gap = 0.0;
    std::string details;
};

/// J(theta) = V(W(theta) - B) straight from the definition of the prospect.
double evaluate_J(const Portfolio& p, const MarketModel& m, const CptPreference& pref,
                  double theta, const quadrature::Options& opt = {});

/// Deterministic refined grid maximisation of J; ties go to the smaller theta.
GridResult grid_search(const Portfolio& p, const MarketModel& m, const CptPreference& pref,
                       const GridSpec& spec);

/// The grid each solver's answer is checked on.
GridSpec default_grid(const Solution& s, const Portfolio& p, const MarketModel& m,
                      const CptPreference& pref);

/// Tolerance on prospect values: tighter for two-state markets.
double default_tolerance(const MarketModel& m);

/// Values must agree within tol_J * max(1, |J(theta*)|). Unbounded kinds are
/// checked on the ladder theta = +-1, 10, 100, 1000 instead of the grid.
OracleReport verify(const Solution& s, const Portfolio& p, const MarketModel& m,
                    const CptPreference& pref, const GridSpec& spec, double tol_J);

OracleReport verify(const Solution& s, const Portfolio& p, const MarketModel& m,
                    const CptPreference& pref);

}  // namespace cptx
