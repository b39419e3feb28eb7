#pragma once

#include "cptx/preference.hpp"
#include "cptx/quadrature.hpp"
#include "cptx/return_law.hpp"
#include "cptx/signed_distribution.hpp"

namespace cptx {

/// Gains part, losses part and their difference. Losses already include the
/// loss-aversion factor of the utility.
struct ProspectBreakdown {
    double v_plus = 0.0;
    double v_minus = 0.0;
    double total = 0.0;
    bool plus_finite = true;
    bool minus_finite = true;
    /// Quadrature error estimates; zero for discrete laws.
    double plus_error = 0.0;
    double minus_error = 0.0;
};

/// Evaluates the prospect without throwing; a side whose integral fails to
/// converge is reported with its finite flag cleared.
ProspectBreakdown evaluate_prospect(const CptPreference& pref, const SignedDistribution& d,
                                    const quadrature::Options& opt = {});

/// As evaluate_prospect, but throws DivergenceError naming the failed side.
ProspectBreakdown prospect_value(const CptPreference& pref, const SignedDistribution& d,
                                 const quadrature::Options& opt = {});

/// Gains-side value of d alone: the integral of u+ against w+ of the survival.
double gains_value(const CptPreference& pref, const SignedDistribution& d,
                   const quadrature::Options& opt, double* error = nullptr);

enum class Finiteness { Finite, Unverified };

/// Sufficient conditions under which every strategy in a market with this
/// return law has a finite prospect.
Finiteness check_finiteness(const CptPreference& pref, const ReturnLaw& law);

}  // namespace cptx
