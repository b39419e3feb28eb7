#pragma once

namespace cptx::normal {

/// Standard normal CDF.
double cdf(double z);

/// Standard normal survival function, accurate deep in the upper tail.
double sf(double z);

/// Inverse of the standard normal CDF (Wichura's AS241, ~1e-16 relative).
/// Returns -inf at p = 0 and +inf at p = 1.
double quantile(double p);

/// quantile(exp(-tail_log)) for tail_log >= ln 2, without forming exp(-tail_log).
/// Stays finite far below the smallest representable double.
double lower_quantile_log(double tail_log);

}  // namespace cptx::normal
