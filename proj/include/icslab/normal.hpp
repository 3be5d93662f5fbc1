#pragma once

namespace icslab {

/// Standard normal density.
double normal_pdf(double x);

/// Standard normal distribution function, via std::erfc.
double normal_cdf(double x);

/// Standard normal quantile (Wichura's AS 241 rational approximation,
/// relative accuracy about 1e-16). p must lie in (0, 1); the endpoints
/// return -inf / +inf.
double normal_quantile(double p);

}  // namespace icslab
