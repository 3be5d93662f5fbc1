#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "icslab/location.hpp"

namespace icslab {

/// Univariate reductions of the multivariate scatter estimators.
enum class SpreadMethod { var, kmat, t2, lshorth2, truncvar };

std::string_view to_string(SpreadMethod method);

/// A location paired with a variance-scale spread: under x -> c x + b the
/// spread scales by c^2 and the location maps to c loc + b.
struct SpreadEstimate {
    double location = 0.0;
    double spread = 0.0;
    SpreadMethod method = SpreadMethod::var;
    bool constrained = false;
    /// Original indices (ascending) of the qualifying half-sample; only
    /// filled by lshorth and trunc_var.
    std::vector<std::size_t> support;
};

/// Half-sample size ceil(n/2) shared by every half-sample estimator.
constexpr std::size_t half_size(std::size_t n) { return (n + 1) / 2; }

/// 1/n variance. Fixed location mu adds (mu - mean)^2.
SpreadEstimate var1d(std::span<const double> x, const Location1d& loc);

struct KurtosisSpread {
    SpreadEstimate estimate;  ///< spread = m4 / m2
    double variance = 0.0;    ///< m2
    double kurtosis = 0.0;    ///< m4 / m2^2 - 3
};

/// Fourth-moment spread m4/m2, the p = 1 reduction of the kurtosis-based
/// matrix. Moments are taken about the mean, or about mu when fixed.
/// Throws DegenerateData on zero variance.
KurtosisSpread kurt_spread(std::span<const double> x, const Location1d& loc = Location1d::free());

struct T2Options {
    int max_iterations = 500;
    double tolerance = 1e-10;
};

/// Scale (and, when free, location) M-estimate of the t distribution with
/// two degrees of freedom. Starts from (median, 1/n variance) and iterates
/// w_i = 3 / (2 + (x_i - mu)^2 / s2) to a fixed point.
SpreadEstimate t2_spread1d(std::span<const double> x, const Location1d& loc,
                           const T2Options& options = {});

/// Shortest half. Free: the shortest window of ceil(n/2) sorted points,
/// located at its midpoint. Fixed at mu: the half-length r is the
/// ceil(n/2)-th smallest |x_i - mu| and the length is 2r. The spread field
/// holds length^2; ties go to the window with the smallest left endpoint.
SpreadEstimate lshorth(std::span<const double> x, const Location1d& loc);

/// Truncated variance. Free: the minimum 1/h variance over windows of
/// h = ceil(n/2) sorted points, located at the window mean. Fixed at mu:
/// the variance about mu of the h points nearest mu (ties to the smaller
/// value).
SpreadEstimate trunc_var(std::span<const double> x, const Location1d& loc);

/// Dispatches to the estimator named by method (kmat -> kurt_spread).
SpreadEstimate spread1d(SpreadMethod method, std::span<const double> x, const Location1d& loc);

}  // namespace icslab
