#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "icslab/location.hpp"
#include "icslab/spread1d.hpp"

namespace icslab {

enum class Estimator { var, kmat, t2, mve, mcd };

std::string_view to_string(Estimator e);
/// Throws InvalidArgument for unknown names.
Estimator parse_estimator(std::string_view name);
/// The univariate estimator that stands in for e in projection pursuit.
SpreadMethod univariate_counterpart(Estimator e);
/// True for estimators that search over random subsets (mve, mcd).
bool is_randomized(Estimator e);

/// A location vector with a symmetric positive semidefinite shape matrix.
///
/// mve and mcd shapes are raw (no consistency factor); only the shape's
/// orientation and relative scale matter to ICS.
struct ScatterEstimate {
    Eigen::VectorXd location;
    Eigen::MatrixXd shape;
    Estimator method = Estimator::var;
    bool constrained = false;
    /// Ascending row indices of the qualifying half-sample (mve, mcd).
    std::optional<std::vector<std::size_t>> support;
};

/// Budget for the subset-search estimators.
struct SubsetSearch {
    int trials = 500;
    std::uint64_t seed = 0;
    /// Enumerate every start instead of sampling: all (p+1)-subsets for
    /// mve, all h-subsets for mcd. Only sensible for tiny n.
    bool exhaustive = false;
};

/// Covariance with divisor 1/n; fixed location mu gives S + (mu - xbar)(mu - xbar)^T.
ScatterEstimate cov(const Eigen::MatrixXd& X, const Location& loc);

/// Kurtosis-based matrix (1/n) sum d_i^2 (x_i - c)(x_i - c)^T with
/// d_i^2 the Mahalanobis distance under cov about the same center c.
/// Throws SingularMatrix when that covariance is singular.
ScatterEstimate kmat(const Eigen::MatrixXd& X, const Location& loc);

/// M-estimate of the multivariate t_2 distribution by fixed-point iteration.
ScatterEstimate t2_scatter(const Eigen::MatrixXd& X, const Location& loc,
                           const T2Options& options = {});

/// Approximate minimum volume ellipsoid covering h = ceil(n/2) points.
ScatterEstimate mve_scatter(const Eigen::MatrixXd& X, const Location& loc,
                            const SubsetSearch& search = {});

/// Approximate minimum covariance determinant over h = ceil(n/2) points.
ScatterEstimate mcd_scatter(const Eigen::MatrixXd& X, const Location& loc,
                            const SubsetSearch& search = {});

/// One concentration run of the mcd search.
struct Concentration {
    std::vector<std::size_t> support;  ///< final h-subset, ascending
    Eigen::VectorXd location;
    Eigen::MatrixXd shape;
    /// det(shape) of every h-subset visited, in order; non-increasing.
    std::vector<double> determinants;
    bool exact_fit = false;  ///< stopped on a singular h-subset (det 0)
};

/// Runs concentration steps from the mean/scatter of `start` (any size
/// >= 1 whose scatter is nonsingular): repeatedly keep the h points with
/// the smallest Mahalanobis distance and refit, until the determinant
/// gains less than 1e-12 relative, the subset repeats, or 100 steps pass.
/// Returns std::nullopt when the start scatter is singular.
std::optional<Concentration> concentrate(const Eigen::MatrixXd& X,
                                         const std::vector<std::size_t>& start,
                                         const Location& loc);

/// Dispatch by estimator name; `search` is ignored by the deterministic ones.
ScatterEstimate scatter(Estimator e, const Eigen::MatrixXd& X, const Location& loc,
                        const SubsetSearch& search = {});

}  // namespace icslab
