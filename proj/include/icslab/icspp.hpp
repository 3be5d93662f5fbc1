#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "icslab/scatter.hpp"

namespace icslab {

enum class LocationPolicy { free, common_mean };
enum class Mode { ics, pp };

std::string_view to_string(LocationPolicy policy);  ///< "free" / "mean"
std::string_view to_string(Mode mode);              ///< "ICS" / "PP"

/// A named ICS or PP method: two estimators plus a location policy.
/// Rendered as "ICS:scat1:scat2" or "PP:scat1:scat2", with ":mean"
/// appended under the common-mean policy.
struct MethodSpec {
    Estimator scat1 = Estimator::var;
    Estimator scat2 = Estimator::var;
    LocationPolicy policy = LocationPolicy::free;
    Mode mode = Mode::ics;

    std::string name() const;
    /// Inverse of name(); throws InvalidArgument on malformed input.
    static MethodSpec parse(std::string_view text);

    bool operator==(const MethodSpec&) const = default;
};

/// Settings shared by the randomized estimators.
struct MethodOptions {
    int trials = 500;
    std::uint64_t seed = 0;
};

/// Per-scatter seeds used by ics_scatters: derive_seed(seed, "scat1"/"scat2").
std::pair<std::uint64_t, std::uint64_t> scatter_seeds(std::uint64_t seed);

struct IcsResult {
    Eigen::VectorXd eigenvalues;   ///< descending
    Eigen::MatrixXd eigenvectors;  ///< unit columns matching eigenvalues
    Eigen::VectorXd kappa_min_direction;
    ScatterEstimate S1;
    ScatterEstimate S2;
};

/// a^T S1 a / a^T S2 a. Throws InvalidArgument for a = 0 and
/// SingularMatrix for a vanishing denominator.
double kappa_ics(const Eigen::VectorXd& a, const Eigen::MatrixXd& S1, const Eigen::MatrixXd& S2);

/// Generalized eigenproblem S1 v = lambda S2 v through the Cholesky factor
/// of S2. Eigenvectors are unit length with their largest-magnitude
/// component positive. Throws SingularMatrix unless both shapes are SPD.
IcsResult ics_decompose(const ScatterEstimate& S1, const ScatterEstimate& S2);

/// Both scatters of an ICS method; under common_mean both are centred at
/// the sample mean.
std::pair<ScatterEstimate, ScatterEstimate> ics_scatters(const Eigen::MatrixXd& X, const MethodSpec& spec,
                                                         const MethodOptions& options = {});

/// s1(Xa) / s2(Xa) with the univariate counterparts of spec's estimators.
/// a is normalized first; under common_mean both spreads are centred at
/// a^T xbar. Throws DegenerateData when s2 vanishes.
double kappa_pp(const Eigen::MatrixXd& X, const Eigen::VectorXd& a, const MethodSpec& spec);

/// kappa sampled at angles phi in [-pi/2, pi/2] for p = 2.
struct CriterionCurve {
    std::vector<double> angles;  ///< radians, uniform grid including both ends
    std::vector<double> values;
    double argmin = 0.0;
    double argmax = 0.0;
    MethodSpec method;
};

/// Evaluates the criterion of spec on a uniform angle grid (default 721
/// points, 0.25 degree steps). ICS scatters are computed once; PP spreads
/// are recomputed per angle.
CriterionCurve pp_sweep2d(const Eigen::MatrixXd& X, const MethodSpec& spec, int grid_size = 721,
                          const MethodOptions& options = {});

/// Local minimization of kappa_pp over the unit sphere from a0 using a
/// Nelder-Mead simplex in the tangent space at the current point. The
/// returned direction never has a larger criterion than a0.
Eigen::VectorXd pp_refine(const Eigen::MatrixXd& X, const MethodSpec& spec, const Eigen::VectorXd& a0);

/// Estimated clustering direction: the minimum-eigenvalue eigenvector for
/// ICS; for PP the sweep argmin when p = 2, otherwise pp_refine started
/// from the ICS direction of the same estimator pair.
Eigen::VectorXd clustering_direction(const Eigen::MatrixXd& X, const MethodSpec& spec,
                                     const MethodOptions& options = {});

/// Flips v so its largest-magnitude component is positive.
Eigen::VectorXd canonical_sign(Eigen::VectorXd v);

/// Angle in degrees between the axes spanned by a and b (in [0, 90]).
double axis_angle_deg(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

}  // namespace icslab
