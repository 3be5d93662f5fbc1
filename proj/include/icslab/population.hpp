#pragma once

#include <vector>

#include <Eigen/Dense>

namespace icslab {

// Closed-form population criteria for the two-group normal mixture.

/// kurt(s) = -6 + 4 / (4q(1-q)): kurtosis of the +/-1 group indicator.
double kurt_indicator(double q);

/// Population kurtosis of a^T x for a unit vector with a_1^2 = a1sq:
/// a1sq^2 alpha^4 sigma^4 kurt(s) / (alpha^2 a1sq sigma^2 + 1)^2.
double pop_proj_kurt(double a1sq, double alpha, double q);

/// Eigenvalues of Sigma_x^{-1} K_x in descending order. The first
/// coordinate contributes p + 2 + kurt(s) alpha^4 sigma^4 / (1 + alpha^2 sigma^2)^2,
/// which equals p + 2 + pop_proj_kurt(1, alpha, q); every other coordinate p + 2.
std::vector<double> pop_ics_kmat_var(double alpha, double q, int p);

/// Population Sigma_x and K_x for p = 2 (both diagonal).
struct PopulationScatters {
    Eigen::Matrix2d covariance;
    Eigen::Matrix2d kurtosis_matrix;
};
PopulationScatters pop_scatters_2d(double alpha, double q);

enum class AngleCoords { theta, phi };

/// Population kappa_ICS (kmat over var) and kappa_PP (kurtosis + 3) on a
/// uniform grid over [-pi/2, pi/2]. theta indexes directions in raw
/// coordinates; phi indexes directions in total coordinates, related by
/// tan(phi) = c tan(theta).
struct PopulationCurve {
    std::vector<double> angles;
    std::vector<double> kappa_ics;
    std::vector<double> kappa_pp;
    AngleCoords coords = AngleCoords::theta;
};

PopulationCurve pop_curves(double alpha, double q, int grid_size, AngleCoords coords);

/// phi = arctan(c tan theta), continuous at +/- pi/2. Requires c > 0.
double theta_to_phi(double theta, double c);
double phi_to_theta(double phi, double c);

/// Unconstrained population MVE shape at q = 1/2 in total coordinates:
/// the within-group covariance diag(1 - delta^2, 1), centred at either
/// +delta e1 or -delta e1.
struct UnconstrainedMve {
    Eigen::Matrix2d shape;
    Eigen::Vector2d center_plus;
    Eigen::Vector2d center_minus;
};
UnconstrainedMve pop_mve_unconstrained(double delta);

/// Origin-centred MVE of the limiting model y = s e1 + z e2 (s = +/-1,
/// z ~ N(0,1)): the ellipse y^T Omega y = 1 crosses the line y1 = 1 at
/// u1 < u2, covering half the mass.
struct ConstrainedMveSolution {
    double u1 = 0.0;
    double u2 = 0.0;
    double M = 0.0;  ///< (u1 + u2) / 2
    double P = 0.0;  ///< u1 u2
    double Q = 0.0;  ///< M^2 - P = (u1 - u2)^2 / 4
    Eigen::Matrix2d Omega = Eigen::Matrix2d::Zero();
    Eigen::Matrix2d Sigma = Eigen::Matrix2d::Zero();
};

/// Closed form: u1 = -d, u2 = d with d = Phi^{-1}(0.75), Sigma = diag(2, 2 d^2).
ConstrainedMveSolution limiting_constrained_mve();

/// Numeric reconstruction of the same solution by direct minimization.
struct AppendixCheck {
    ConstrainedMveSolution solution;
    double t_star = 0.0;          ///< argmin of Q(t) with u1 = Phi^{-1}(t)
    double slope_at_min = 0.0;    ///< Q'(t*) by central difference
    double min_curvature = 0.0;   ///< smallest Q''(t) over t in [0.01, 0.49]
    double det_omega = 0.0;
    double det_omega_target = 0.0;  ///< 1 / (4Q)
};

/// Minimizes Q(t) = (Phi^{-1}(t) - Phi^{-1}(t + 1/2))^2 / 4 over t in
/// (0, 1/2) by grid search and golden section, rebuilds Omega from
/// (M, P, Q) and checks convexity by finite differences.
AppendixCheck appendix_oracle();

}  // namespace icslab
