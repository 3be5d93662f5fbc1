#include "icslab/population.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <cmath>
#include <numbers>

#include "icslab/error.hpp"
#include "icslab/model.hpp"
#include "icslab/normal.hpp"

namespace icslab {

namespace {

void require_q(double q) {
    if (!(q > 0.0 && q < 1.0)) throw InvalidArgument("mixing proportion must lie in (0, 1)");
}

// Half-width of the limiting model's coverage problem as a function of the
// lower crossing probability t = Phi(u1).
double appendix_q(double t) {
    const double u1 = normal_quantile(t);
    const double u2 = normal_quantile(t + 0.5);
    return 0.25 * (u1 - u2) * (u1 - u2);
}

ConstrainedMveSolution solution_from_roots(double u1, double u2) {
    ConstrainedMveSolution s;
    s.u1 = u1;
    s.u2 = u2;
    s.M = 0.5 * (u1 + u2);
    s.P = u1 * u2;
    s.Q = s.M * s.M - s.P;
    const double w22 = 1.0 / (2.0 * s.Q);
    s.Omega << 1.0 + s.P * w22, -s.M * w22,
               -s.M * w22, w22;
    s.Sigma = s.Omega.inverse();
    return s;
}

}  // namespace

double kurt_indicator(double q) {
    require_q(q);
    return -6.0 + 4.0 / (4.0 * q * (1.0 - q));
}

double pop_proj_kurt(double a1sq, double alpha, double q) {
    if (!(a1sq >= 0.0 && a1sq <= 1.0)) throw InvalidArgument("pop_proj_kurt: a1sq outside [0, 1]");
    const double sigma2 = 4.0 * q * (1.0 - q);
    const double a2s2 = alpha * alpha * sigma2;
    const double denom = a2s2 * a1sq + 1.0;
    return a1sq * a1sq * a2s2 * a2s2 * kurt_indicator(q) / (denom * denom);
}

std::vector<double> pop_ics_kmat_var(double alpha, double q, int p) {
    if (p < 1) throw InvalidArgument("pop_ics_kmat_var: p must be >= 1");
    const double sigma2 = 4.0 * q * (1.0 - q);
    const double a2s2 = alpha * alpha * sigma2;
    const double base = static_cast<double>(p) + 2.0;
    const double first = base + kurt_indicator(q) * a2s2 * a2s2 / ((1.0 + a2s2) * (1.0 + a2s2));
    std::vector<double> out(static_cast<std::size_t>(p), base);
    out[0] = first;
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

PopulationScatters pop_scatters_2d(double alpha, double q) {
    const double sigma2 = 4.0 * q * (1.0 - q);
    const double a2s2 = alpha * alpha * sigma2;
    const double v = 1.0 + a2s2;
    PopulationScatters out;
    out.covariance << v, 0.0, 0.0, 1.0;
    out.kurtosis_matrix << 4.0 * v + kurt_indicator(q) * a2s2 * a2s2 / v, 0.0, 0.0, 4.0;
    return out;
}

double theta_to_phi(double theta, double c) {
    if (!(c > 0.0)) throw InvalidArgument("theta_to_phi: c must be positive");
    return std::atan2(c * std::sin(theta), std::cos(theta));
}

double phi_to_theta(double phi, double c) {
    if (!(c > 0.0)) throw InvalidArgument("phi_to_theta: c must be positive");
    return std::atan2(std::sin(phi), c * std::cos(phi));
}

PopulationCurve pop_curves(double alpha, double q, int grid_size, AngleCoords coords) {
    if (grid_size < 3) throw InvalidArgument("pop_curves: grid_size must be >= 3");
    require_q(q);
    const double c = derive_standardized(MixtureParams(2, q, alpha)).c;
    const PopulationScatters pop = pop_scatters_2d(alpha, q);

    PopulationCurve curve;
    curve.coords = coords;
    const auto count = static_cast<std::size_t>(grid_size);
    for (std::size_t k = 0; k < count; ++k) {
        const double angle = -std::numbers::pi / 2 +
                             std::numbers::pi * static_cast<double>(k) / static_cast<double>(count - 1);
        const double theta = coords == AngleCoords::theta ? angle : phi_to_theta(angle, c);
        const double c2 = std::cos(theta) * std::cos(theta);
        const double s2 = std::sin(theta) * std::sin(theta);
        curve.angles.push_back(angle);
        curve.kappa_ics.push_back((c2 * pop.kurtosis_matrix(0, 0) + s2 * pop.kurtosis_matrix(1, 1)) /
                                  (c2 * pop.covariance(0, 0) + s2 * pop.covariance(1, 1)));
        curve.kappa_pp.push_back(3.0 + pop_proj_kurt(std::min(1.0, c2), alpha, q));
    }
    return curve;
}

UnconstrainedMve pop_mve_unconstrained(double delta) {
    if (!(delta >= 0.0 && delta <= 1.0)) throw InvalidArgument("pop_mve_unconstrained: delta outside [0, 1]");
    UnconstrainedMve out;
    out.shape << 1.0 - delta * delta, 0.0, 0.0, 1.0;
    out.center_plus << delta, 0.0;
    out.center_minus << -delta, 0.0;
    return out;
}

ConstrainedMveSolution limiting_constrained_mve() {
    const double d = normal_quantile(0.75);
    ConstrainedMveSolution s;
    s.u1 = -d;
    s.u2 = d;
    s.M = 0.0;
    s.P = -d * d;
    s.Q = d * d;
    s.Omega << 0.5, 0.0, 0.0, 1.0 / (2.0 * d * d);
    s.Sigma << 2.0, 0.0, 0.0, 2.0 * d * d;
    return s;
}

AppendixCheck appendix_oracle() {
    constexpr int grid = 1000;
    constexpr double step = 0.5 / grid;
    int best = 1;
    double best_value = appendix_q(step);
    for (int k = 2; k < grid; ++k) {
        const double value = appendix_q(k * step);
        if (value < best_value) {
            best_value = value;
            best = k;
        }
    }

    double lo = (best - 1) * step;
    double hi = (best + 1) * step;
    if (lo <= 0.0) lo = step * 1e-3;
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = appendix_q(x1);
    double f2 = appendix_q(x2);
    while (hi - lo > 1e-13) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = appendix_q(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = appendix_q(x2);
        }
    }

    AppendixCheck check;
    check.t_star = 0.5 * (lo + hi);
    check.solution = solution_from_roots(normal_quantile(check.t_star), normal_quantile(check.t_star + 0.5));

    constexpr double slope_step = 1e-6;
    check.slope_at_min =
        (appendix_q(check.t_star + slope_step) - appendix_q(check.t_star - slope_step)) / (2.0 * slope_step);

    constexpr double curvature_step = 1e-4;
    check.min_curvature = std::numeric_limits<double>::infinity();
    for (double t = 0.01; t <= 0.49 + 1e-12; t += 0.005) {
        const double second = (appendix_q(t + curvature_step) - 2.0 * appendix_q(t) +
                               appendix_q(t - curvature_step)) /
                              (curvature_step * curvature_step);
        check.min_curvature = std::min(check.min_curvature, second);
    }

    const Eigen::Matrix2d& omega = check.solution.Omega;
    check.det_omega = omega(0, 0) * omega(1, 1) - omega(0, 1) * omega(1, 0);
    check.det_omega_target = 1.0 / (4.0 * check.solution.Q);
    return check;
}

}  // namespace icslab
