#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace icslab {

/// Two-group normal mixture q N(alpha e1, I) + (1-q) N(-alpha e1, I) in p dimensions.
class MixtureParams {
public:
    /// Throws InvalidArgument unless p >= 1, 0 < q < 1 and alpha >= 0 (finite).
    MixtureParams(int p, double q, double alpha);

    int p() const { return p_; }
    double q() const { return q_; }
    double alpha() const { return alpha_; }

private:
    int p_;
    double q_;
    double alpha_;
};

/// Quantities of the total-coordinate representation y = C^{-1} x,
/// where C = diag(c1, 1, ..., 1) makes var(y) = I.
struct StandardizedParams {
    double delta = 0.0;       ///< separation in y coordinates, alpha / c1
    double sigma_eta2 = 1.0;  ///< within-group variance of y_1
    double c1 = 1.0;          ///< sqrt(1 + 4q(1-q) alpha^2)
    double c = 1.0;           ///< c2 / c1 with c2 = 1
    double m = 0.0;           ///< E(s) = 2q - 1
    double sigma2 = 1.0;      ///< var(s) = 4q(1-q)
};

/// Computes the standardized parameters. Both closed forms of sigma_eta2
/// are evaluated; a relative disagreement above 1e-12 throws Error.
StandardizedParams derive_standardized(const MixtureParams& params);

struct PopulationMoments {
    Eigen::VectorXd mean;
    Eigen::MatrixXd covariance;
};

/// Mean (2q-1) alpha e1 and covariance 4q(1-q) alpha^2 e1 e1^T + I.
PopulationMoments population_moments(const MixtureParams& params);

/// n x p data with optional per-row group labels in {+1, -1}.
///
/// Labels are carried for evaluation only; no estimator reads them.
class DataMatrix {
public:
    DataMatrix() = default;
    /// Throws InvalidArgument on non-finite entries, a label count that is
    /// neither 0 nor n, or labels outside {+1, -1}.
    explicit DataMatrix(Eigen::MatrixXd values, std::vector<int> labels = {});

    Eigen::Index n() const { return values_.rows(); }
    Eigen::Index p() const { return values_.cols(); }
    const Eigen::MatrixXd& values() const { return values_; }
    const std::vector<int>& labels() const { return labels_; }
    bool has_labels() const { return !labels_.empty(); }

private:
    Eigen::MatrixXd values_;
    std::vector<int> labels_;
};

enum class Coords { raw, total };

/// Draws n rows x = alpha s e1 + eps with s = +1 w.p. q.
///
/// One std::mt19937_64 stream seeded with `seed` is consumed row by row:
/// a uniform for s, then p standard normals. Replicates should use
/// derive_seed(seed, replicate) rather than consecutive seeds. With
/// Coords::total the first column is divided by c1.
DataMatrix sample_mixture(const MixtureParams& params, Eigen::Index n, std::uint64_t seed,
                          Coords coords);

/// Result of whitening: z_i = transform * (x_i - mean).
struct Standardization {
    DataMatrix data;
    Eigen::VectorXd mean;
    Eigen::MatrixXd transform;  ///< symmetric inverse square root of the 1/n covariance
};

/// Centers X and whitens it with the symmetric inverse square root of its
/// 1/n sample covariance. Throws SingularMatrix when the centered data has
/// rank below p.
Standardization standardize_data(const DataMatrix& X);

/// Maps a direction found on standardized data back to the original
/// coordinates: if a^T z is the projection, transform^T a is the
/// equivalent direction for x (normalized to unit length).
Eigen::VectorXd direction_to_original(const Standardization& st, const Eigen::VectorXd& a);

}  // namespace icslab
