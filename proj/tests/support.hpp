#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "icslab/model.hpp"
#include "icslab/rng.hpp"

namespace icslab::fixtures {

inline Eigen::MatrixXd normal_matrix(Eigen::Index n, Eigen::Index p, std::uint64_t seed) {
    Rng rng(seed);
    Eigen::MatrixXd X(n, p);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < p; ++j) X(i, j) = rng.normal();
    return X;
}

inline std::vector<double> normal_vector(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> x(n);
    for (auto& v : x) v = rng.normal();
    return x;
}

/// Balanced two-group sample in total coordinates, whitened to mean 0 and
/// covariance I.
inline Eigen::MatrixXd mixture_sample(std::uint64_t seed, Eigen::Index n = 500, double q = 0.5,
                                      double alpha = 3.0, int p = 2) {
    const auto raw = sample_mixture(MixtureParams(p, q, alpha), n, seed, Coords::total);
    return standardize_data(raw).data.values();
}

/// Sample excess kurtosis with 1/n moments, accumulated in long double.
inline double excess_kurtosis(const Eigen::VectorXd& x) {
    long double mean = 0;
    for (Eigen::Index i = 0; i < x.size(); ++i) mean += x[i];
    mean /= x.size();
    long double m2 = 0, m4 = 0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const long double d = x[i] - mean;
        m2 += d * d;
        m4 += d * d * d * d;
    }
    m2 /= x.size();
    m4 /= x.size();
    return static_cast<double>(m4 / (m2 * m2) - 3);
}

inline Eigen::Vector2d unit(double angle_rad) { return {std::cos(angle_rad), std::sin(angle_rad)}; }

/// Random well-conditioned nonsingular matrix.
inline Eigen::MatrixXd random_affine(Eigen::Index p, Rng& rng) {
    while (true) {
        Eigen::MatrixXd Q(p, p);
        for (Eigen::Index i = 0; i < p; ++i)
            for (Eigen::Index j = 0; j < p; ++j) Q(i, j) = rng.normal();
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(Q);
        const auto& s = svd.singularValues();
        if (s[s.size() - 1] > 0.2 * s[0]) return Q;
    }
}

}  // namespace icslab::fixtures
