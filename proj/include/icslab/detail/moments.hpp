#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

// Shared summation kernels. Every estimator that reports a mean or a
// covariance of a subset goes through these loops, always visiting rows in
// increasing index order, so different code paths over the same subset
// produce bit-identical results.

namespace icslab::detail {

inline Eigen::VectorXd subset_mean(const Eigen::MatrixXd& X, std::span<const std::size_t> rows) {
    const Eigen::Index p = X.cols();
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(p);
    for (std::size_t i : rows)
        for (Eigen::Index j = 0; j < p; ++j) sum[j] += X(static_cast<Eigen::Index>(i), j);
    for (Eigen::Index j = 0; j < p; ++j) sum[j] /= static_cast<double>(rows.size());
    return sum;
}

/// (1/|rows|) sum (x_i - center)(x_i - center)^T.
inline Eigen::MatrixXd subset_scatter(const Eigen::MatrixXd& X, std::span<const std::size_t> rows,
                                      const Eigen::VectorXd& center) {
    const Eigen::Index p = X.cols();
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(p, p);
    Eigen::VectorXd d(p);
    for (std::size_t i : rows) {
        for (Eigen::Index j = 0; j < p; ++j) d[j] = X(static_cast<Eigen::Index>(i), j) - center[j];
        for (Eigen::Index a = 0; a < p; ++a)
            for (Eigen::Index b = 0; b <= a; ++b) acc(a, b) += d[a] * d[b];
    }
    for (Eigen::Index a = 0; a < p; ++a)
        for (Eigen::Index b = 0; b <= a; ++b) {
            acc(a, b) /= static_cast<double>(rows.size());
            acc(b, a) = acc(a, b);
        }
    return acc;
}

inline double subset_mean(std::span<const double> x, std::span<const std::size_t> rows) {
    double sum = 0.0;
    for (std::size_t i : rows) sum += x[i];
    return sum / static_cast<double>(rows.size());
}

inline double subset_scatter(std::span<const double> x, std::span<const std::size_t> rows,
                             double center) {
    double acc = 0.0;
    for (std::size_t i : rows) {
        const double d = x[i] - center;
        acc += d * d;
    }
    return acc / static_cast<double>(rows.size());
}

inline std::vector<std::size_t> all_rows(std::size_t n) {
    std::vector<std::size_t> rows(n);
    for (std::size_t i = 0; i < n; ++i) rows[i] = i;
    return rows;
}

}  // namespace icslab::detail
