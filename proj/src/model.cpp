#include "icslab/model.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "icslab/detail/moments.hpp"
#include "icslab/error.hpp"
#include "icslab/rng.hpp"

namespace icslab {

MixtureParams::MixtureParams(int p, double q, double alpha) : p_(p), q_(q), alpha_(alpha) {
    if (p < 1) throw InvalidArgument("MixtureParams: p must be >= 1");
    if (!(q > 0.0 && q < 1.0)) throw InvalidArgument("MixtureParams: q must lie in (0, 1)");
    if (!(alpha >= 0.0) || !std::isfinite(alpha))
        throw InvalidArgument("MixtureParams: alpha must be finite and >= 0");
}

StandardizedParams derive_standardized(const MixtureParams& params) {
    const double q = params.q();
    const double alpha = params.alpha();
    StandardizedParams out;
    out.m = 2.0 * q - 1.0;
    out.sigma2 = 4.0 * q * (1.0 - q);
    out.c1 = std::sqrt(1.0 + out.sigma2 * alpha * alpha);
    out.c = 1.0 / out.c1;
    out.delta = alpha / out.c1;

    const double via_alpha = 1.0 / (1.0 + 4.0 * alpha * alpha * q * (1.0 - q));
    const double via_delta = 1.0 - out.sigma2 * out.delta * out.delta;
    // The delta form loses absolute precision near 1 - sigma2 delta^2 = 0.
    const double allowance = 1e-12 * via_alpha + 8.0 * std::numeric_limits<double>::epsilon();
    if (std::fabs(via_alpha - via_delta) > allowance)
        throw Error("derive_standardized: sigma_eta^2 closed forms disagree");
    out.sigma_eta2 = via_alpha;
    return out;
}

PopulationMoments population_moments(const MixtureParams& params) {
    const int p = params.p();
    const double alpha = params.alpha();
    const double q = params.q();
    PopulationMoments out;
    out.mean = Eigen::VectorXd::Zero(p);
    out.mean[0] = (2.0 * q - 1.0) * alpha;
    out.covariance = Eigen::MatrixXd::Identity(p, p);
    out.covariance(0, 0) += 4.0 * q * (1.0 - q) * alpha * alpha;
    return out;
}

DataMatrix::DataMatrix(Eigen::MatrixXd values, std::vector<int> labels)
    : values_(std::move(values)), labels_(std::move(labels)) {
    if (!values_.allFinite()) throw InvalidArgument("DataMatrix: non-finite entry");
    if (!labels_.empty()) {
        if (static_cast<Eigen::Index>(labels_.size()) != values_.rows())
            throw InvalidArgument("DataMatrix: label count must equal row count");
        for (int s : labels_)
            if (s != 1 && s != -1) throw InvalidArgument("DataMatrix: labels must be +1 or -1");
    }
}

DataMatrix sample_mixture(const MixtureParams& params, Eigen::Index n, std::uint64_t seed,
                          Coords coords) {
    if (n < 1) throw InvalidArgument("sample_mixture: n must be >= 1");
    const int p = params.p();
    const double scale = coords == Coords::total ? 1.0 / derive_standardized(params).c1 : 1.0;

    Rng rng(seed);
    Eigen::MatrixXd values(n, p);
    std::vector<int> labels(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        const int s = rng.uniform() < params.q() ? 1 : -1;
        labels[static_cast<std::size_t>(i)] = s;
        for (int j = 0; j < p; ++j) values(i, j) = rng.normal();
        values(i, 0) = (values(i, 0) + params.alpha() * s) * scale;
    }
    return DataMatrix(std::move(values), std::move(labels));
}

Standardization standardize_data(const DataMatrix& X) {
    if (X.n() < 1) throw InvalidArgument("standardize_data: empty data");
    const auto rows = detail::all_rows(static_cast<std::size_t>(X.n()));
    Eigen::VectorXd mean = detail::subset_mean(X.values(), rows);
    const Eigen::MatrixXd S = detail::subset_scatter(X.values(), rows, mean);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(S);
    const Eigen::VectorXd& lambda = eig.eigenvalues();
    if (!(lambda.maxCoeff() > 0.0) || lambda.minCoeff() <= 1e-12 * lambda.maxCoeff())
        throw SingularMatrix("standardize_data: sample covariance is singular");

    Eigen::MatrixXd transform = eig.eigenvectors() * lambda.cwiseSqrt().cwiseInverse().asDiagonal() *
                                eig.eigenvectors().transpose();
    transform = 0.5 * (transform + transform.transpose()).eval();

    Eigen::MatrixXd Z = (X.values().rowwise() - mean.transpose()) * transform;
    return {DataMatrix(std::move(Z), X.labels()), std::move(mean), std::move(transform)};
}

Eigen::VectorXd direction_to_original(const Standardization& st, const Eigen::VectorXd& a) {
    Eigen::VectorXd b = st.transform.transpose() * a;
    return b / b.norm();
}

}  // namespace icslab
