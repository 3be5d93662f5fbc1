#include "icslab/scatter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "icslab/detail/moments.hpp"
#include "icslab/error.hpp"
#include "icslab/parallel.hpp"
#include "icslab/rng.hpp"

namespace icslab {

namespace {

constexpr double kSingularRatio = 1e-12;
constexpr int kMaxConcentrationSteps = 100;
constexpr double kConcentrationTolerance = 1e-12;
constexpr std::size_t kMaxExhaustiveStarts = 200000;

using Rows = std::vector<std::size_t>;

void require_rows(const Eigen::MatrixXd& X, Eigen::Index min_rows, const char* who) {
    if (X.rows() < min_rows)
        throw InvalidArgument(std::string(who) + ": too few observations for the dimension");
    if (X.cols() < 1) throw InvalidArgument(std::string(who) + ": zero columns");
}

void require_center(const Eigen::MatrixXd& X, const Location& loc, const char* who) {
    if (loc.is_fixed() && loc.value().size() != X.cols())
        throw InvalidArgument(std::string(who) + ": fixed location has the wrong length");
}

int numeric_rank(const Eigen::MatrixXd& S) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(S, Eigen::EigenvaluesOnly);
    const double top = eig.eigenvalues().maxCoeff();
    if (!(top > 0.0)) return 0;
    int rank = 0;
    for (Eigen::Index j = 0; j < S.cols(); ++j)
        if (eig.eigenvalues()[j] > kSingularRatio * top) ++rank;
    return rank;
}

bool nearly_singular(const Eigen::MatrixXd& S) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(S, Eigen::EigenvaluesOnly);
    const double top = eig.eigenvalues().maxCoeff();
    return !(top > 0.0) || eig.eigenvalues().minCoeff() <= kSingularRatio * top;
}

Eigen::VectorXd mahalanobis_sq(const Eigen::MatrixXd& X, const Eigen::VectorXd& center,
                               const Eigen::LLT<Eigen::MatrixXd>& llt) {
    Eigen::MatrixXd centered = (X.rowwise() - center.transpose()).transpose();
    llt.matrixL().solveInPlace(centered);
    return centered.colwise().squaredNorm().transpose();
}

// The h smallest entries of d2 (ties by index), returned ascending by index.
Rows smallest_rows(const Eigen::VectorXd& d2, std::size_t h) {
    Rows order(static_cast<std::size_t>(d2.size()));
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto less = [&](std::size_t a, std::size_t b) {
        const double da = d2[static_cast<Eigen::Index>(a)];
        const double db = d2[static_cast<Eigen::Index>(b)];
        return da != db ? da < db : a < b;
    };
    std::nth_element(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(h - 1), order.end(),
                     less);
    order.resize(h);
    std::sort(order.begin(), order.end());
    return order;
}

double kth_smallest(const Eigen::VectorXd& d2, std::size_t k) {
    std::vector<double> v(d2.data(), d2.data() + d2.size());
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k - 1), v.end());
    return v[k - 1];
}

Rows random_subset(std::size_t n, std::size_t k, Rng& rng) {
    Rows rows;
    rows.reserve(k);
    while (rows.size() < k) {
        const auto r = static_cast<std::size_t>(rng.below(n));
        if (std::find(rows.begin(), rows.end(), r) == rows.end()) rows.push_back(r);
    }
    std::sort(rows.begin(), rows.end());
    return rows;
}

std::vector<Rows> all_subsets(std::size_t n, std::size_t k) {
    double count = 1.0;
    for (std::size_t i = 0; i < k; ++i) count = count * static_cast<double>(n - i) / static_cast<double>(i + 1);
    if (count > static_cast<double>(kMaxExhaustiveStarts))
        throw InvalidArgument("exhaustive subset search: too many subsets");

    std::vector<Rows> out;
    Rows current(k);
    std::iota(current.begin(), current.end(), std::size_t{0});
    while (true) {
        out.push_back(current);
        std::size_t i = k;
        while (i > 0 && current[i - 1] == n - k + i - 1) --i;
        if (i == 0) break;
        ++current[i - 1];
        for (std::size_t j = i; j < k; ++j) current[j] = current[j - 1] + 1;
    }
    return out;
}

Eigen::VectorXd center_of(const Eigen::MatrixXd& X, const Rows& rows, const Location& loc) {
    return loc.is_fixed() ? loc.value() : detail::subset_mean(X, rows);
}

struct Candidate {
    double log_det = std::numeric_limits<double>::infinity();
    Eigen::VectorXd location;
    Eigen::MatrixXd shape;
    Rows support;
    int rank = std::numeric_limits<int>::max();  ///< shape rank, set for exact fits
    bool valid = false;
};

// Exact fits come first, lower-dimensional ones before higher; then the
// smaller log-determinant; exact ties go to the lexicographically smaller centre.
bool better(const Candidate& a, const Candidate& b) {
    if (a.rank != b.rank) return a.rank < b.rank;
    if (a.log_det != b.log_det) return a.log_det < b.log_det;
    return std::lexicographical_compare(a.location.begin(), a.location.end(), b.location.begin(),
                                        b.location.end());
}

// A singular elemental scatter is kept only when at least h observations
// lie exactly on its affine hull: then the optimum has zero volume.
Candidate exact_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& center,
                    const Eigen::MatrixXd& S, std::size_t h, const Location& loc) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(S);
    const double top = std::max(eig.eigenvalues().maxCoeff(), 0.0);
    std::vector<Eigen::Index> null_dirs;
    for (Eigen::Index j = 0; j < S.cols(); ++j)
        if (eig.eigenvalues()[j] <= kSingularRatio * top) null_dirs.push_back(j);

    const double tol = 1e-9 * (1.0 + X.cwiseAbs().maxCoeff());
    Rows on_hull;
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
        const Eigen::VectorXd d = X.row(i).transpose() - center;
        double off = 0.0;
        for (Eigen::Index j : null_dirs) off = std::max(off, std::fabs(eig.eigenvectors().col(j).dot(d)));
        if (off <= tol) on_hull.push_back(static_cast<std::size_t>(i));
        if (on_hull.size() == h) break;
    }
    Candidate c;
    if (on_hull.size() < h) return c;
    c.support = std::move(on_hull);
    c.location = center_of(X, c.support, loc);
    c.shape = detail::subset_scatter(X, c.support, c.location);
    c.log_det = -std::numeric_limits<double>::infinity();
    c.rank = numeric_rank(c.shape);
    c.valid = true;
    return c;
}

Candidate mve_candidate(const Eigen::MatrixXd& X, const Rows& elemental, const Location& loc,
                        std::size_t h) {
    const Eigen::VectorXd center = center_of(X, elemental, loc);
    const Eigen::MatrixXd S = detail::subset_scatter(X, elemental, center);
    if (nearly_singular(S)) return exact_fit(X, center, S, h, loc);

    Eigen::LLT<Eigen::MatrixXd> llt(S);
    if (llt.info() != Eigen::Success) return {};
    const Eigen::VectorXd d2 = mahalanobis_sq(X, center, llt);
    const double radius_sq = kth_smallest(d2, h);

    Candidate c;
    c.location = center;
    c.shape = radius_sq * S;
    c.support = smallest_rows(d2, h);
    double log_det = 0.0;
    for (Eigen::Index j = 0; j < S.cols(); ++j) log_det += 2.0 * std::log(llt.matrixL()(j, j));
    c.log_det = log_det + static_cast<double>(S.cols()) * std::log(radius_sq);
    c.valid = true;
    return c;
}

// Runs every start (in parallel) and keeps the smallest log-determinant;
// ties go to the earliest start so the result is scheduling-independent.
template <typename MakeCandidate>
Candidate best_over_starts(std::size_t starts, MakeCandidate&& make) {
    std::vector<Candidate> results(starts);
    parallel_for(starts, [&](std::size_t t) { results[t] = make(t); });
    Candidate* best = nullptr;
    for (auto& c : results)
        if (c.valid && (best == nullptr || better(c, *best))) best = &c;
    if (best == nullptr) throw DegenerateData("subset search: every candidate is singular");
    return std::move(*best);
}

ScatterEstimate to_estimate(Candidate&& c, Estimator method, const Location& loc) {
    ScatterEstimate out;
    out.location = std::move(c.location);
    out.shape = std::move(c.shape);
    out.method = method;
    out.constrained = loc.is_fixed();
    out.support = std::move(c.support);
    return out;
}

}  // namespace

std::string_view to_string(Estimator e) {
    switch (e) {
        case Estimator::var: return "var";
        case Estimator::kmat: return "kmat";
        case Estimator::t2: return "t2";
        case Estimator::mve: return "mve";
        case Estimator::mcd: return "mcd";
    }
    return "?";
}

Estimator parse_estimator(std::string_view name) {
    for (Estimator e : {Estimator::var, Estimator::kmat, Estimator::t2, Estimator::mve, Estimator::mcd})
        if (to_string(e) == name) return e;
    throw InvalidArgument("unknown estimator '" + std::string(name) + "'");
}

SpreadMethod univariate_counterpart(Estimator e) {
    switch (e) {
        case Estimator::var: return SpreadMethod::var;
        case Estimator::kmat: return SpreadMethod::kmat;
        case Estimator::t2: return SpreadMethod::t2;
        case Estimator::mve: return SpreadMethod::lshorth2;
        case Estimator::mcd: return SpreadMethod::truncvar;
    }
    throw InvalidArgument("univariate_counterpart: unknown estimator");
}

bool is_randomized(Estimator e) { return e == Estimator::mve || e == Estimator::mcd; }

ScatterEstimate cov(const Eigen::MatrixXd& X, const Location& loc) {
    require_rows(X, 1, "cov");
    require_center(X, loc, "cov");
    const Rows rows = detail::all_rows(static_cast<std::size_t>(X.rows()));
    ScatterEstimate out;
    out.method = Estimator::var;
    out.location = detail::subset_mean(X, rows);
    out.shape = detail::subset_scatter(X, rows, out.location);
    if (loc.is_fixed()) {
        const Eigen::VectorXd shift = loc.value() - out.location;
        out.shape += shift * shift.transpose();
        out.location = loc.value();
        out.constrained = true;
    }
    return out;
}

ScatterEstimate kmat(const Eigen::MatrixXd& X, const Location& loc) {
    require_rows(X, X.cols() + 1, "kmat");
    const ScatterEstimate S = cov(X, loc);
    Eigen::LLT<Eigen::MatrixXd> llt(S.shape);
    if (llt.info() != Eigen::Success || nearly_singular(S.shape))
        throw SingularMatrix("kmat: covariance is singular");
    const Eigen::VectorXd d2 = mahalanobis_sq(X, S.location, llt);

    const Eigen::Index p = X.cols();
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(p, p);
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
        const Eigen::VectorXd d = X.row(i).transpose() - S.location;
        K.noalias() += d2[i] * d * d.transpose();
    }
    K /= static_cast<double>(X.rows());

    ScatterEstimate out;
    out.location = S.location;
    out.shape = 0.5 * (K + K.transpose());
    out.method = Estimator::kmat;
    out.constrained = loc.is_fixed();
    return out;
}

ScatterEstimate t2_scatter(const Eigen::MatrixXd& X, const Location& loc, const T2Options& options) {
    const bool fixed = loc.is_fixed();
    require_rows(X, fixed ? 1 : X.cols() + 1, "t2_scatter");
    require_center(X, loc, "t2_scatter");
    constexpr double nu = 2.0;
    const Eigen::Index n = X.rows();
    const Eigen::Index p = X.cols();

    Eigen::VectorXd mu(p);
    if (fixed) {
        mu = loc.value();
    } else {
        std::vector<double> column(static_cast<std::size_t>(n));
        for (Eigen::Index j = 0; j < p; ++j) {
            for (Eigen::Index i = 0; i < n; ++i) column[static_cast<std::size_t>(i)] = X(i, j);
            const std::size_t mid = column.size() / 2;
            std::nth_element(column.begin(), column.begin() + static_cast<std::ptrdiff_t>(mid), column.end());
            double m = column[mid];
            if (column.size() % 2 == 0)
                m = 0.5 * (m + *std::max_element(column.begin(), column.begin() + static_cast<std::ptrdiff_t>(mid)));
            mu[j] = m;
        }
    }
    Eigen::MatrixXd sigma = cov(X, fixed ? loc : Location::free()).shape;

    for (int iter = 0; iter < options.max_iterations; ++iter) {
        Eigen::LLT<Eigen::MatrixXd> llt(sigma);
        if (llt.info() != Eigen::Success || nearly_singular(sigma))
            throw DegenerateData("t2_scatter: scatter became singular");
        const Eigen::VectorXd d2 = mahalanobis_sq(X, mu, llt);
        const Eigen::VectorXd w = (static_cast<double>(p) + nu) / (nu + d2.array());

        Eigen::VectorXd mu_next = mu;
        if (!fixed) mu_next = (X.transpose() * w) / w.sum();
        const Eigen::MatrixXd centered = X.rowwise() - mu_next.transpose();
        Eigen::MatrixXd sigma_next = centered.transpose() * w.asDiagonal() * centered / static_cast<double>(n);
        sigma_next = 0.5 * (sigma_next + sigma_next.transpose()).eval();

        const double scale = sigma.norm();
        const bool shape_done = (sigma_next - sigma).norm() < options.tolerance * scale;
        const bool location_done =
            (mu_next - mu).norm() < options.tolerance * std::sqrt(sigma.trace());
        mu = mu_next;
        sigma = sigma_next;
        if (shape_done && location_done) {
            ScatterEstimate out;
            out.location = mu;
            out.shape = sigma;
            out.method = Estimator::t2;
            out.constrained = fixed;
            return out;
        }
    }
    throw NonConvergence("t2_scatter: no convergence within iteration cap");
}

ScatterEstimate mve_scatter(const Eigen::MatrixXd& X, const Location& loc, const SubsetSearch& search) {
    require_rows(X, X.cols() + 1, "mve_scatter");
    require_center(X, loc, "mve_scatter");
    if (search.trials < 1 && !search.exhaustive) throw InvalidArgument("mve_scatter: trials must be >= 1");
    const std::size_t n = static_cast<std::size_t>(X.rows());
    const std::size_t k = static_cast<std::size_t>(X.cols()) + 1;
    const std::size_t h = half_size(n);

    if (search.exhaustive) {
        const auto subsets = all_subsets(n, k);
        return to_estimate(best_over_starts(subsets.size(),
                                            [&](std::size_t t) { return mve_candidate(X, subsets[t], loc, h); }),
                           Estimator::mve, loc);
    }
    return to_estimate(best_over_starts(static_cast<std::size_t>(search.trials),
                                        [&](std::size_t t) {
                                            Rng rng(derive_seed(search.seed, t));
                                            return mve_candidate(X, random_subset(n, k, rng), loc, h);
                                        }),
                       Estimator::mve, loc);
}

std::optional<Concentration> concentrate(const Eigen::MatrixXd& X, const Rows& start,
                                         const Location& loc) {
    const std::size_t n = static_cast<std::size_t>(X.rows());
    const std::size_t h = half_size(n);

    Concentration run;
    run.support = start;
    run.location = center_of(X, start, loc);
    run.shape = detail::subset_scatter(X, start, run.location);
    if (nearly_singular(run.shape)) return std::nullopt;
    if (start.size() == h) run.determinants.push_back(run.shape.determinant());

    for (int step = 0; step < kMaxConcentrationSteps; ++step) {
        Eigen::LLT<Eigen::MatrixXd> llt(run.shape);
        Rows next = smallest_rows(mahalanobis_sq(X, run.location, llt), h);
        if (next == run.support) break;

        Eigen::VectorXd location = center_of(X, next, loc);
        Eigen::MatrixXd shape = detail::subset_scatter(X, next, location);
        const bool singular = nearly_singular(shape);
        const double det = singular ? 0.0 : shape.determinant();
        const double previous = run.determinants.empty() ? 0.0 : run.determinants.back();

        run.support = std::move(next);
        run.location = std::move(location);
        run.shape = std::move(shape);
        run.determinants.push_back(det);
        if (singular) {
            run.exact_fit = true;
            break;
        }
        if (previous > 0.0 && previous - det < kConcentrationTolerance * previous) break;
    }
    return run;
}

ScatterEstimate mcd_scatter(const Eigen::MatrixXd& X, const Location& loc, const SubsetSearch& search) {
    require_rows(X, X.cols() + 1, "mcd_scatter");
    require_center(X, loc, "mcd_scatter");
    if (search.trials < 1 && !search.exhaustive) throw InvalidArgument("mcd_scatter: trials must be >= 1");
    const std::size_t n = static_cast<std::size_t>(X.rows());
    const std::size_t h = half_size(n);

    auto run_from = [&](const Rows& start) {
        Candidate c;
        const auto run = concentrate(X, start, loc);
        if (!run) {
            const Eigen::VectorXd center = center_of(X, start, loc);
            return exact_fit(X, center, detail::subset_scatter(X, start, center), h, loc);
        }
        c.location = run->location;
        c.shape = run->shape;
        c.support = run->support;
        c.log_det = run->exact_fit ? -std::numeric_limits<double>::infinity()
                                   : std::log(run->determinants.empty() ? run->shape.determinant()
                                                                        : run->determinants.back());
        if (run->exact_fit) c.rank = numeric_rank(run->shape);
        c.valid = true;
        return c;
    };

    if (search.exhaustive) {
        const auto subsets = all_subsets(n, h);
        return to_estimate(best_over_starts(subsets.size(), [&](std::size_t t) { return run_from(subsets[t]); }),
                           Estimator::mcd, loc);
    }
    const std::size_t k = static_cast<std::size_t>(X.cols()) + 1;
    return to_estimate(best_over_starts(static_cast<std::size_t>(search.trials),
                                        [&](std::size_t t) {
                                            Rng rng(derive_seed(search.seed, t));
                                            return run_from(random_subset(n, k, rng));
                                        }),
                       Estimator::mcd, loc);
}

ScatterEstimate scatter(Estimator e, const Eigen::MatrixXd& X, const Location& loc, const SubsetSearch& search) {
    switch (e) {
        case Estimator::var: return cov(X, loc);
        case Estimator::kmat: return kmat(X, loc);
        case Estimator::t2: return t2_scatter(X, loc);
        case Estimator::mve: return mve_scatter(X, loc, search);
        case Estimator::mcd: return mcd_scatter(X, loc, search);
    }
    throw InvalidArgument("scatter: unknown estimator");
}

}  // namespace icslab
