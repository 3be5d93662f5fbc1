#include "icslab/icspp.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <numbers>
#include <numeric>

#include "icslab/error.hpp"
#include "icslab/parallel.hpp"
#include "icslab/rng.hpp"

namespace icslab {

namespace {

constexpr double kRefineStep = 0.05;  // radians
constexpr int kRefineRestarts = 5;

Eigen::VectorXd column_mean(const Eigen::MatrixXd& X) { return X.colwise().mean().transpose(); }

Eigen::VectorXd unit_direction(double phi) {
    Eigen::VectorXd a(2);
    a << std::cos(phi), std::sin(phi);
    return a;
}

// Orthonormal basis of the complement of unit vector a (p x (p-1)).
Eigen::MatrixXd tangent_basis(const Eigen::VectorXd& a) {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
    const Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(a.size(), a.size());
    return Q.rightCols(a.size() - 1);
}

struct Vertex {
    Eigen::VectorXd t;
    double value;
};

// Nelder-Mead from the origin of the tangent coordinates; f(0) is a vertex,
// so the best vertex returned is never worse than the start.
Vertex nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f, Eigen::Index dim, double step) {
    std::vector<Vertex> simplex;
    simplex.push_back({Eigen::VectorXd::Zero(dim), f(Eigen::VectorXd::Zero(dim))});
    for (Eigen::Index j = 0; j < dim; ++j) {
        Eigen::VectorXd t = Eigen::VectorXd::Zero(dim);
        t[j] = step;
        simplex.push_back({t, f(t)});
    }
    auto by_value = [](const Vertex& a, const Vertex& b) { return a.value < b.value; };

    for (int iter = 0; iter < 400 * static_cast<int>(dim + 1); ++iter) {
        std::stable_sort(simplex.begin(), simplex.end(), by_value);
        double diameter = 0.0;
        for (std::size_t i = 1; i < simplex.size(); ++i)
            diameter = std::max(diameter, (simplex[i].t - simplex[0].t).lpNorm<Eigen::Infinity>());
        if (diameter < 1e-10) break;

        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(dim);
        for (std::size_t i = 0; i + 1 < simplex.size(); ++i) centroid += simplex[i].t;
        centroid /= static_cast<double>(dim);
        Vertex& worst = simplex.back();

        const Eigen::VectorXd reflected = centroid + (centroid - worst.t);
        const double fr = f(reflected);
        if (fr < simplex.front().value) {
            const Eigen::VectorXd expanded = centroid + 2.0 * (centroid - worst.t);
            const double fe = f(expanded);
            worst = fe < fr ? Vertex{expanded, fe} : Vertex{reflected, fr};
            continue;
        }
        if (fr < simplex[simplex.size() - 2].value) {
            worst = {reflected, fr};
            continue;
        }
        const bool outside = fr < worst.value;
        const Eigen::VectorXd contracted =
            outside ? Eigen::VectorXd(centroid + 0.5 * (reflected - centroid))
                    : Eigen::VectorXd(centroid + 0.5 * (worst.t - centroid));
        const double fc = f(contracted);
        if (fc < (outside ? fr : worst.value)) {
            worst = {contracted, fc};
            continue;
        }
        for (std::size_t i = 1; i < simplex.size(); ++i) {
            simplex[i].t = simplex[0].t + 0.5 * (simplex[i].t - simplex[0].t);
            simplex[i].value = f(simplex[i].t);
        }
    }
    return *std::min_element(simplex.begin(), simplex.end(), by_value);
}

}  // namespace

std::string_view to_string(LocationPolicy policy) {
    return policy == LocationPolicy::free ? "free" : "mean";
}

std::string_view to_string(Mode mode) { return mode == Mode::ics ? "ICS" : "PP"; }

std::string MethodSpec::name() const {
    std::string out(to_string(mode));
    out += ':';
    out += to_string(scat1);
    out += ':';
    out += to_string(scat2);
    if (policy == LocationPolicy::common_mean) out += ":mean";
    return out;
}

MethodSpec MethodSpec::parse(std::string_view text) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t colon = text.find(':', start);
        parts.push_back(text.substr(start, colon - start));
        if (colon == std::string_view::npos) break;
        start = colon + 1;
    }
    if (parts.size() < 3 || parts.size() > 4)
        throw InvalidArgument("method '" + std::string(text) + "' is not MODE:scat1:scat2[:mean]");

    MethodSpec spec;
    if (parts[0] == "ICS") spec.mode = Mode::ics;
    else if (parts[0] == "PP") spec.mode = Mode::pp;
    else throw InvalidArgument("method '" + std::string(text) + "': mode must be ICS or PP");
    spec.scat1 = parse_estimator(parts[1]);
    spec.scat2 = parse_estimator(parts[2]);
    if (parts.size() == 4) {
        if (parts[3] != "mean")
            throw InvalidArgument("method '" + std::string(text) + "': the only location is 'mean'");
        spec.policy = LocationPolicy::common_mean;
    }
    return spec;
}

std::pair<std::uint64_t, std::uint64_t> scatter_seeds(std::uint64_t seed) {
    return {derive_seed(seed, "scat1"), derive_seed(seed, "scat2")};
}

double kappa_ics(const Eigen::VectorXd& a, const Eigen::MatrixXd& S1, const Eigen::MatrixXd& S2) {
    if (a.size() != S1.rows() || a.size() != S2.rows())
        throw InvalidArgument("kappa_ics: dimension mismatch");
    if (a.squaredNorm() == 0.0) throw InvalidArgument("kappa_ics: zero direction");
    const double denom = a.dot(S2 * a);
    if (!(denom > 0.0)) throw SingularMatrix("kappa_ics: S2 vanishes along the direction");
    return a.dot(S1 * a) / denom;
}

Eigen::VectorXd canonical_sign(Eigen::VectorXd v) {
    Eigen::Index largest = 0;
    v.cwiseAbs().maxCoeff(&largest);
    if (v[largest] < 0.0) v = -v;
    return v;
}

double axis_angle_deg(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    const double c = std::fabs(a.dot(b)) / (a.norm() * b.norm());
    return std::acos(std::min(1.0, c)) * 180.0 / std::numbers::pi;
}

IcsResult ics_decompose(const ScatterEstimate& S1, const ScatterEstimate& S2) {
    const Eigen::Index p = S1.shape.rows();
    if (S2.shape.rows() != p) throw InvalidArgument("ics_decompose: dimension mismatch");
    Eigen::LLT<Eigen::MatrixXd> llt2(S2.shape);
    Eigen::LLT<Eigen::MatrixXd> llt1(S1.shape);
    if (llt2.info() != Eigen::Success || llt1.info() != Eigen::Success)
        throw SingularMatrix("ics_decompose: scatter matrices must be positive definite");

    // L^{-1} S1 L^{-T} shares eigenvalues with S2^{-1} S1.
    Eigen::MatrixXd W = S1.shape;
    llt2.matrixL().solveInPlace(W);
    W.transposeInPlace();
    llt2.matrixL().solveInPlace(W);
    W = 0.5 * (W + W.transpose()).eval();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(W);
    if (eig.info() != Eigen::Success) throw SingularMatrix("ics_decompose: eigen-solve failed");
    Eigen::MatrixXd V = eig.eigenvectors();
    llt2.matrixU().solveInPlace(V);

    IcsResult out;
    out.eigenvalues.resize(p);
    out.eigenvectors.resize(p, p);
    for (Eigen::Index k = 0; k < p; ++k) {
        const Eigen::Index src = p - 1 - k;  // solver returns ascending order
        out.eigenvalues[k] = eig.eigenvalues()[src];
        out.eigenvectors.col(k) = canonical_sign(V.col(src).normalized());
    }
    out.kappa_min_direction = out.eigenvectors.col(p - 1);
    out.S1 = S1;
    out.S2 = S2;
    return out;
}

std::pair<ScatterEstimate, ScatterEstimate> ics_scatters(const Eigen::MatrixXd& X, const MethodSpec& spec,
                                                         const MethodOptions& options) {
    const Location loc = spec.policy == LocationPolicy::common_mean ? Location::fixed(column_mean(X))
                                                                     : Location::free();
    const auto [seed1, seed2] = scatter_seeds(options.seed);
    return {scatter(spec.scat1, X, loc, {options.trials, seed1, false}),
            scatter(spec.scat2, X, loc, {options.trials, seed2, false})};
}

double kappa_pp(const Eigen::MatrixXd& X, const Eigen::VectorXd& a, const MethodSpec& spec) {
    if (a.size() != X.cols()) throw InvalidArgument("kappa_pp: dimension mismatch");
    const double norm = a.norm();
    if (!(norm > 0.0)) throw InvalidArgument("kappa_pp: zero direction");
    const Eigen::VectorXd unit = a / norm;
    const Eigen::VectorXd projected = X * unit;
    const std::span<const double> y(projected.data(), static_cast<std::size_t>(projected.size()));

    const Location1d loc = spec.policy == LocationPolicy::common_mean
                               ? Location1d::fixed(unit.dot(column_mean(X)))
                               : Location1d::free();
    const double s1 = spread1d(univariate_counterpart(spec.scat1), y, loc).spread;
    const double s2 = spread1d(univariate_counterpart(spec.scat2), y, loc).spread;
    if (!(s2 > 0.0)) throw DegenerateData("kappa_pp: zero spread in the denominator");
    return s1 / s2;
}

CriterionCurve pp_sweep2d(const Eigen::MatrixXd& X, const MethodSpec& spec, int grid_size,
                          const MethodOptions& options) {
    if (X.cols() != 2) throw InvalidArgument("pp_sweep2d: data must have two columns");
    if (grid_size < 3) throw InvalidArgument("pp_sweep2d: grid_size must be >= 3");

    CriterionCurve curve;
    curve.method = spec;
    const auto count = static_cast<std::size_t>(grid_size);
    curve.angles.resize(count);
    curve.values.resize(count);
    for (std::size_t k = 0; k < count; ++k)
        curve.angles[k] = -std::numbers::pi / 2 + std::numbers::pi * static_cast<double>(k) /
                                                      static_cast<double>(count - 1);

    if (spec.mode == Mode::ics) {
        const auto [S1, S2] = ics_scatters(X, spec, options);
        for (std::size_t k = 0; k < count; ++k)
            curve.values[k] = kappa_ics(unit_direction(curve.angles[k]), S1.shape, S2.shape);
    } else {
        parallel_for(count, [&](std::size_t k) {
            curve.values[k] = kappa_pp(X, unit_direction(curve.angles[k]), spec);
        });
    }

    const auto [lo, hi] = std::minmax_element(curve.values.begin(), curve.values.end());
    curve.argmin = curve.angles[static_cast<std::size_t>(lo - curve.values.begin())];
    curve.argmax = curve.angles[static_cast<std::size_t>(hi - curve.values.begin())];
    return curve;
}

Eigen::VectorXd pp_refine(const Eigen::MatrixXd& X, const MethodSpec& spec, const Eigen::VectorXd& a0) {
    if (X.cols() < 2) throw InvalidArgument("pp_refine: need p >= 2");
    if (a0.size() != X.cols() || !(a0.norm() > 0.0)) throw InvalidArgument("pp_refine: bad start");

    Eigen::VectorXd current = a0.normalized();
    double current_value = kappa_pp(X, current, spec);
    for (int restart = 0; restart < kRefineRestarts; ++restart) {
        const Eigen::MatrixXd basis = tangent_basis(current);
        auto f = [&](const Eigen::VectorXd& t) { return kappa_pp(X, current + basis * t, spec); };
        const Vertex best = nelder_mead(f, basis.cols(), kRefineStep);
        if (!(best.value < current_value)) break;
        current = (current + basis * best.t).normalized();
        current_value = best.value;
    }
    return canonical_sign(current);
}

Eigen::VectorXd clustering_direction(const Eigen::MatrixXd& X, const MethodSpec& spec,
                                     const MethodOptions& options) {
    if (spec.mode == Mode::ics) {
        const auto [S1, S2] = ics_scatters(X, spec, options);
        return ics_decompose(S1, S2).kappa_min_direction;
    }
    if (X.cols() == 2) return canonical_sign(unit_direction(pp_sweep2d(X, spec, 721, options).argmin));

    MethodSpec ics = spec;
    ics.mode = Mode::ics;
    return pp_refine(X, spec, clustering_direction(X, ics, options));
}

}  // namespace icslab
