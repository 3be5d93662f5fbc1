#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "icslab/error.hpp"
#include "icslab/icspp.hpp"
#include "icslab/model.hpp"
#include "icslab/population.hpp"
#include "icslab/rng.hpp"
#include "support.hpp"

using namespace icslab;

namespace {

constexpr double kPi = std::numbers::pi;

ScatterEstimate wrap(const Eigen::MatrixXd& shape) {
    ScatterEstimate s;
    s.location = Eigen::VectorXd::Zero(shape.rows());
    s.shape = shape;
    return s;
}

Eigen::MatrixXd diag2(double a, double b) { return Eigen::Vector2d(a, b).asDiagonal(); }

Eigen::MatrixXd random_spd(Eigen::Index p, Rng& rng) {
    Eigen::MatrixXd A(p, p);
    for (Eigen::Index i = 0; i < p; ++i)
        for (Eigen::Index j = 0; j < p; ++j) A(i, j) = rng.normal();
    return A * A.transpose() + 0.1 * Eigen::MatrixXd::Identity(p, p);
}

MethodSpec spec(Estimator s1, Estimator s2, LocationPolicy policy, Mode mode) { return {s1, s2, policy, mode}; }

const Eigen::Vector2d e1 = Eigen::Vector2d::UnitX();
const Eigen::Vector2d e2 = Eigen::Vector2d::UnitY();

}  // namespace

TEST(MethodSpec, NamesFollowNotation) {
    EXPECT_EQ(spec(Estimator::var, Estimator::mcd, LocationPolicy::free, Mode::ics).name(), "ICS:var:mcd");
    EXPECT_EQ(spec(Estimator::t2, Estimator::mve, LocationPolicy::common_mean, Mode::pp).name(), "PP:t2:mve:mean");
    for (auto mode : {Mode::ics, Mode::pp})
        for (auto policy : {LocationPolicy::free, LocationPolicy::common_mean})
            for (auto a : {Estimator::var, Estimator::kmat, Estimator::t2, Estimator::mve, Estimator::mcd}) {
                const auto s = spec(a, Estimator::var, policy, mode);
                EXPECT_EQ(MethodSpec::parse(s.name()), s);
            }
    for (const char* bad : {"ICS:var", "XX:var:mcd", "PP:var:mcd:median", "PP:var:foo", "ICS:var:mcd:mean:x"})
        EXPECT_THROW(MethodSpec::parse(bad), InvalidArgument) << bad;
}

TEST(KappaIcs, Examples) {
    EXPECT_EQ(kappa_ics(e1, diag2(4, 1), Eigen::Matrix2d::Identity()), 4.0);
    Rng rng(1);
    const Eigen::MatrixXd S = random_spd(3, rng);
    EXPECT_NEAR(kappa_ics(Eigen::Vector3d(0.3, -1, 2), S, S), 1.0, 1e-15);
    const Eigen::Vector2d a = Eigen::Vector2d(1, 1) / std::sqrt(2.0);
    EXPECT_NEAR(kappa_ics(a, diag2(4, 1), diag2(2, 1)), 5.0 / 3.0, 1e-15);
    EXPECT_NEAR(kappa_ics(-7.5 * a, diag2(4, 1), diag2(2, 1)), 5.0 / 3.0, 1e-15);
    EXPECT_THROW(kappa_ics(Eigen::Vector2d::Zero(), diag2(4, 1), diag2(2, 1)), InvalidArgument);
    EXPECT_THROW(kappa_ics(e1, diag2(4, 1), diag2(0, 1)), SingularMatrix);
}

TEST(IcsDecompose, DiagonalExamples) {
    auto r = ics_decompose(wrap(diag2(4, 1)), wrap(Eigen::Matrix2d::Identity()));
    EXPECT_NEAR(r.eigenvalues[0], 4, 1e-14);
    EXPECT_NEAR(r.eigenvalues[1], 1, 1e-14);
    EXPECT_LT(axis_angle_deg(r.kappa_min_direction, e2), 1e-6);

    // One-group scatter in the denominator: the minimum picks the wrong axis.
    const double delta = 0.9;
    r = ics_decompose(wrap(Eigen::Matrix2d::Identity()), wrap(diag2(1 - delta * delta, 1)));
    EXPECT_NEAR(r.eigenvalues[0], 1 / 0.19, 1e-12);
    EXPECT_NEAR(r.eigenvalues[1], 1, 1e-14);
    EXPECT_LT(axis_angle_deg(r.kappa_min_direction, e2), 1e-6);
    EXPECT_GT(axis_angle_deg(r.kappa_min_direction, e1), 89.0);
}

TEST(IcsDecompose, ResidualsAndRayleighQuotients) {
    Rng rng(17);
    for (int rep = 0; rep < 100; ++rep) {
        const Eigen::Index p = 2 + static_cast<Eigen::Index>(rng.below(4));
        const Eigen::MatrixXd S1 = random_spd(p, rng);
        const Eigen::MatrixXd S2 = random_spd(p, rng);
        const auto r = ics_decompose(wrap(S1), wrap(S2));
        for (Eigen::Index k = 0; k < p; ++k) {
            const Eigen::VectorXd v = r.eigenvectors.col(k);
            EXPECT_NEAR(v.norm(), 1.0, 1e-12);
            EXPECT_LE((S1 * v - r.eigenvalues[k] * S2 * v).norm(), 1e-8 * S1.norm());
            EXPECT_NEAR(kappa_ics(v, S1, S2), r.eigenvalues[k], 1e-8 * r.eigenvalues[k]);
            EXPECT_GT(r.eigenvalues[k], 0.0);
            if (k > 0) EXPECT_GE(r.eigenvalues[k - 1], r.eigenvalues[k]);
            Eigen::Index big = 0;
            v.cwiseAbs().maxCoeff(&big);
            EXPECT_GT(v[big], 0.0);
        }
        EXPECT_TRUE(r.kappa_min_direction.isApprox(r.eigenvectors.col(p - 1)));
    }
}

TEST(IcsDecompose, RejectsIndefinite) {
    EXPECT_THROW(ics_decompose(wrap(diag2(1, 1)), wrap(diag2(1, -1))), SingularMatrix);
    EXPECT_THROW(ics_decompose(wrap(diag2(1, 0)), wrap(diag2(1, 1))), SingularMatrix);
}

TEST(IcsDirections, AffineEquivariance) {
    Rng rng(5);
    const auto X = fixtures::mixture_sample(6, 300, 0.5, 3.0, 3);
    for (auto pair : {std::pair{Estimator::kmat, Estimator::var}, std::pair{Estimator::var, Estimator::t2},
                      std::pair{Estimator::kmat, Estimator::t2}})
        for (auto policy : {LocationPolicy::free, LocationPolicy::common_mean}) {
            const auto s = spec(pair.first, pair.second, policy, Mode::ics);
            const Eigen::VectorXd a = clustering_direction(X, s);
            for (int rep = 0; rep < 5; ++rep) {
                const Eigen::MatrixXd Q = fixtures::random_affine(3, rng);
                const Eigen::Vector3d shift(rng.normal(), rng.normal(), rng.normal());
                const Eigen::MatrixXd Y = (X * Q.transpose()).rowwise() + shift.transpose();
                const Eigen::VectorXd b = clustering_direction(Y, s);
                const Eigen::VectorXd expected = Q.transpose().inverse() * a;
                EXPECT_LT(axis_angle_deg(b, expected) * kPi / 180, 1e-6) << s.name();
            }
        }
}

TEST(KappaPp, VarOverVarIsOne) {
    const auto X = fixtures::mixture_sample(2);
    for (double phi : {-1.2, 0.0, 0.4, 1.5})
        for (auto policy : {LocationPolicy::free, LocationPolicy::common_mean})
            EXPECT_NEAR(kappa_pp(X, fixtures::unit(phi), spec(Estimator::var, Estimator::var, policy, Mode::pp)), 1.0,
                        1e-14);
}

TEST(KappaPp, KmatOverVarIsKurtosisPlusThree) {
    const auto X = fixtures::mixture_sample(3);
    const auto s = spec(Estimator::kmat, Estimator::var, LocationPolicy::free, Mode::pp);
    for (int k = 0; k < 37; ++k) {
        const Eigen::Vector2d a = fixtures::unit(-kPi / 2 + kPi * k / 36);
        EXPECT_NEAR(kappa_pp(X, a, s), 3 + fixtures::excess_kurtosis(X * a), 1e-10);
    }
}

TEST(KappaPp, InvariantUnderRescaling) {
    const auto X = fixtures::mixture_sample(4);
    for (auto s1 : {Estimator::var, Estimator::kmat, Estimator::t2, Estimator::mve, Estimator::mcd})
        for (auto s2 : {Estimator::var, Estimator::t2, Estimator::mve, Estimator::mcd})
            for (auto policy : {LocationPolicy::free, LocationPolicy::common_mean}) {
                const auto s = spec(s1, s2, policy, Mode::pp);
                const Eigen::Vector2d a = fixtures::unit(0.7);
                const double k = kappa_pp(X, a, s);
                EXPECT_EQ(kappa_pp(X, -a, s), k) << s.name();
                EXPECT_EQ(kappa_pp(X, 2 * a, s), k) << s.name();
                EXPECT_NEAR(kappa_pp(X, 3.7 * a, s), k, 1e-12 * k) << s.name();
            }
    EXPECT_THROW(kappa_pp(X, Eigen::Vector2d::Zero(), spec(Estimator::var, Estimator::var, LocationPolicy::free, Mode::pp)),
                 InvalidArgument);
}

TEST(KappaPp, VarMcdPeaksAtClusteringDirection) {
    const auto s = spec(Estimator::var, Estimator::mcd, LocationPolicy::free, Mode::pp);
    int peaks = 0;
    for (std::uint64_t r = 0; r < 20; ++r) {
        const auto X = fixtures::mixture_sample(derive_seed(2024, r));
        peaks += kappa_pp(X, e1, s) > kappa_pp(X, e2, s);
    }
    EXPECT_GT(peaks, 10);
}

TEST(PpSweep, ConstantForIdenticalSpreads) {
    const auto X = fixtures::mixture_sample(5);
    const auto c = pp_sweep2d(X, spec(Estimator::var, Estimator::var, LocationPolicy::free, Mode::pp), 73);
    ASSERT_EQ(c.angles.size(), 73u);
    EXPECT_DOUBLE_EQ(c.angles.front(), -kPi / 2);
    EXPECT_DOUBLE_EQ(c.angles.back(), kPi / 2);
    for (double v : c.values) EXPECT_NEAR(v, 1.0, 1e-14);
}

TEST(PpSweep, EndpointsDescribeSameAxis) {
    const auto X = fixtures::mixture_sample(6);
    for (const auto& [s1, s2] : std::vector<std::pair<Estimator, Estimator>>{
             {Estimator::var, Estimator::t2}, {Estimator::var, Estimator::mcd}, {Estimator::var, Estimator::mve},
             {Estimator::t2, Estimator::mcd}, {Estimator::kmat, Estimator::var}})
        for (auto policy : {LocationPolicy::free, LocationPolicy::common_mean})
            for (auto mode : {Mode::ics, Mode::pp}) {
                const auto s = spec(s1, s2, policy, mode);
                const auto c = pp_sweep2d(X, s, 37, {100, 1});
                EXPECT_NEAR(c.values.front(), c.values.back(), 1e-9 * c.values.front()) << s.name();
                for (double v : c.values) EXPECT_GT(v, 0.0);
                EXPECT_EQ(c.method, s);
            }
}

TEST(PpSweep, MatchesPopulationCurvesInRawCoordinates) {
    const double alpha = 3, q = 0.5;
    const auto X = sample_mixture(MixtureParams(2, q, alpha), 1000000, 88, Coords::raw).values();
    const int grid = 37;
    const auto pop = pop_curves(alpha, q, grid, AngleCoords::theta);
    const auto ics = pp_sweep2d(X, spec(Estimator::kmat, Estimator::var, LocationPolicy::free, Mode::ics), grid);
    const auto pp = pp_sweep2d(X, spec(Estimator::kmat, Estimator::var, LocationPolicy::free, Mode::pp), grid);
    for (int k = 0; k < grid; ++k) {
        EXPECT_NEAR(ics.angles[static_cast<std::size_t>(k)], pop.angles[static_cast<std::size_t>(k)], 1e-15);
        EXPECT_NEAR(ics.values[static_cast<std::size_t>(k)] / pop.kappa_ics[static_cast<std::size_t>(k)], 1, 0.02);
        EXPECT_NEAR(pp.values[static_cast<std::size_t>(k)] / pop.kappa_pp[static_cast<std::size_t>(k)], 1, 0.02);
    }
}

TEST(PpRefine, StaysAtGridMinimum) {
    const auto X = fixtures::mixture_sample(7);
    const auto s = spec(Estimator::kmat, Estimator::var, LocationPolicy::free, Mode::pp);
    const auto curve = pp_sweep2d(X, s);
    const Eigen::Vector2d a0 = fixtures::unit(curve.argmin);
    const Eigen::VectorXd a = pp_refine(X, s, a0);
    EXPECT_LT(axis_angle_deg(a, a0), 0.5);
    EXPECT_LE(kappa_pp(X, a, s), kappa_pp(X, a0, s));
}

TEST(PpRefine, ConvergesFromOffsetStart) {
    const auto s = spec(Estimator::kmat, Estimator::var, LocationPolicy::free, Mode::pp);
    for (std::uint64_t seed : {8u, 9u, 10u}) {
        const auto X = fixtures::mixture_sample(seed);
        const auto curve = pp_sweep2d(X, s);
        for (double offset : {-5.0, 5.0}) {
            const Eigen::Vector2d a0 = fixtures::unit(curve.argmin + offset * kPi / 180);
            const Eigen::VectorXd a = pp_refine(X, s, a0);
            EXPECT_LT(axis_angle_deg(a, fixtures::unit(curve.argmin)), 0.25);
            EXPECT_LE(kappa_pp(X, a, s), kappa_pp(X, a0, s));
        }
    }
}

TEST(PpRefine, ThreeDimensionsFromIcsStart) {
    const auto pp = spec(Estimator::kmat, Estimator::var, LocationPolicy::free, Mode::pp);
    const auto ics = spec(Estimator::kmat, Estimator::var, LocationPolicy::free, Mode::ics);
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const auto X = fixtures::mixture_sample(seed, 1000, 0.5, 3.0, 3);
        const Eigen::VectorXd a0 = clustering_direction(X, ics);
        const Eigen::VectorXd a = pp_refine(X, pp, a0);
        EXPECT_LT(axis_angle_deg(a, Eigen::Vector3d::UnitX()), 5.0);
        EXPECT_LE(kappa_pp(X, a, pp), kappa_pp(X, a0, pp));
        EXPECT_NEAR(a.norm(), 1.0, 1e-12);
        const Eigen::VectorXd same = clustering_direction(X, pp);
        EXPECT_TRUE(same.isApprox(a));
    }
}

TEST(ClusteringDirection, KmatVarFindsSeparatingAxis) {
    const auto raw = sample_mixture(MixtureParams(2, 0.5, 3), 1000000, 41, Coords::total);
    const auto d = clustering_direction(raw.values(), spec(Estimator::kmat, Estimator::var, LocationPolicy::free, Mode::ics));
    EXPECT_LT(axis_angle_deg(d, e1), 1.0);
}

TEST(ClusteringDirection, PpUsesSweepArgmin) {
    const auto X = fixtures::mixture_sample(11);
    const auto s = spec(Estimator::var, Estimator::t2, LocationPolicy::free, Mode::pp);
    const auto d = clustering_direction(X, s);
    EXPECT_LT(axis_angle_deg(d, fixtures::unit(pp_sweep2d(X, s).argmin)), 1e-12);
}

TEST(ClusteringDirection, FreeMcdPicksWrongAxis) {
    const auto s = spec(Estimator::var, Estimator::mcd, LocationPolicy::free, Mode::ics);
    int wrong = 0;
    for (std::uint64_t r = 0; r < 10; ++r) {
        const std::uint64_t seed = derive_seed(2024, r);
        wrong += axis_angle_deg(clustering_direction(fixtures::mixture_sample(seed), s, {500, seed}), e2) <= 10;
    }
    EXPECT_GE(wrong, 9);
}

TEST(ClusteringDirection, SeedsAreReproducible) {
    const auto X = fixtures::mixture_sample(12);
    const auto s = spec(Estimator::var, Estimator::mve, LocationPolicy::common_mean, Mode::ics);
    EXPECT_TRUE(clustering_direction(X, s, {100, 5}) == clustering_direction(X, s, {100, 5}));
    const auto [a, b] = scatter_seeds(5);
    EXPECT_NE(a, b);
}
