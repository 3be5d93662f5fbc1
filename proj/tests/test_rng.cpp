#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <vector>

#include "icslab/rng.hpp"

using icslab::derive_seed;
using icslab::Rng;

TEST(Rng, SameSeedSameStream) {
    Rng a(42), b(42);
    for (int i = 0; i < 1000; ++i) {
        EXPECT_EQ(a.uniform(), b.uniform());
        EXPECT_EQ(a.normal(), b.normal());
        EXPECT_EQ(a.below(17), b.below(17));
    }
}

TEST(Rng, DifferentSeedsDiffer) {
    Rng a(1), b(2);
    int equal = 0;
    for (int i = 0; i < 100; ++i) equal += a.uniform() == b.uniform();
    EXPECT_EQ(equal, 0);
}

TEST(Rng, UniformRangeAndMoments) {
    Rng rng(7);
    const int n = 200000;
    double sum = 0, sum2 = 0;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        sum += u;
        sum2 += u * u;
    }
    EXPECT_NEAR(sum / n, 0.5, 0.005);
    EXPECT_NEAR(sum2 / n - (sum / n) * (sum / n), 1.0 / 12.0, 0.002);
}

TEST(Rng, NormalMoments) {
    Rng rng(11);
    const int n = 400000;
    double s1 = 0, s2 = 0, s4 = 0;
    for (int i = 0; i < n; ++i) {
        const double z = rng.normal();
        s1 += z;
        s2 += z * z;
        s4 += z * z * z * z;
    }
    EXPECT_NEAR(s1 / n, 0.0, 0.01);
    EXPECT_NEAR(s2 / n, 1.0, 0.01);
    EXPECT_NEAR(s4 / n, 3.0, 0.05);
}

TEST(Rng, BelowIsUniformOverBound) {
    Rng rng(5);
    std::vector<int> counts(7, 0);
    const int n = 70000;
    for (int i = 0; i < n; ++i) {
        const auto r = rng.below(7);
        ASSERT_LT(r, 7u);
        ++counts[r];
    }
    double chi2 = 0;
    for (int c : counts) chi2 += (c - n / 7.0) * (c - n / 7.0) / (n / 7.0);
    EXPECT_LT(chi2, 22.46);  // chi-square(6) upper 0.001 quantile
}

TEST(DeriveSeed, DeterministicAndLabelSensitive) {
    EXPECT_EQ(derive_seed(9, "scat1"), derive_seed(9, "scat1"));
    EXPECT_NE(derive_seed(9, "scat1"), derive_seed(9, "scat2"));
    EXPECT_NE(derive_seed(9, "scat1"), derive_seed(10, "scat1"));
    EXPECT_EQ(derive_seed(3, std::uint64_t{4}), derive_seed(3, std::uint64_t{4}));
}

TEST(DeriveSeed, IndexedChildrenAreDistinct) {
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 10000; ++i) seen.insert(derive_seed(0, i));
    EXPECT_EQ(seen.size(), 10000u);
}
