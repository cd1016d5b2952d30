#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ucw/spaces.hpp"

using namespace ucw;

namespace {

template <class S>
void check_axioms(const S& space, int trials, std::uint64_t seed, double scale) {
    Rng rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const Tolerance tol = space.tolerance();
    const auto o = space.origin();
    for (int k = 0; k < trials; ++k) {
        const auto x = space.random_point(rng, o, scale);
        const auto y = space.random_point(rng, o, scale);
        const auto z = space.random_point(rng, o, scale);
        const auto w = space.random_point(rng, o, scale);
        const double t = u(rng), t2 = u(rng);
        const auto m = space.combine(x, y, t);
        // W1
        ASSERT_TRUE(tol.le(space.dist(z, m), (1 - t) * space.dist(z, x) + t * space.dist(z, y)));
        // W2
        ASSERT_TRUE(tol.eq(space.dist(m, space.combine(x, y, t2)), std::fabs(t - t2) * space.dist(x, y)));
        // W3
        ASSERT_TRUE(tol.eq(space.dist(m, space.combine(y, x, 1 - t)), 0.0));
        // W4
        ASSERT_TRUE(tol.le(space.dist(m, space.combine(z, w, t)), (1 - t) * space.dist(x, z) + t * space.dist(y, w)));
        // distances along the geodesic
        ASSERT_TRUE(tol.eq(space.dist(x, m), t * space.dist(x, y)));
        ASSERT_TRUE(tol.eq(space.dist(y, m), (1 - t) * space.dist(x, y)));
    }
}

} // namespace

TEST(Euclidean, DistanceAndMidpoint) {
    EuclideanSpace e(2);
    EXPECT_DOUBLE_EQ(e.dist({0, 0}, {3, 4}), 5.0);
    const Vec m = e.combine({0, 0}, {2, 0}, 0.5);
    EXPECT_DOUBLE_EQ(m[0], 1.0);
    EXPECT_DOUBLE_EQ(m[1], 0.0);
}

TEST(Euclidean, RejectsBadInput) {
    EuclideanSpace e(2);
    EXPECT_THROW(e.dist({0, 0}, {1, 2, 3}), InputError);
    EXPECT_THROW(e.combine({0, 0}, {1, 0}, 1.5), InputError);
    EXPECT_THROW(e.combine({0, 0}, {1, 0}, -0.1), InputError);
}

TEST(Euclidean, Axioms) { check_axioms(EuclideanSpace(2), 3000, 1, 5.0); }

TEST(Lp, Axioms) {
    check_axioms(LpSpace(3, 3.0), 3000, 2, 5.0);
    check_axioms(LpSpace(2, 4.0), 2000, 3, 5.0);
}

TEST(Lp, RejectsSmallP) { EXPECT_THROW(LpSpace(2, 1.5), InputError); }

TEST(Hyperbolic, UnitDistance) {
    HyperbolicPlane h;
    const HyperboloidPoint x{0, 0, 1};
    const HyperboloidPoint y{std::sinh(1.0), 0, std::cosh(1.0)};
    EXPECT_NEAR(h.dist(x, y), 1.0, 1e-12);
}

TEST(Hyperbolic, DegenerateCombine) {
    HyperbolicPlane h;
    const auto x = HyperbolicPlane::from_polar(0.8, 0.3);
    const auto c = h.combine(x, x, 0.7);
    EXPECT_EQ(c, x);
}

TEST(Hyperbolic, Axioms) { check_axioms(HyperbolicPlane(), 3000, 4, 3.0); }

TEST(Hyperbolic, ConstraintDriftAfterChainedCombines) {
    HyperbolicPlane h;
    Rng rng(5);
    auto x = HyperbolicPlane::from_polar(1.0, 0.0);
    const auto a = HyperbolicPlane::from_polar(2.0, 1.0);
    const auto b = HyperbolicPlane::from_polar(2.0, 4.0);
    double worst = 0.0;
    for (int k = 0; k < 1'000'000; ++k) {
        x = h.combine(x, (k & 1) ? a : b, 0.37);
        worst = std::max(worst, std::fabs(minkowski(x, x) + 1.0));
    }
    EXPECT_LT(worst, 1e-6);
}

TEST(Hyperbolic, GeodesicSampleEqualGaps) {
    HyperbolicPlane h;
    const auto x = HyperbolicPlane::from_polar(1.0, 0.5);
    const auto y = h.exp_at(x, 2.0, 1.2);
    ASSERT_NEAR(h.dist(x, y), 2.0, 1e-9);
    const auto pts = geodesic_sample(h, x, y, 5);
    ASSERT_EQ(pts.size(), 5u);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) EXPECT_NEAR(h.dist(pts[i], pts[i + 1]), 0.5, 1e-9);
}

TEST(RTree, DistanceThroughOrigin) {
    StarTree t(3);
    EXPECT_DOUBLE_EQ(t.dist({0, 2}, {1, 3}), 5.0);
    EXPECT_DOUBLE_EQ(t.dist({0, 2}, {0, 3}), 1.0);
    EXPECT_TRUE(t.same({0, 0}, {2, 0}));
}

TEST(RTree, CombineAcrossRays) {
    StarTree t(3);
    const TreePoint c = t.combine({0, 2}, {1, 3}, 0.4);
    EXPECT_TRUE(t.same(c, t.origin()));
    const TreePoint d = t.combine({0, 2}, {1, 3}, 0.6);
    EXPECT_EQ(d.ray, 1);
    EXPECT_NEAR(d.r, 1.0, 1e-12);
}

TEST(RTree, SingleRayIsAffine) {
    StarTree t(4);
    Rng rng(6);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 1000; ++k) {
        const double a = 5 * u(rng), b = 5 * u(rng), s = u(rng);
        const TreePoint c = t.combine({2, a}, {2, b}, s);
        EXPECT_NEAR(c.r, (1 - s) * a + s * b, 1e-12);
    }
}

TEST(RTree, Axioms) { check_axioms(StarTree(5), 3000, 7, 4.0); }

TEST(Geodesic, SampleEuclidean) {
    EuclideanSpace e(2);
    const auto pts = geodesic_sample(e, Vec{0, 0}, Vec{1, 0}, 3);
    ASSERT_EQ(pts.size(), 3u);
    EXPECT_DOUBLE_EQ(pts[1][0], 0.5);
    EXPECT_DOUBLE_EQ(pts[2][0], 1.0);
}

TEST(Geodesic, SampleDegenerate) {
    StarTree t(2);
    const auto pts = geodesic_sample(t, TreePoint{1, 0.3}, TreePoint{1, 0.3}, 4);
    ASSERT_EQ(pts.size(), 4u);
    for (const auto& p : pts) EXPECT_TRUE(t.same(p, TreePoint{1, 0.3}));
    EXPECT_THROW(geodesic_sample(t, TreePoint{1, 0.3}, TreePoint{0, 1}, 1), InputError);
}

TEST(ConvexSet, BallMembership) {
    EuclideanSpace e(2);
    const auto B = ConvexSet<EuclideanSpace>::ball(e, {0, 0}, 1.0);
    EXPECT_TRUE(B.contains({0.5, 0}));
    EXPECT_TRUE(B.contains({1, 0}));
    EXPECT_FALSE(B.contains({1 + 1e-6, 0}));
}

TEST(ConvexSet, BallsAreConvex) {
    HyperbolicPlane h;
    const auto B = ConvexSet<HyperbolicPlane>::ball(h, HyperbolicPlane::from_polar(0.5, 1.0), 1.5);
    Rng rng(8);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 2000; ++k) {
        const auto x = B.sample(rng), y = B.sample(rng);
        ASSERT_TRUE(B.contains(x));
        ASSERT_TRUE(B.contains(h.combine(x, y, u(rng))));
    }
}

TEST(ConvexSet, HalfSpaceOnlyInLinearSpaces) {
    EXPECT_THROW(ConvexSet<StarTree>::half_space(StarTree(2), {1.0}, 0.0), InputError);
    EuclideanSpace e(2);
    const auto H = ConvexSet<EuclideanSpace>::half_space(e, {1, 0}, 0.5);
    EXPECT_TRUE(H.contains({0.5, 3}));
    EXPECT_FALSE(H.contains({0.49, 3}));
}
