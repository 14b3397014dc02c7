#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "cspace/error.hpp"
#include "support.hpp"

using namespace cspace;
using namespace cspace::testing;

TEST(Cuboid, NormalizesBoundsOutsideDomains) {
    auto ds = lineStructure();
    const Cuboid C = Cuboid::create(ds, {0}, {0.9, std::nan(""), std::nan("")}, {1.0, kInf, kInf});
    EXPECT_EQ(C.lower(1), -kInf);
    EXPECT_EQ(C.upper(1), kInf);
    EXPECT_EQ(C.lower(2), -kInf);
    EXPECT_TRUE(C.contains(Point({0.95, -100.0, 100.0})));
    EXPECT_FALSE(C.contains(Point({0.85, 0.0, 0.0})));
}

TEST(Cuboid, RejectsInvalidBounds) {
    auto ds = lineStructure();
    EXPECT_THROW(box(ds, {0, 0, 0.5}, {1, 1, 0.4}), ModelError);
    EXPECT_THROW(box(ds, {0, 0, -kInf}, {1, 1, 1}), ModelError);
    EXPECT_THROW(box(ds, {0, 0}, {1, 1}), StructuralError);
}

TEST(Cuboid, IntersectionAndContainment) {
    auto ds = lineStructure(2);
    const Cuboid a = box(ds, {0, 0}, {2, 2});
    const Cuboid b = box(ds, {1, 1}, {3, 3});
    const auto ab = a.intersection(b);
    ASSERT_TRUE(ab.has_value());
    EXPECT_EQ(*ab, box(ds, {1, 1}, {2, 2}));
    EXPECT_TRUE(a.contains(*ab));
    EXPECT_FALSE(a.contains(b));
    EXPECT_FALSE(a.intersection(box(ds, {2.5, 0}, {3, 1})).has_value());
}

TEST(Core, AppleCentralRegion) {
    const Cuboid& P = fruit("apple").core().centralRegion();
    EXPECT_EQ(P.lower(0), 0.70);
    EXPECT_EQ(P.upper(0), 0.80);
    EXPECT_EQ(P.lower(1), 0.65);
    EXPECT_EQ(P.upper(1), 0.80);
    EXPECT_EQ(P.lower(2), 0.45);
    EXPECT_EQ(P.upper(2), 0.50);
}

TEST(Core, SingleCuboidIsItsOwnCentralRegion) {
    const Core& core = fruit("granny_smith").core();
    EXPECT_EQ(core.centralRegion(), core.cuboids().front());
}

TEST(Core, DisjointCuboidsNameTheDimension) {
    auto ds = lineStructure(2);
    try {
        validateCore({box(ds, {0, 0}, {1, 1}), box(ds, {0.5, 2}, {1.5, 3})});
        FAIL() << "expected CoreInvalidError";
    } catch (const CoreInvalidError& e) {
        EXPECT_EQ(e.dimension(), "x1");
        EXPECT_NE(std::string(e.what()).find("x1"), std::string::npos);
    }
    EXPECT_THROW(validateCore({}), ModelError);
}

TEST(Concept, RejectsBadParameters) {
    auto ds = lineStructure();
    const Core core = validateCore({box(ds, {0, 0, 0}, {1, 1, 1})});
    const WeightSet w = WeightSet::uniform(*ds, ds->allDomains());
    EXPECT_THROW(Concept::create(core, 0.0, 1.0, w), ModelError);
    EXPECT_THROW(Concept::create(core, 1.5, 1.0, w), ModelError);
    EXPECT_THROW(Concept::create(core, 1.0, 0.0, w), ModelError);
    EXPECT_THROW(Concept::create(core, 1.0, 1.0, WeightSet::uniform(*ds, {0, 1})), WeightError);
}

TEST(DistanceToCuboid, Basics) {
    auto one = lineStructure(1);
    const WeightSet w = WeightSet::uniform(*one, {0});
    const Cuboid C = box(one, {0.9}, {1.0});
    EXPECT_NEAR(distanceToCuboid(Point({0.75}), C, *one, w), 0.15, 1e-12);
    EXPECT_EQ(distanceToCuboid(Point({0.95}), C, *one, w), 0.0);
}

TEST(DistanceToCuboid, MatchesGridSearch) {
    auto ds = structureOf({2, 1});
    std::mt19937_64 rng(11);
    constexpr int kSteps = 200;
    for (int trial = 0; trial < 25; ++trial) {
        const WeightSet w = randomWeights(*ds, rng);
        const Cuboid C = randomCuboid(ds, rng);
        const Point x = randomPoint(3, rng);
        const Point clamped = clampToCuboid(x, C);
        // Brute force over a grid of C that contains the clamped point's coordinates.
        double best = std::numeric_limits<double>::infinity();
        std::vector<std::vector<double>> axes(3);
        for (std::size_t d = 0; d < 3; ++d) {
            for (int i = 0; i <= kSteps; ++i) axes[d].push_back(C.lower(d) + C.extent(d) * i / kSteps);
            axes[d].push_back(clamped[d]);
        }
        for (double a : axes[0]) {
            for (double b : axes[1]) {
                for (double c : axes[2]) best = std::min(best, combinedDistance(x, Point({a, b, c}), *ds, w));
            }
        }
        EXPECT_NEAR(distanceToCuboid(x, C, *ds, w), best, 1e-6);
    }
}

TEST(Membership, FruitValues) {
    const Concept& gs = fruit("granny_smith");
    EXPECT_EQ(membership(gs, Point({0.57, 0.75, 0.40})), 1.0);
    EXPECT_NEAR(membership(fruit("red"), Point({0.75, 0.0, 0.0})), std::exp(-3.0), 1e-12);
    EXPECT_LT(membership(gs, Point({0.61, 0.75, 0.40})), 1.0);
}

TEST(Membership, IsMaxOverFuzzifiedCuboids) {
    const Concept& apple = fruit("apple");
    const auto& ds = apple.structure();
    std::mt19937_64 rng(3);
    for (int i = 0; i < 500; ++i) {
        const Point x = randomPoint(3, rng, 0.0, 1.2);
        double best = 0.0;
        for (const Cuboid& C : apple.core().cuboids()) {
            best = std::max(best, fuzzifiedCuboidMembership(x, C, apple.mu0(), apple.c(), ds, apple.weights()));
        }
        EXPECT_EQ(membership(apple, x), best);
    }
}

TEST(Membership, AlphaCutIsEpsilonNeighbourhood) {
    const Concept& apple = fruit("apple");
    const auto& ds = apple.structure();
    std::mt19937_64 rng(5);
    const double alpha = 0.3;
    const double eps = -std::log(alpha / apple.mu0()) / apple.c();
    for (int i = 0; i < 2000; ++i) {
        const Point x = randomPoint(3, rng, 0.2, 1.3);
        double dist = std::numeric_limits<double>::infinity();
        for (const Cuboid& C : apple.core().cuboids()) dist = std::min(dist, distanceToCuboid(x, C, ds, apple.weights()));
        if (std::abs(dist - eps) < 1e-12) continue;
        EXPECT_EQ(membership(apple, x) >= alpha, dist <= eps);
    }
}

TEST(Membership, AlphaCutsAreStarShapedAroundCentralRegion) {
    const Concept& apple = fruit("apple");
    const Cuboid& P = apple.core().centralRegion();
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        const double alpha = 0.05 + 0.9 * u(rng);
        const Point x = randomPoint(3, rng, 0.3, 1.1);
        const double mx = membership(apple, x);
        if (mx < alpha) continue;
        Point p(std::vector<double>(3));
        for (std::size_t d = 0; d < 3; ++d) p[d] = P.lower(d) + u(rng) * P.extent(d);
        for (int k = 0; k <= 20; ++k) {
            const double t = k / 20.0;
            Point y(std::vector<double>(3));
            for (std::size_t d = 0; d < 3; ++d) y[d] = p[d] + t * (x[d] - p[d]);
            EXPECT_GE(membership(apple, y), alpha - 1e-9);
        }
    }
}

TEST(Membership, StrictlyBelowMu0OutsideCoreAndVanishesFarAway) {
    auto ds = lineStructure(2);
    const Concept s = conceptOf({box(ds, {0, 0}, {1, 1})}, 0.8, 3.0, WeightSet::uniform(*ds, ds->allDomains()));
    EXPECT_EQ(membership(s, Point({0.5, 1.0})), 0.8);
    EXPECT_LT(membership(s, Point({0.5, 1.001})), 0.8);
    EXPECT_GT(membership(s, Point({0.5, 1.001})), 0.0);
    EXPECT_LT(membership(s, Point({100.0, -100.0})), 1e-100);
}

TEST(Projection, AppleOntoColor) {
    const Concept p = projectConcept(fruit("apple"), {0});
    EXPECT_EQ(p.domains(), DomainSet{0});
    ASSERT_EQ(p.core().cuboids().size(), 3u);
    double lo = 1.0, hi = 0.0;
    for (const Cuboid& C : p.core().cuboids()) {
        lo = std::min(lo, C.lower(0));
        hi = std::max(hi, C.upper(0));
        EXPECT_EQ(C.lower(1), -kInf);
    }
    EXPECT_EQ(lo, 0.5);
    EXPECT_EQ(hi, 1.0);
    EXPECT_NEAR(p.weights().domainWeight(0), 1.0, 1e-12);
    EXPECT_EQ(p.c(), 10.0);
}

TEST(Projection, IdentityAndComposition) {
    const Concept& apple = fruit("apple");
    EXPECT_EQ(projectConcept(apple, {0, 1, 2}), apple);
    EXPECT_EQ(projectConcept(fruit("red"), {0}), fruit("red"));
    const Concept twoStep = projectConcept(projectConcept(apple, {1, 2}), {2});
    const Concept direct = projectConcept(apple, {2});
    EXPECT_EQ(twoStep.core(), direct.core());
    EXPECT_NEAR(twoStep.weights().domainWeight(2), direct.weights().domainWeight(2), 1e-12);
    EXPECT_THROW(projectConcept(apple, {}), ArgumentError);
    EXPECT_THROW(projectConcept(fruit("red"), {1}), ArgumentError);
}

TEST(Midpoint, FruitMidpoints) {
    const Point a = centralMidpoint(fruit("apple"), {0, 1, 2});
    EXPECT_NEAR(a[0], 0.75, 1e-12);
    EXPECT_NEAR(a[1], 0.725, 1e-12);
    EXPECT_NEAR(a[2], 0.475, 1e-12);
    const Point g = centralMidpoint(fruit("granny_smith"), {0, 1, 2});
    EXPECT_NEAR(g[0], 0.575, 1e-12);
    EXPECT_NEAR(g[1], 0.75, 1e-12);
    EXPECT_NEAR(g[2], 0.40, 1e-12);
    const Point r = centralMidpoint(fruit("red"), {0});
    EXPECT_NEAR(r[0], 0.95, 1e-12);
    EXPECT_TRUE(std::isnan(r[1]));
    EXPECT_THROW(centralMidpoint(fruit("red"), {0, 1}), MidpointUndefinedError);
}
