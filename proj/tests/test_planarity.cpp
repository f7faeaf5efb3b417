#include <doctest.h>

#include "genz/planarity.hpp"
#include "genz/random.hpp"
#include "oracles.hpp"

using namespace genz;

namespace {

Vec3 RandomVec(SplitMix64 &rng, double scale) {
    return {rng.uniform(-scale, scale), rng.uniform(-scale, scale), rng.uniform(-scale, scale)};
}

Mat3 RandomSymmetric(SplitMix64 &rng, double scale) {
    Mat3 m;
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) m(i, j) = m(j, i) = rng.uniform(-scale, scale);
    return m;
}

// dense plane patch z = 0 around the origin
VoxelGrid PlaneMap(double half_extent, double spacing) {
    VoxelGrid map(1.0, 100);
    for (double x = -half_extent; x <= half_extent; x += spacing)
        for (double y = -half_extent; y <= half_extent; y += spacing)
            map.InsertPoint(Vec3(x, y, 0.0));
    return map;
}

}  // namespace

TEST_CASE("covariance of a single point is zero") {
    CHECK(CovarianceOf({Vec3(1, 2, 3)}).isZero(0.0));
}

TEST_CASE("covariance of a symmetric pair") {
    const Mat3 cov = CovarianceOf({Vec3(1, 0, 0), Vec3(-1, 0, 0)});
    Mat3 expected = Mat3::Zero();
    expected(0, 0) = 1.0;
    CHECK((cov - expected).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("covariance matches a two-pass oracle on random points") {
    SplitMix64 rng(21);
    std::vector<Vec3> pts;
    for (int i = 0; i < 100; ++i) pts.push_back(RandomVec(rng, 5.0));
    CHECK((CovarianceOf(pts) - oracles::TwoPassCovariance(pts)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("eigen decomposition of identity and a diagonal matrix") {
    auto e = Eigen3Sym(Mat3::Identity());
    CHECK(e.values.isApprox(Vec3(1, 1, 1), 1e-12));

    Mat3 d = Vec3(3, 2, 1).asDiagonal();
    e = Eigen3Sym(d);
    CHECK(e.values.isApprox(Vec3(3, 2, 1), 1e-12));
    for (int i = 0; i < 3; ++i) {
        CHECK(std::abs(e.vectors.col(i).cwiseAbs().maxCoeff() - 1.0) < 1e-12);
    }
}

TEST_CASE("eigenvalues match the closed-form cubic oracle; eigen equation holds") {
    SplitMix64 rng(23);
    for (int i = 0; i < 1000; ++i) {
        const Mat3 m = RandomSymmetric(rng, 4.0);
        const auto e = Eigen3Sym(m);
        const Vec3 want = oracles::CubicEigenvalues(m);
        for (int k = 0; k < 3; ++k) {
            CHECK(std::abs(e.values[k] - want[k]) < 1e-8);
            const double scale = std::max(1.0, std::abs(want[0]));
            CHECK((m * e.vectors.col(k) - e.values[k] * e.vectors.col(k)).norm() <
                  1e-7 * scale);
        }
        // orthogonality of returned basis
        CHECK((e.vectors.transpose() * e.vectors - Mat3::Identity()).cwiseAbs().maxCoeff() <
              1e-8);
    }
}

TEST_CASE("surface variation: plane, isotropic, direct ratio") {
    EigenTriple e;
    e.vectors = Mat3::Identity();
    e.values = Vec3(1, 1, 0);
    CHECK(SurfaceVariation(e) == 0.0);
    e.values = Vec3(1, 1, 1);
    CHECK(SurfaceVariation(e) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    e.values = Vec3(5, 3, 2);
    CHECK(SurfaceVariation(e) == doctest::Approx(0.2).epsilon(1e-15));
}

TEST_CASE("zero-trace surface variation signals a degenerate neighborhood") {
    EigenTriple e;
    e.values = Vec3::Zero();
    e.vectors = Mat3::Identity();
    CHECK_THROWS_AS(SurfaceVariation(e), DegenerateNeighborhoodError);
}

TEST_CASE("too few neighbors means non-planar") {
    VoxelGrid map(1.0, 20);
    map.InsertPoint(Vec3(0, 0, 0));
    map.InsertPoint(Vec3(0.1, 0, 0));
    ClassifierConfig cfg;
    cfg.tau_num = 5;
    const auto c = Classify({Vec3(0, 0, 0.05), Vec3(0, 0, 0)}, map, cfg, Vec3(0, 0, 5));
    CHECK(!c.planar);
    CHECK(!c.has_normal);
}

TEST_CASE("noiseless plane classifies planar with a sensor-facing +z normal") {
    const auto map = PlaneMap(3.0, 0.2);
    ClassifierConfig cfg;
    const auto c = Classify({Vec3(0.01, 0, 0.02), Vec3(0, 0, 0)}, map, cfg, Vec3(0, 0, 5));
    CHECK(c.planar);
    REQUIRE(c.has_normal);
    CHECK(std::abs(c.normal.norm() - 1.0) < 1e-9);
    CHECK(c.normal.dot(Vec3(0, 0, 1)) > 0.999);  // oriented toward the sensor above
}

TEST_CASE("isotropic Gaussian blob classifies non-planar") {
    SplitMix64 rng(29);
    VoxelGrid map(1.0, 10000);
    for (int i = 0; i < 10000; ++i) {
        map.InsertPoint(Vec3(0.5 * rng.normal(), 0.5 * rng.normal(), 0.5 * rng.normal()));
    }
    ClassifierConfig cfg;
    cfg.neighbor_max_count = 200;
    const auto c = Classify({Vec3::Zero(), Vec3::Zero()}, map, cfg, Vec3(0, 0, 5));
    CHECK(!c.planar);
    CHECK(c.has_normal);
}

TEST_CASE("lowering tau_planar never makes a non-planar pair planar") {
    const auto map = PlaneMap(2.0, 0.25);
    ClassifierConfig strict;
    strict.tau_planar = 0.01;
    ClassifierConfig loose;
    loose.tau_planar = 0.3;
    const Correspondence pair{Vec3(0.1, 0.1, 0), Vec3(0, 0, 0)};
    const bool strict_planar = Classify(pair, map, strict, Vec3(0, 0, 5)).planar;
    const bool loose_planar = Classify(pair, map, loose, Vec3(0, 0, 5)).planar;
    if (strict_planar) CHECK(loose_planar);
}

TEST_CASE("rotation equivariance of the normal and invariance of the decision") {
    SplitMix64 rng(31);
    // tilted noisy-free plane patch
    std::vector<Vec3> patch;
    for (double x = -2; x <= 2; x += 0.25)
        for (double y = -2; y <= 2; y += 0.25) patch.push_back(Vec3(x, y, 0.3 * x));
    const Vec3 sensor(0, 0, 10);

    for (int trial = 0; trial < 20; ++trial) {
        const Mat3 R = ExpSO3(RandomVec(rng, 2.0));

        VoxelGrid map(1.0, 1000);
        for (const auto &p : patch) map.InsertPoint(p);
        ClassifierConfig cfg;
        const auto base = Classify({patch[0], Vec3::Zero()}, map, cfg, sensor);

        VoxelGrid rotated(1.0, 1000);
        for (const auto &p : patch) rotated.InsertPoint(R * p);
        const auto rot =
            Classify({R * patch[0], Vec3::Zero()}, rotated, cfg, R * sensor);

        CHECK(base.planar == rot.planar);
        if (base.has_normal && rot.has_normal) {
            CHECK((R * base.normal - rot.normal).norm() < 1e-7);
        }
    }
}

TEST_CASE("surface variation is scale invariant") {
    SplitMix64 rng(37);
    std::vector<Vec3> pts;
    for (int i = 0; i < 50; ++i) pts.push_back(RandomVec(rng, 2.0));
    std::vector<Vec3> scaled;
    for (const auto &p : pts) scaled.push_back(7.5 * p);
    const double v1 = SurfaceVariation(Eigen3Sym(CovarianceOf(pts)));
    const double v2 = SurfaceVariation(Eigen3Sym(CovarianceOf(scaled)));
    CHECK(v1 == doctest::Approx(v2).epsilon(1e-9));
}

TEST_CASE("every interior point of a dense plane is planar") {
    const auto map = PlaneMap(3.0, 0.2);
    ClassifierConfig cfg;
    for (double x = -1.5; x <= 1.5; x += 0.5) {
        for (double y = -1.5; y <= 1.5; y += 0.5) {
            const auto c = Classify({Vec3(x, y, 0), Vec3(x, y, 0)}, map, cfg, Vec3(0, 0, 5));
            CHECK(c.planar);
        }
    }
}
