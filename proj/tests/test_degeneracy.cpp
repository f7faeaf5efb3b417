#include <doctest.h>

#include "genz/degeneracy.hpp"
#include "genz/random.hpp"

using namespace genz;

TEST_CASE("translational block extraction") {
    LinearSystem sys;
    sys.A = Mat6::Identity();
    CHECK(TranslationalBlock(sys).isApprox(Mat3::Identity(), 0.0));

    sys.A.setZero();
    sys.A.topLeftCorner<3, 3>() = Vec3(4, 1, 1).asDiagonal();
    sys.A.bottomRightCorner<3, 3>() = Vec3(7, 8, 9).asDiagonal();
    CHECK(TranslationalBlock(sys).isApprox(Mat3(Vec3(4, 1, 1).asDiagonal()), 0.0));
}

TEST_CASE("translational block equals direct index extraction on random PSD A") {
    SplitMix64 rng(91);
    for (int t = 0; t < 100; ++t) {
        Mat6 m;
        for (int r = 0; r < 6; ++r)
            for (int c = 0; c < 6; ++c) m(r, c) = rng.uniform(-1.0, 1.0);
        LinearSystem sys;
        sys.A = m * m.transpose();
        const Mat3 block = TranslationalBlock(sys);
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) CHECK(block(r, c) == sys.A(r, c));
    }
}

TEST_CASE("condition number of identity and diagonal matrices") {
    CHECK(ConditionNumber(Mat3::Identity()) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ConditionNumber(Vec3(4, 1, 1).asDiagonal()) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("rank-deficient block flags infinity") {
    Mat3 a = Vec3(1, 1, 0).asDiagonal();
    CHECK(std::isinf(ConditionNumber(a)));
}

TEST_CASE("asymmetric input is a contract violation") {
    Mat3 a = Mat3::Identity();
    a(0, 1) = 1e-6;
    CHECK_THROWS_AS(ConditionNumber(a), AsymmetricMatrixError);
}

TEST_CASE("condition number is scale invariant and at least one") {
    SplitMix64 rng(97);
    for (int t = 0; t < 200; ++t) {
        Mat3 m;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) m(r, c) = rng.uniform(-1.0, 1.0);
        const Mat3 a = m * m.transpose() + 0.05 * Mat3::Identity();
        const double k = ConditionNumber(a);
        CHECK(k >= 1.0);
        const double k_scaled = ConditionNumber(Mat3(13.7 * a));
        CHECK(k == doctest::Approx(k_scaled).epsilon(1e-9));
    }
}
