#ifndef GENZ_GEOMETRY_HPP
#define GENZ_GEOMETRY_HPP

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <cmath>

namespace genz {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;

/// 6-DoF increment, ordered [translation; rotation(axis-angle)].
struct Twist {
    Vec3 t = Vec3::Zero();
    Vec3 r = Vec3::Zero();

    Vec6 vector() const {
        Vec6 v;
        v << t, r;
        return v;
    }
    static Twist FromVector(const Vec6 &v) { return {v.head<3>(), v.tail<3>()}; }
    double norm() const { return std::sqrt(t.squaredNorm() + r.squaredNorm()); }
};

inline Mat3 Skew(const Vec3 &v) {
    Mat3 s;
    s << 0.0, -v.z(), v.y(),  //
        v.z(), 0.0, -v.x(),   //
        -v.y(), v.x(), 0.0;
    return s;
}

/// Rodrigues rotation for an axis-angle vector. Below 1e-8 rad the
/// second-order series is used to avoid dividing by a vanishing angle.
inline Mat3 ExpSO3(const Vec3 &r) {
    const double theta = r.norm();
    const Mat3 s = Skew(r);
    if (theta < 1e-8) {
        return Mat3::Identity() + s + 0.5 * s * s;
    }
    const double a = std::sin(theta) / theta;
    const double b = (1.0 - std::cos(theta)) / (theta * theta);
    return Mat3::Identity() + a * s + b * s * s;
}

/// Rigid transform, rotation kept orthonormal by construction (updates go
/// through ExpSO3, never through raw matrix arithmetic).
struct Pose {
    Mat3 rotation = Mat3::Identity();
    Vec3 translation = Vec3::Zero();

    static Pose Identity() { return {}; }

    Vec3 operator*(const Vec3 &p) const { return rotation * p + translation; }

    Pose operator*(const Pose &other) const {
        return {rotation * other.rotation, rotation * other.translation + translation};
    }

    Pose inverse() const {
        Mat3 rt = rotation.transpose();
        return {rt, -(rt * translation)};
    }

    /// Left-multiplied retraction of a solver increment.
    Pose retract(const Twist &delta) const {
        Pose d{ExpSO3(delta.r), delta.t};
        return d * (*this);
    }
};

inline Pose Compose(const Pose &a, const Pose &b) { return a * b; }
inline Vec3 Apply(const Pose &a, const Vec3 &p) { return a * p; }
inline Pose Inverse(const Pose &a) { return a.inverse(); }

}  // namespace genz

#endif
