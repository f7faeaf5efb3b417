#ifndef GENZ_RESIDUALS_HPP
#define GENZ_RESIDUALS_HPP

#include "genz/geometry.hpp"

namespace genz {

/// Linearized point-to-plane term: e_pl ~ jacobian * delta + offset.
struct PlaneTerm {
    Eigen::Matrix<double, 1, 6> jacobian;  // [n^T  (p x n)^T]
    double offset;                         // (p - q) . n
};

/// Linearized point-to-point term: e_po ~ jacobian * delta + offset.
struct PointTerm {
    Eigen::Matrix<double, 3, 6> jacobian;  // [I3  -skew(p)]
    Vec3 offset;                           // p - q
};

/// Exact residual (R p + t - q) . n.
inline double PlaneResidual(const Vec3 &p, const Vec3 &q, const Vec3 &n, const Pose &delta) {
    return (delta * p - q).dot(n);
}

inline PlaneTerm PlaneTermOf(const Vec3 &p, const Vec3 &q, const Vec3 &n) {
    PlaneTerm term;
    term.jacobian << n.transpose(), p.cross(n).transpose();
    term.offset = (p - q).dot(n);
    return term;
}

/// Exact residual R p + t - q.
inline Vec3 PointResidual(const Vec3 &p, const Vec3 &q, const Pose &delta) {
    return delta * p - q;
}

inline PointTerm PointTermOf(const Vec3 &p, const Vec3 &q) {
    PointTerm term;
    term.jacobian << Mat3::Identity(), -Skew(p);
    term.offset = p - q;
    return term;
}

}  // namespace genz

#endif
