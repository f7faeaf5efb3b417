#include "genz/planarity.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace genz {

Mat3 CovarianceOf(const std::vector<Vec3> &points) {
    const double n = static_cast<double>(points.size());
    Vec3 mean = Vec3::Zero();
    for (const auto &p : points) mean += p;
    mean /= n;
    Mat3 cov = Mat3::Zero();
    for (const auto &p : points) {
        const Vec3 d = p - mean;
        cov += d * d.transpose();
    }
    return cov / n;
}

EigenTriple Eigen3Sym(const Mat3 &m) {
    Eigen::SelfAdjointEigenSolver<Mat3> solver(m);
    // solver sorts ascending; flip to descending
    EigenTriple out;
    for (int i = 0; i < 3; ++i) {
        double v = solver.eigenvalues()[2 - i];
        if (v < 0.0 && v >= -1e-12) v = 0.0;  // rounding on PSD input
        out.values[i] = v;
        out.vectors.col(i) = solver.eigenvectors().col(2 - i);
    }
    return out;
}

double SurfaceVariation(const EigenTriple &e) {
    const double trace = e.values.sum();
    if (trace <= 0.0) throw DegenerateNeighborhoodError{};
    return e.values[2] / trace;
}

ClassifiedCorrespondence Classify(const Correspondence &pair, const VoxelGrid &map,
                                  const ClassifierConfig &cfg, const Vec3 &sensor_origin) {
    ClassifiedCorrespondence out{pair};
    const auto neighbors =
        map.RadiusNeighbors(pair.target, cfg.neighbor_radius, cfg.neighbor_max_count);
    if (static_cast<int>(neighbors.size()) < cfg.tau_num) return out;

    const Mat3 cov = CovarianceOf(neighbors);
    const EigenTriple eig = Eigen3Sym(cov);
    double variation;
    try {
        variation = SurfaceVariation(eig);
    } catch (const DegenerateNeighborhoodError &) {
        return out;  // all neighbors coincide
    }

    Vec3 normal = eig.vectors.col(2);
    if (normal.dot(sensor_origin - pair.target) < 0.0) normal = -normal;
    out.normal = normal;
    out.has_normal = true;
    out.planar = variation < cfg.tau_planar;
    return out;
}

}  // namespace genz
