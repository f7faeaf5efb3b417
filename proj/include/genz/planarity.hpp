#ifndef GENZ_PLANARITY_HPP
#define GENZ_PLANARITY_HPP

#include <stdexcept>
#include <vector>

#include "genz/geometry.hpp"
#include "genz/voxel_map.hpp"

namespace genz {

struct DegenerateNeighborhoodError : std::runtime_error {
    DegenerateNeighborhoodError() : std::runtime_error("neighborhood covariance has zero trace") {}
};

/// Eigen-decomposition of a symmetric 3x3, eigenvalues sorted descending.
/// Negative values within 1e-12 of zero (PSD rounding) are clamped to zero.
struct EigenTriple {
    Vec3 values;
    Mat3 vectors;  // columns match values
};

struct Correspondence {
    Vec3 source;  // p, map frame after current transform
    Vec3 target;  // q, map frame
};

struct ClassifiedCorrespondence {
    Correspondence pair;
    bool planar = false;
    Vec3 normal = Vec3::Zero();  // unit, sensor-facing; valid iff planar
    bool has_normal = false;     // neighborhood supported a normal at all
};

struct ClassifierConfig {
    int tau_num = 5;             // minimum neighbors for a plane fit
    double tau_planar = 0.1;     // surface-variation threshold, (0, 1/3]
    double neighbor_radius = 1.5;
    int neighbor_max_count = 20;
};

/// Population covariance (divide by N) about the centroid.
Mat3 CovarianceOf(const std::vector<Vec3> &points);

EigenTriple Eigen3Sym(const Mat3 &m);

/// lambda3 / (lambda1 + lambda2 + lambda3), in [0, 1/3].
/// Throws DegenerateNeighborhoodError on zero trace.
double SurfaceVariation(const EigenTriple &e);

/// Planarity decision from the target's map neighborhood. The normal is the
/// smallest-eigenvalue direction, oriented toward the sensor origin.
ClassifiedCorrespondence Classify(const Correspondence &pair, const VoxelGrid &map,
                                  const ClassifierConfig &cfg, const Vec3 &sensor_origin);

}  // namespace genz

#endif
