#ifndef GENZ_SOLVER_HPP
#define GENZ_SOLVER_HPP

#include <stdexcept>
#include <vector>

#include "genz/geometry.hpp"
#include "genz/planarity.hpp"
#include "genz/residuals.hpp"
#include "genz/voxel_map.hpp"

namespace genz {

struct NoCorrespondencesError : std::runtime_error {
    NoCorrespondencesError() : std::runtime_error("no correspondences") {}
};

struct RegistrationError : std::runtime_error {
    explicit RegistrationError(int iteration)
        : std::runtime_error("registration failed: no correspondences at iteration " +
                             std::to_string(iteration)),
          iteration(iteration) {}
    int iteration;
};

struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string &what) : std::runtime_error(what) {}
};

/// Normal equations of the blended cost, A delta = -b.
struct LinearSystem {
    Mat6 A = Mat6::Zero();
    Vec6 b = Vec6::Zero();
};

enum class MetricMode { Genz, ForcePointToPlane, ForcePointToPoint };

struct IcpConfig {
    int max_iterations = 100;
    double convergence_eps = 1e-4;
    double max_corr_distance = 2.0;
    ClassifierConfig classifier;
    MetricMode metric_mode = MetricMode::Genz;
    // reuse the class assigned to each source point on the first iteration
    // instead of reclassifying its current correspondence every iteration
    bool classify_once_per_scan = false;
};

struct IterationRecord {
    double alpha = 0.0;
    int n_planar = 0;
    int n_nonplanar = 0;
    double delta_norm = 0.0;
    double condition_number = 0.0;  // translational block, +inf when rank-deficient
    double cost_planar = 0.0;       // sum of squared exact plane residuals at the new pose
    double cost_point = 0.0;
    bool used_pseudoinverse = false;
};

struct RegistrationResult {
    Pose pose;
    std::vector<IterationRecord> trace;
};

/// Classified terms of one iteration, kept per metric for weighted assembly.
struct BlendTerms {
    std::vector<PlaneTerm> plane;
    std::vector<PointTerm> point;
};

/// alpha = N_pl / (N_pl + N_po). Throws NoCorrespondencesError on zero total.
double ComputeAlpha(int n_planar, int n_nonplanar);

/// A = alpha sum J_pl^T J_pl + (1-alpha) sum J_po^T J_po, b likewise with offsets.
LinearSystem AccumulateSystem(const BlendTerms &terms, double alpha);

/// Minimizer of ||A delta + b||^2: -A^{-1} b via LDLT, with an
/// eigenvalue-truncated pseudo-inverse backstop for rank-deficient A.
/// Throws NumericalError on non-finite input.
Twist SolveSystem(const LinearSystem &sys, bool *used_pseudoinverse = nullptr);

/// Scan-to-map ICP with planarity-adaptive metric blending.
RegistrationResult Register(const std::vector<Vec3> &source, const VoxelGrid &map,
                            const Pose &initial, const Vec3 &sensor_origin,
                            const IcpConfig &cfg);

}  // namespace genz

#endif
