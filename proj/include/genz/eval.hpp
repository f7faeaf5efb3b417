#ifndef GENZ_EVAL_HPP
#define GENZ_EVAL_HPP

#include "genz/io.hpp"

namespace genz {

struct EvaluationError : std::runtime_error {
    explicit EvaluationError(const std::string &what) : std::runtime_error(what) {}
};

struct ErrorStats {
    double mean = 0.0;
    double max = 0.0;
    double rmse = 0.0;
    double std_dev = 0.0;
};

struct EvalReport {
    ErrorStats ape;  // translation error after rigid alignment, meters
    ErrorStats rpe;  // relative translation error at fixed frame delta, meters
    double rel_trans_percent = 0.0;  // KITTI segment-based average
    int n_associated = 0;
    int n_dropped = 0;
};

/// Closed-form rigid fit (rotation + translation, no scale) minimizing
/// sum ||R a_i + t - b_i||^2.
Pose AlignRigid(const std::vector<Vec3> &a, const std::vector<Vec3> &b);

/// APE after rigid alignment, RPE at rpe_delta frames, segment-based
/// relative translational error averaged over segment_lengths.
/// Association is nearest-timestamp within 0.05 s.
EvalReport Evaluate(const Trajectory &estimate, const Trajectory &truth, int rpe_delta,
                    const std::vector<double> &segment_lengths);

}  // namespace genz

#endif
