#ifndef GENZ_PIPELINE_HPP
#define GENZ_PIPELINE_HPP

#include <stdexcept>
#include <vector>

#include "genz/solver.hpp"
#include "genz/voxel_map.hpp"

namespace genz {

struct EmptyScanError : std::runtime_error {
    EmptyScanError() : std::runtime_error("scan empty after preprocessing") {}
};

/// One LiDAR scan in the sensor frame.
struct ScanFrame {
    std::vector<Vec3> points;
    double timestamp = 0.0;
};

struct ScanDiagnostics {
    double alpha_final = 0.0;
    int n_planar = 0;
    int n_nonplanar = 0;
    int iterations = 0;
    double condition_number_median = 0.0;
    int n_correspondences = 0;
    double runtime_seconds = 0.0;
    bool registration_failed = false;
};

struct PipelineConfig {
    IcpConfig icp;
    double map_voxel_size = 1.0;
    int max_points_per_voxel = 20;
    double scan_voxel_size = 0.5;
    double min_range = 0.5;
    double max_range = 100.0;      // scan range clip
    double map_max_range = 100.0;  // local-map prune radius
    bool insert_raw = false;  // insert the raw (range-clipped) scan instead of downsampled
};

/// Sequential odometry state: local map, pose history, outputs.
class OdometryPipeline {
public:
    explicit OdometryPipeline(const PipelineConfig &cfg);

    /// Range clip then voxel downsample. Throws EmptyScanError if nothing survives.
    std::vector<Vec3> Preprocess(const ScanFrame &scan) const;

    /// Constant-velocity initial guess from the last two poses.
    Pose PredictInitial() const;

    std::pair<Pose, ScanDiagnostics> ProcessScan(const ScanFrame &scan);

    const std::vector<std::pair<double, Pose>> &trajectory() const { return trajectory_; }
    const std::vector<ScanDiagnostics> &diagnostics() const { return diagnostics_; }
    const VoxelGrid &map() const { return map_; }

private:
    PipelineConfig cfg_;
    VoxelGrid map_;
    Pose last_pose_;
    Pose prev_pose_;
    size_t n_processed_ = 0;
    std::vector<std::pair<double, Pose>> trajectory_;
    std::vector<ScanDiagnostics> diagnostics_;
};

}  // namespace genz

#endif
