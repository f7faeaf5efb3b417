#include "genz/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace genz {

namespace {

double Median(std::vector<double> values) {
    if (values.empty()) return 0.0;
    std::sort(values.begin(), values.end());
    const size_t n = values.size();
    return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace

OdometryPipeline::OdometryPipeline(const PipelineConfig &cfg)
    : cfg_(cfg), map_(cfg.map_voxel_size, cfg.max_points_per_voxel) {}

std::vector<Vec3> OdometryPipeline::Preprocess(const ScanFrame &scan) const {
    std::vector<Vec3> clipped;
    clipped.reserve(scan.points.size());
    for (const auto &p : scan.points) {
        const double r = p.norm();
        if (r >= cfg_.min_range && r <= cfg_.max_range) clipped.push_back(p);
    }
    auto out = VoxelDownsample(clipped, cfg_.scan_voxel_size);
    if (out.empty()) throw EmptyScanError{};
    return out;
}

Pose OdometryPipeline::PredictInitial() const {
    if (n_processed_ == 0) return Pose::Identity();
    if (n_processed_ == 1) return last_pose_;
    return last_pose_ * (prev_pose_.inverse() * last_pose_);
}

std::pair<Pose, ScanDiagnostics> OdometryPipeline::ProcessScan(const ScanFrame &scan) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto points = Preprocess(scan);

    ScanDiagnostics diag;
    Pose pose;
    if (n_processed_ == 0) {
        pose = Pose::Identity();  // bootstrap: map seeded at identity, no registration
    } else {
        const Pose initial = PredictInitial();
        try {
            auto result = Register(points, map_, initial, initial.translation, cfg_.icp);
            pose = result.pose;
            if (!result.trace.empty()) {
                const auto &last = result.trace.back();
                diag.alpha_final = last.alpha;
                diag.n_planar = last.n_planar;
                diag.n_nonplanar = last.n_nonplanar;
                diag.n_correspondences = last.n_planar + last.n_nonplanar;
            }
            diag.iterations = static_cast<int>(result.trace.size());
            std::vector<double> conds;
            conds.reserve(result.trace.size());
            for (const auto &rec : result.trace) conds.push_back(rec.condition_number);
            diag.condition_number_median = Median(std::move(conds));
        } catch (const RegistrationError &) {
            pose = initial;  // keep the constant-velocity guess and move on
            diag.registration_failed = true;
        }
    }

    if (cfg_.insert_raw) {
        std::vector<Vec3> clipped;
        for (const auto &p : scan.points) {
            const double r = p.norm();
            if (r >= cfg_.min_range && r <= cfg_.max_range) clipped.push_back(p);
        }
        map_.InsertScan(clipped, pose);
    } else {
        map_.InsertScan(points, pose);
    }
    map_.PruneBeyond(pose.translation, cfg_.map_max_range);

    prev_pose_ = last_pose_;
    last_pose_ = pose;
    ++n_processed_;
    trajectory_.emplace_back(scan.timestamp, pose);

    diag.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    diagnostics_.push_back(diag);
    return {pose, diag};
}

}  // namespace genz
