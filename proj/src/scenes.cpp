#include "genz/scenes.hpp"

#include <cmath>

namespace genz {

namespace {

// Axis-aligned rectangle sampler: origin corner + two edge vectors.
void SampleRect(std::vector<LabeledPoint> &out, SplitMix64 &rng, const Vec3 &origin,
                const Vec3 &edge_u, const Vec3 &edge_v, double density, SurfaceLabel label) {
    const double area = edge_u.norm() * edge_v.norm();
    const auto n = static_cast<size_t>(std::llround(area * density));
    for (size_t i = 0; i < n; ++i) {
        const double u = rng.uniform();
        const double v = rng.uniform();
        out.push_back({origin + u * edge_u + v * edge_v, label});
    }
}

void SampleCorridorShell(std::vector<LabeledPoint> &out, SplitMix64 &rng, double length,
                         double width, double height, double density, bool end_caps) {
    const double hw = width / 2.0;
    const double hh = height / 2.0;
    const Vec3 ex(length, 0, 0);
    SampleRect(out, rng, {0, -hw, -hh}, ex, {0, width, 0}, density, SurfaceLabel::Floor);
    SampleRect(out, rng, {0, -hw, hh}, ex, {0, width, 0}, density, SurfaceLabel::Ceiling);
    SampleRect(out, rng, {0, -hw, -hh}, ex, {0, 0, height}, density, SurfaceLabel::WallRight);
    SampleRect(out, rng, {0, hw, -hh}, ex, {0, 0, height}, density, SurfaceLabel::WallLeft);
    if (end_caps) {
        SampleRect(out, rng, {0, -hw, -hh}, {0, width, 0}, {0, 0, height}, density,
                   SurfaceLabel::WallBack);
        SampleRect(out, rng, {length, -hw, -hh}, {0, width, 0}, {0, 0, height}, density,
                   SurfaceLabel::WallFront);
    }
}

void SampleClutter(std::vector<LabeledPoint> &out, SplitMix64 &rng, double extent,
                   int n_clusters, double sigma, double density) {
    const auto per_cluster = static_cast<size_t>(
        std::max<long long>(50, std::llround(density * 4.0 * M_PI * sigma * sigma)));
    for (int c = 0; c < n_clusters; ++c) {
        const Vec3 center(rng.uniform(0.0, extent), rng.uniform(-extent / 2.0, extent / 2.0),
                          rng.uniform(-extent / 4.0, extent / 4.0));
        for (size_t i = 0; i < per_cluster; ++i) {
            const Vec3 offset(sigma * rng.normal(), sigma * rng.normal(), sigma * rng.normal());
            out.push_back({center + offset, SurfaceLabel::Cluster});
        }
    }
}

}  // namespace

Scene BuildScene(const SceneSpec &spec) {
    SplitMix64 rng(spec.seed);
    Scene scene;
    switch (spec.kind) {
        case SceneKind::Corridor:
            SampleCorridorShell(scene.points, rng, spec.length, spec.width, spec.height,
                                spec.surface_density, false);
            break;
        case SceneKind::Room:
            SampleCorridorShell(scene.points, rng, spec.length, spec.width, spec.height,
                                spec.surface_density, true);
            break;
        case SceneKind::Clutter:
            SampleClutter(scene.points, rng, spec.extent, spec.n_clusters, spec.cluster_sigma,
                          spec.surface_density);
            break;
        case SceneKind::Mixed: {
            SampleCorridorShell(scene.points, rng, spec.length, spec.width, spec.height,
                                spec.surface_density * (1.0 - spec.clutter_fraction), false);
            const int clusters =
                std::max(1, static_cast<int>(std::llround(spec.n_clusters * spec.clutter_fraction)));
            SampleClutter(scene.points, rng, spec.length, clusters, spec.cluster_sigma,
                          spec.surface_density * spec.clutter_fraction);
            break;
        }
    }
    return scene;
}

ScanFrame SimulateScan(const Scene &scene, const Pose &sensor_pose, double max_range,
                       double subsample, double noise_sigma, uint64_t seed) {
    SplitMix64 rng(seed);
    const Pose to_sensor = sensor_pose.inverse();
    const double r2 = max_range * max_range;
    ScanFrame frame;
    for (const auto &lp : scene.points) {
        if ((lp.position - sensor_pose.translation).squaredNorm() > r2) continue;
        if (subsample < 1.0 && rng.uniform() >= subsample) continue;
        Vec3 p = to_sensor * lp.position;
        if (noise_sigma > 0.0) {
            p += Vec3(noise_sigma * rng.normal(), noise_sigma * rng.normal(),
                      noise_sigma * rng.normal());
        }
        frame.points.push_back(p);
    }
    if (frame.points.empty()) throw EmptyScanError{};
    return frame;
}

std::vector<Pose> StraightTrajectory(double length, double step) {
    std::vector<Pose> poses;
    const int n = static_cast<int>(std::llround(length / step));
    for (int i = 0; i <= n; ++i) {
        Pose p;
        p.translation = Vec3(i * step, 0.0, 0.0);
        poses.push_back(p);
    }
    return poses;
}

std::vector<Pose> ZigzagTrajectory(double length, double step, double zigzag_deg) {
    std::vector<Pose> poses;
    const int n = static_cast<int>(std::llround(length / step));
    const double yaw = zigzag_deg * M_PI / 180.0;
    for (int i = 0; i <= n; ++i) {
        Pose p;
        p.translation = Vec3(i * step, 0.0, 0.0);
        const double sign = (i % 2 == 0) ? 1.0 : -1.0;
        p.rotation = ExpSO3(Vec3(0.0, 0.0, sign * yaw));
        poses.push_back(p);
    }
    return poses;
}

SimulatedSequence SimulateSequence(const Scene &scene, const std::vector<Pose> &trajectory,
                                   double max_range, double subsample, double noise_sigma,
                                   uint64_t seed) {
    SimulatedSequence seq;
    SplitMix64 seeder(seed);
    for (size_t i = 0; i < trajectory.size(); ++i) {
        const uint64_t scan_seed = seeder.next();
        auto frame = SimulateScan(scene, trajectory[i], max_range, subsample, noise_sigma,
                                  scan_seed);
        frame.timestamp = 0.1 * static_cast<double>(i);
        seq.scans.push_back(std::move(frame));
        seq.ground_truth.emplace_back(0.1 * static_cast<double>(i), trajectory[i]);
    }
    return seq;
}

}  // namespace genz
