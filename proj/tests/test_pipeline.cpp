#include <doctest.h>

#include "genz/pipeline.hpp"
#include "genz/scenes.hpp"

using namespace genz;

namespace {
PipelineConfig DeskConfig() {
    PipelineConfig cfg;
    cfg.map_voxel_size = 0.5;
    cfg.scan_voxel_size = 0.25;
    cfg.max_points_per_voxel = 30;
    cfg.icp.classifier.neighbor_radius = 0.75;
    return cfg;
}

SimulatedSequence RoomSequence(int n_scans, double noise) {
    SceneSpec spec;
    spec.kind = SceneKind::Room;
    spec.length = 10.0;
    spec.width = 10.0;
    spec.height = 3.0;
    spec.surface_density = 60.0;
    spec.seed = 12;
    const Scene scene = BuildScene(spec);
    std::vector<Pose> traj;
    for (int i = 0; i < n_scans; ++i) {
        Pose p;
        p.translation = Vec3(2.0 + 0.2 * i, 0.0, 0.0);
        traj.push_back(p);
    }
    return SimulateSequence(scene, traj, 30.0, 1.0, noise, 34);
}
}  // namespace

TEST_CASE("preprocess clips by range and downsamples") {
    OdometryPipeline pipeline(DeskConfig());
    ScanFrame scan;
    scan.points = {Vec3(0.1, 0, 0),    // below min_range
                   Vec3(5, 0, 0),      //
                   Vec3(5.01, 0, 0),   // same voxel as above
                   Vec3(500, 0, 0)};   // beyond max_range
    const auto out = pipeline.Preprocess(scan);
    REQUIRE(out.size() == 1);
    CHECK(out[0].isApprox(Vec3(5, 0, 0), 0.0));
}

TEST_CASE("all points out of range is an empty-scan error") {
    OdometryPipeline pipeline(DeskConfig());
    ScanFrame scan;
    scan.points = {Vec3(0.01, 0, 0), Vec3(1000, 0, 0)};
    CHECK_THROWS_AS(pipeline.Preprocess(scan), EmptyScanError);
}

TEST_CASE("in-range distinct-voxel input is preserved") {
    OdometryPipeline pipeline(DeskConfig());
    ScanFrame scan;
    scan.points = {Vec3(1, 0, 0), Vec3(2, 0, 0), Vec3(3, 0, 0)};
    CHECK(pipeline.Preprocess(scan).size() == 3);
}

TEST_CASE("constant-velocity prediction sequence") {
    OdometryPipeline pipeline(DeskConfig());
    CHECK(pipeline.PredictInitial().translation.isZero(0.0));

    const auto seq = RoomSequence(4, 0.0);
    pipeline.ProcessScan(seq.scans[0]);
    // after one scan the prediction is the (identity) first pose
    CHECK(pipeline.PredictInitial().translation.norm() < 1e-9);
}

TEST_CASE("constant velocity extrapolates the last motion") {
    // feed poses x=0 then x=1 directly through the prediction formula
    OdometryPipeline pipeline(DeskConfig());
    const auto seq = RoomSequence(3, 0.0);
    pipeline.ProcessScan(seq.scans[0]);
    pipeline.ProcessScan(seq.scans[1]);
    const Pose pred = pipeline.PredictInitial();
    const auto &traj = pipeline.trajectory();
    const Pose expected = traj[1].second * (traj[0].second.inverse() * traj[1].second);
    CHECK((pred.translation - expected.translation).norm() < 1e-12);
}

TEST_CASE("first scan bootstraps the map at identity") {
    OdometryPipeline pipeline(DeskConfig());
    const auto seq = RoomSequence(1, 0.0);
    auto [pose, diag] = pipeline.ProcessScan(seq.scans[0]);
    CHECK(pose.translation.isZero(0.0));
    CHECK(!pipeline.map().empty());
    CHECK(diag.iterations == 0);
}

TEST_CASE("static sensor with identical scans stays at identity") {
    OdometryPipeline pipeline(DeskConfig());
    SceneSpec spec;
    spec.kind = SceneKind::Room;
    spec.length = 10.0;
    spec.width = 10.0;
    spec.surface_density = 60.0;
    const Scene scene = BuildScene(spec);
    Pose sensor;
    sensor.translation = Vec3(5.0, 0.0, 0.0);
    const auto frame = SimulateScan(scene, sensor, 30.0, 1.0, 0.0, 9);
    for (int i = 0; i < 4; ++i) {
        ScanFrame f = frame;
        f.timestamp = 0.1 * i;
        auto [pose, diag] = pipeline.ProcessScan(f);
        CHECK(pose.translation.norm() < 1e-6);
    }
}

TEST_CASE("straight-line room run tracks ground truth") {
    OdometryPipeline pipeline(DeskConfig());
    const auto seq = RoomSequence(8, 0.0);
    for (size_t i = 0; i < seq.scans.size(); ++i) {
        auto [pose, diag] = pipeline.ProcessScan(seq.scans[i]);
        // odometry frame coincides with the first ground-truth pose
        const Pose expected = seq.ground_truth[0].second.inverse() * seq.ground_truth[i].second;
        CHECK((pose.translation - expected.translation).norm() < 0.01);
    }
    CHECK(pipeline.diagnostics().size() == seq.scans.size());
}

TEST_CASE("diagnostics row per scan; map stays bounded") {
    PipelineConfig cfg = DeskConfig();
    cfg.map_max_range = 15.0;
    OdometryPipeline pipeline(cfg);
    const auto seq = RoomSequence(5, 0.0);
    for (const auto &scan : seq.scans) pipeline.ProcessScan(scan);
    CHECK(pipeline.diagnostics().size() == 5);
    CHECK(pipeline.trajectory().size() == 5);

    const Vec3 position = pipeline.trajectory().back().second.translation;
    for (const auto &p : pipeline.map().Points()) {
        CHECK((p - position).norm() <= 15.0 + cfg.map_voxel_size * 2.0);
    }
}

TEST_CASE("two identical runs produce identical trajectories") {
    const auto seq = RoomSequence(6, 0.005);
    std::vector<std::pair<double, Pose>> a, b;
    {
        OdometryPipeline pipeline(DeskConfig());
        for (const auto &scan : seq.scans) pipeline.ProcessScan(scan);
        a = pipeline.trajectory();
    }
    {
        OdometryPipeline pipeline(DeskConfig());
        for (const auto &scan : seq.scans) pipeline.ProcessScan(scan);
        b = pipeline.trajectory();
    }
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK((a[i].second.translation - b[i].second.translation).norm() == 0.0);
        CHECK((a[i].second.rotation - b[i].second.rotation).cwiseAbs().maxCoeff() == 0.0);
    }
}
