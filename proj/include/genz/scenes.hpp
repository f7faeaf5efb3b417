#ifndef GENZ_SCENES_HPP
#define GENZ_SCENES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "genz/pipeline.hpp"
#include "genz/random.hpp"

namespace genz {

enum class SceneKind { Corridor, Room, Clutter, Mixed };

/// Which surface a scene point was sampled from.
enum class SurfaceLabel { Floor, Ceiling, WallLeft, WallRight, WallFront, WallBack, Cluster };

struct SceneSpec {
    SceneKind kind = SceneKind::Corridor;
    // Corridor / Mixed: length x width x height, axis along +x, open ends.
    // Room: closed box, all six faces.
    double length = 60.0;
    double width = 3.0;
    double height = 3.0;
    // Clutter / Mixed
    double extent = 20.0;
    int n_clusters = 30;
    double cluster_sigma = 0.5;
    double clutter_fraction = 0.5;  // Mixed only: share of clutter points
    double surface_density = 50.0;  // points per square meter
    double noise_sigma = 0.0;       // meters, applied at scan simulation
    uint64_t seed = 1;
};

struct LabeledPoint {
    Vec3 position;
    SurfaceLabel label;
};

struct Scene {
    std::vector<LabeledPoint> points;
};

struct SimulatedSequence {
    std::vector<ScanFrame> scans;
    std::vector<std::pair<double, Pose>> ground_truth;
};

/// Deterministic scene sampling for a fixed seed. Corridors have floor,
/// ceiling and two side walls but no end caps, so nothing constrains the
/// axis direction within sensor range of the interior.
Scene BuildScene(const SceneSpec &spec);

/// Range-limited visibility (no occlusion), subsample, per-point Gaussian
/// noise, points expressed in the sensor frame. Throws EmptyScanError when
/// nothing is visible.
ScanFrame SimulateScan(const Scene &scene, const Pose &sensor_pose, double max_range,
                       double subsample, double noise_sigma, uint64_t seed);

std::vector<Pose> StraightTrajectory(double length, double step);

/// Alternating yaw headings of +/- zigzag_deg about the corridor axis.
std::vector<Pose> ZigzagTrajectory(double length, double step, double zigzag_deg);

/// Scans along a trajectory at 10 Hz timestamps with per-scan derived seeds.
SimulatedSequence SimulateSequence(const Scene &scene, const std::vector<Pose> &trajectory,
                                   double max_range, double subsample, double noise_sigma,
                                   uint64_t seed);

}  // namespace genz

#endif
