#ifndef GENZ_IO_HPP
#define GENZ_IO_HPP

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "genz/pipeline.hpp"

namespace genz {

struct FormatError : std::runtime_error {
    explicit FormatError(const std::string &what) : std::runtime_error(what) {}
};

using Trajectory = std::vector<std::pair<double, Pose>>;
using Color = std::array<uint8_t, 3>;

/// KITTI velodyne .bin: packed little-endian float32 x, y, z, intensity.
/// Intensity is dropped; the timestamp comes from the frame index at 10 Hz.
ScanFrame ReadKittiBin(const std::string &path, int frame_index = 0);
void WriteKittiBin(const std::vector<Vec3> &points, const std::string &path);

/// PLY with float x, y, z (ascii or binary_little_endian), optional
/// uchar red/green/blue on write.
std::vector<Vec3> ReadPly(const std::string &path);
void WritePly(const std::vector<Vec3> &points, const std::string &path, bool binary = true,
              const std::vector<Color> *colors = nullptr);

/// TUM: "timestamp tx ty tz qx qy qz qw" per line.
void WriteTrajectoryTum(const Trajectory &traj, const std::string &path);
Trajectory ReadTrajectoryTum(const std::string &path);

/// KITTI: 12 reals of the row-major 3x4 pose per line (no timestamps;
/// read assigns 10 Hz frame times).
void WriteTrajectoryKitti(const Trajectory &traj, const std::string &path);
Trajectory ReadTrajectoryKitti(const std::string &path);

/// Accepts either trajectory format, detected from the token count per line.
Trajectory ReadTrajectoryAuto(const std::string &path);

}  // namespace genz

#endif
