#ifndef GENZ_VOXEL_MAP_HPP
#define GENZ_VOXEL_MAP_HPP

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "genz/geometry.hpp"

namespace genz {

struct VoxelIndex {
    int32_t x, y, z;
    bool operator==(const VoxelIndex &o) const { return x == o.x && y == o.y && z == o.z; }
};

struct VoxelIndexHash {
    size_t operator()(const VoxelIndex &v) const {
        // classic spatial-hash primes
        return static_cast<size_t>(v.x) * 73856093u ^ static_cast<size_t>(v.y) * 19349669u ^
               static_cast<size_t>(v.z) * 83492791u;
    }
};

/// Voxel-hashed local map in the map frame. Cells hold at most
/// max_points_per_voxel points; inserts into a full cell are dropped.
class VoxelGrid {
public:
    explicit VoxelGrid(double voxel_size = 1.0, int max_points_per_voxel = 20)
        : voxel_size_(voxel_size), max_points_per_voxel_(max_points_per_voxel) {}

    double voxel_size() const { return voxel_size_; }
    int max_points_per_voxel() const { return max_points_per_voxel_; }
    bool empty() const { return cells_.empty(); }
    size_t num_points() const;

    VoxelIndex IndexOf(const Vec3 &p) const;

    /// Transform points by pose and insert; full cells drop.
    void InsertScan(const std::vector<Vec3> &points, const Pose &pose);
    void InsertPoint(const Vec3 &p);

    /// Exact nearest stored point within max_dist, or nullopt. Distance ties
    /// break toward the lexicographically smaller (x, y, z) point.
    std::optional<Vec3> NearestNeighbor(const Vec3 &query, double max_dist) const;

    /// All stored points within radius, closest max_count if more exist.
    std::vector<Vec3> RadiusNeighbors(const Vec3 &query, double radius, int max_count) const;

    /// Drop every cell whose center is farther than max_range from center.
    void PruneBeyond(const Vec3 &center, double max_range);

    std::vector<Vec3> Points() const;

private:
    double voxel_size_;
    int max_points_per_voxel_;
    std::unordered_map<VoxelIndex, std::vector<Vec3>, VoxelIndexHash> cells_;
};

/// Keep at most one point per voxel (the first seen, input order).
std::vector<Vec3> VoxelDownsample(const std::vector<Vec3> &points, double voxel_size);

}  // namespace genz

#endif
