#include "genz/voxel_map.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace genz {

namespace {

// lexicographic (x, y, z) tie rule
bool LexLess(const Vec3 &a, const Vec3 &b) {
    if (a.x() != b.x()) return a.x() < b.x();
    if (a.y() != b.y()) return a.y() < b.y();
    return a.z() < b.z();
}

}  // namespace

VoxelIndex VoxelGrid::IndexOf(const Vec3 &p) const {
    return {static_cast<int32_t>(std::floor(p.x() / voxel_size_)),
            static_cast<int32_t>(std::floor(p.y() / voxel_size_)),
            static_cast<int32_t>(std::floor(p.z() / voxel_size_))};
}

size_t VoxelGrid::num_points() const {
    size_t n = 0;
    for (const auto &[idx, pts] : cells_) n += pts.size();
    return n;
}

void VoxelGrid::InsertPoint(const Vec3 &p) {
    auto &cell = cells_[IndexOf(p)];
    if (static_cast<int>(cell.size()) < max_points_per_voxel_) cell.push_back(p);
}

void VoxelGrid::InsertScan(const std::vector<Vec3> &points, const Pose &pose) {
    for (const auto &p : points) InsertPoint(pose * p);
}

std::optional<Vec3> VoxelGrid::NearestNeighbor(const Vec3 &query, double max_dist) const {
    if (cells_.empty()) return std::nullopt;
    // cell-ring radius covering the search ball
    const int reach = static_cast<int>(std::ceil(max_dist / voxel_size_));
    const VoxelIndex c = IndexOf(query);
    double best_d2 = max_dist * max_dist;
    std::optional<Vec3> best;
    for (int dx = -reach; dx <= reach; ++dx) {
        for (int dy = -reach; dy <= reach; ++dy) {
            for (int dz = -reach; dz <= reach; ++dz) {
                auto it = cells_.find({c.x + dx, c.y + dy, c.z + dz});
                if (it == cells_.end()) continue;
                for (const auto &p : it->second) {
                    const double d2 = (p - query).squaredNorm();
                    if (d2 < best_d2 || (d2 == best_d2 && (!best || LexLess(p, *best)))) {
                        best_d2 = d2;
                        best = p;
                    }
                }
            }
        }
    }
    return best;
}

std::vector<Vec3> VoxelGrid::RadiusNeighbors(const Vec3 &query, double radius,
                                             int max_count) const {
    std::vector<std::pair<double, Vec3>> found;
    const int reach = static_cast<int>(std::ceil(radius / voxel_size_));
    const VoxelIndex c = IndexOf(query);
    const double r2 = radius * radius;
    for (int dx = -reach; dx <= reach; ++dx) {
        for (int dy = -reach; dy <= reach; ++dy) {
            for (int dz = -reach; dz <= reach; ++dz) {
                auto it = cells_.find({c.x + dx, c.y + dy, c.z + dz});
                if (it == cells_.end()) continue;
                for (const auto &p : it->second) {
                    const double d2 = (p - query).squaredNorm();
                    if (d2 <= r2) found.emplace_back(d2, p);
                }
            }
        }
    }
    auto cmp = [](const auto &a, const auto &b) {
        if (a.first != b.first) return a.first < b.first;
        return LexLess(a.second, b.second);
    };
    if (static_cast<int>(found.size()) > max_count) {
        std::partial_sort(found.begin(), found.begin() + max_count, found.end(), cmp);
        found.resize(max_count);
    } else {
        std::sort(found.begin(), found.end(), cmp);
    }
    std::vector<Vec3> out;
    out.reserve(found.size());
    for (const auto &[d2, p] : found) out.push_back(p);
    return out;
}

void VoxelGrid::PruneBeyond(const Vec3 &center, double max_range) {
    const double r2 = max_range * max_range;
    for (auto it = cells_.begin(); it != cells_.end();) {
        const Vec3 cell_center((it->first.x + 0.5) * voxel_size_,
                               (it->first.y + 0.5) * voxel_size_,
                               (it->first.z + 0.5) * voxel_size_);
        if ((cell_center - center).squaredNorm() > r2) {
            it = cells_.erase(it);
        } else {
            ++it;
        }
    }
}

std::vector<Vec3> VoxelGrid::Points() const {
    std::vector<std::pair<VoxelIndex, const std::vector<Vec3> *>> ordered;
    ordered.reserve(cells_.size());
    for (const auto &[idx, pts] : cells_) ordered.emplace_back(idx, &pts);
    // deterministic dump order regardless of hash-map iteration
    std::sort(ordered.begin(), ordered.end(), [](const auto &a, const auto &b) {
        if (a.first.x != b.first.x) return a.first.x < b.first.x;
        if (a.first.y != b.first.y) return a.first.y < b.first.y;
        return a.first.z < b.first.z;
    });
    std::vector<Vec3> out;
    for (const auto &[idx, pts] : ordered) out.insert(out.end(), pts->begin(), pts->end());
    return out;
}

std::vector<Vec3> VoxelDownsample(const std::vector<Vec3> &points, double voxel_size) {
    std::unordered_map<VoxelIndex, bool, VoxelIndexHash> seen;
    std::vector<Vec3> out;
    out.reserve(points.size());
    for (const auto &p : points) {
        VoxelIndex idx{static_cast<int32_t>(std::floor(p.x() / voxel_size)),
                       static_cast<int32_t>(std::floor(p.y() / voxel_size)),
                       static_cast<int32_t>(std::floor(p.z() / voxel_size))};
        if (seen.emplace(idx, true).second) out.push_back(p);
    }
    return out;
}

}  // namespace genz
