#include "genz/solver.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <cstring>
#include <unordered_map>

#include "genz/degeneracy.hpp"

namespace genz {

namespace {

// Classification of a correspondence depends only on the target point and the
// map, both frozen for the duration of one scan; the sensor origin only picks
// the normal's sign, which cancels in the normal equations. Caching per target
// is therefore result-identical while avoiding repeated neighborhood searches.
struct TargetKey {
    std::uint64_t bits[3];
    bool operator==(const TargetKey &o) const {
        return bits[0] == o.bits[0] && bits[1] == o.bits[1] && bits[2] == o.bits[2];
    }
};

TargetKey KeyOf(const Vec3 &q) {
    TargetKey key;
    std::memcpy(key.bits, q.data(), sizeof(key.bits));
    return key;
}

struct TargetKeyHash {
    size_t operator()(const TargetKey &k) const {
        std::uint64_t h = 1469598103934665603ull;
        for (std::uint64_t b : k.bits) {
            h ^= b;
            h *= 1099511628211ull;
        }
        return static_cast<size_t>(h);
    }
};

struct CachedClass {
    bool has_normal = false;
    bool planar = false;
    Vec3 normal = Vec3::Zero();
};

}  // namespace

double ComputeAlpha(int n_planar, int n_nonplanar) {
    const int total = n_planar + n_nonplanar;
    if (total <= 0) throw NoCorrespondencesError{};
    return static_cast<double>(n_planar) / static_cast<double>(total);
}

LinearSystem AccumulateSystem(const BlendTerms &terms, double alpha) {
    if (terms.plane.empty() && terms.point.empty()) throw NoCorrespondencesError{};
    Mat6 a_pl = Mat6::Zero();
    Vec6 b_pl = Vec6::Zero();
    for (const auto &t : terms.plane) {
        a_pl += t.jacobian.transpose() * t.jacobian;
        b_pl += t.jacobian.transpose() * t.offset;
    }
    Mat6 a_po = Mat6::Zero();
    Vec6 b_po = Vec6::Zero();
    for (const auto &t : terms.point) {
        a_po += t.jacobian.transpose() * t.jacobian;
        b_po += t.jacobian.transpose() * t.offset;
    }
    LinearSystem sys;
    sys.A = alpha * a_pl + (1.0 - alpha) * a_po;
    sys.b = alpha * b_pl + (1.0 - alpha) * b_po;
    // enforce exact symmetry against accumulation rounding
    sys.A = ((sys.A + sys.A.transpose()) * 0.5).eval();
    return sys;
}

Twist SolveSystem(const LinearSystem &sys, bool *used_pseudoinverse) {
    if (!sys.A.allFinite() || !sys.b.allFinite()) {
        throw NumericalError("non-finite entries in linear system");
    }
    if (used_pseudoinverse) *used_pseudoinverse = false;

    Eigen::LDLT<Mat6> ldlt(sys.A);
    if (ldlt.info() == Eigen::Success) {
        const Vec6 x = ldlt.solve(-sys.b);
        const double scale = std::max(1.0, sys.b.norm());
        if (x.allFinite() && (sys.A * x + sys.b).norm() <= 1e-8 * scale) {
            return Twist::FromVector(x);
        }
    }

    // rank-deficient backstop: minimum-norm solution via truncated eigenbasis
    if (used_pseudoinverse) *used_pseudoinverse = true;
    Eigen::SelfAdjointEigenSolver<Mat6> eig(sys.A);
    const Vec6 lambda = eig.eigenvalues();
    const double l_max = lambda.cwiseAbs().maxCoeff();
    Vec6 x = Vec6::Zero();
    for (int i = 0; i < 6; ++i) {
        if (lambda[i] > 1e-9 * l_max) {
            const Vec6 v = eig.eigenvectors().col(i);
            x -= v * (v.dot(sys.b) / lambda[i]);
        }
    }
    if (!x.allFinite()) throw NumericalError("pseudo-inverse solve produced non-finite result");
    return Twist::FromVector(x);
}

RegistrationResult Register(const std::vector<Vec3> &source, const VoxelGrid &map,
                            const Pose &initial, const Vec3 &sensor_origin,
                            const IcpConfig &cfg) {
    // sensor origin expressed in the initial frame so it follows pose updates
    const Vec3 origin_local = initial.inverse() * sensor_origin;

    Pose current = initial;
    std::vector<IterationRecord> trace;
    trace.reserve(cfg.max_iterations);

    std::unordered_map<TargetKey, CachedClass, TargetKeyHash> target_cache;
    std::vector<CachedClass> first_pass(cfg.classify_once_per_scan ? source.size() : 0);
    std::vector<char> first_pass_valid(first_pass.size(), 0);

    for (int iter = 0; iter < cfg.max_iterations; ++iter) {
        const Vec3 origin = current * origin_local;

        BlendTerms terms;
        std::vector<std::pair<Vec3, Vec3>> plane_pairs;  // (p, q) for exact costs
        std::vector<Vec3> plane_normals;
        std::vector<std::pair<Vec3, Vec3>> point_pairs;

        for (size_t si = 0; si < source.size(); ++si) {
            const Vec3 p = current * source[si];
            const auto q = map.NearestNeighbor(p, cfg.max_corr_distance);
            if (!q) continue;

            CachedClass cls;
            if (cfg.classify_once_per_scan && iter > 0 && first_pass_valid[si]) {
                cls = first_pass[si];
            } else {
                const TargetKey key = KeyOf(*q);
                const auto hit = target_cache.find(key);
                if (hit != target_cache.end()) {
                    cls = hit->second;
                } else {
                    const auto full = Classify({p, *q}, map, cfg.classifier, origin);
                    cls = {full.has_normal, full.planar, full.normal};
                    target_cache.emplace(key, cls);
                }
                if (cfg.classify_once_per_scan) {
                    first_pass[si] = cls;
                    first_pass_valid[si] = 1;
                }
            }

            const bool as_plane = cfg.metric_mode == MetricMode::Genz
                                      ? cls.planar
                                      : (cfg.metric_mode == MetricMode::ForcePointToPlane &&
                                         cls.has_normal);
            if (as_plane) {
                terms.plane.push_back(PlaneTermOf(p, *q, cls.normal));
                plane_pairs.emplace_back(p, *q);
                plane_normals.push_back(cls.normal);
            } else if (cfg.metric_mode == MetricMode::ForcePointToPlane) {
                continue;  // no usable normal in forced plane mode
            } else {
                terms.point.push_back(PointTermOf(p, *q));
                point_pairs.emplace_back(p, *q);
            }
        }

        const int n_pl = static_cast<int>(terms.plane.size());
        const int n_po = static_cast<int>(terms.point.size());
        if (n_pl + n_po == 0) throw RegistrationError(iter);

        double alpha;
        switch (cfg.metric_mode) {
            case MetricMode::ForcePointToPlane: alpha = 1.0; break;
            case MetricMode::ForcePointToPoint: alpha = 0.0; break;
            default: alpha = ComputeAlpha(n_pl, n_po); break;
        }

        const LinearSystem sys = AccumulateSystem(terms, alpha);

        IterationRecord rec;
        rec.alpha = alpha;
        rec.n_planar = n_pl;
        rec.n_nonplanar = n_po;
        rec.condition_number = AnalyzeConditioning(sys).condition_number;

        const Twist delta = SolveSystem(sys, &rec.used_pseudoinverse);
        rec.delta_norm = delta.norm();
        current = current.retract(delta);

        // exact blended cost at the updated pose (correspondences fixed)
        const Pose d{ExpSO3(delta.r), delta.t};
        for (size_t i = 0; i < plane_pairs.size(); ++i) {
            const double e = PlaneResidual(plane_pairs[i].first, plane_pairs[i].second,
                                           plane_normals[i], d);
            rec.cost_planar += e * e;
        }
        for (const auto &[p, q] : point_pairs) {
            rec.cost_point += PointResidual(p, q, d).squaredNorm();
        }
        trace.push_back(rec);

        if (rec.delta_norm < cfg.convergence_eps) break;
    }
    return {current, trace};
}

}  // namespace genz
