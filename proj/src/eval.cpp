#include "genz/eval.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace genz {

namespace {

constexpr double kAssocTolerance = 0.05;  // seconds

ErrorStats StatsOf(const std::vector<double> &errors) {
    ErrorStats s;
    if (errors.empty()) return s;
    double sum = 0.0, sum_sq = 0.0;
    for (double e : errors) {
        sum += e;
        sum_sq += e * e;
        s.max = std::max(s.max, e);
    }
    const double n = static_cast<double>(errors.size());
    s.mean = sum / n;
    s.rmse = std::sqrt(sum_sq / n);
    s.std_dev = std::sqrt(std::max(0.0, sum_sq / n - s.mean * s.mean));
    return s;
}

}  // namespace

Pose AlignRigid(const std::vector<Vec3> &a, const std::vector<Vec3> &b) {
    Vec3 mean_a = Vec3::Zero(), mean_b = Vec3::Zero();
    const double n = static_cast<double>(a.size());
    for (size_t i = 0; i < a.size(); ++i) {
        mean_a += a[i];
        mean_b += b[i];
    }
    mean_a /= n;
    mean_b /= n;
    Mat3 h = Mat3::Zero();
    for (size_t i = 0; i < a.size(); ++i) {
        h += (a[i] - mean_a) * (b[i] - mean_b).transpose();
    }
    Eigen::JacobiSVD<Mat3> svd(h, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Mat3 d = Mat3::Identity();
    if ((svd.matrixV() * svd.matrixU().transpose()).determinant() < 0.0) d(2, 2) = -1.0;
    Pose out;
    out.rotation = svd.matrixV() * d * svd.matrixU().transpose();
    out.translation = mean_b - out.rotation * mean_a;
    return out;
}

EvalReport Evaluate(const Trajectory &estimate, const Trajectory &truth, int rpe_delta,
                    const std::vector<double> &segment_lengths) {
    // associate each truth pose with the nearest-in-time estimate pose
    std::vector<std::pair<Pose, Pose>> pairs;  // (estimate, truth)
    int dropped = 0;
    for (const auto &[tt, gt_pose] : truth) {
        double best_dt = kAssocTolerance;
        const Pose *best = nullptr;
        for (const auto &[te, est_pose] : estimate) {
            const double dt = std::abs(te - tt);
            if (dt <= best_dt) {
                best_dt = dt;
                best = &est_pose;
            }
        }
        if (best) {
            pairs.emplace_back(*best, gt_pose);
        } else {
            ++dropped;
        }
    }
    if (pairs.size() < 2) throw EvaluationError("fewer than 2 associated poses");

    EvalReport report;
    report.n_associated = static_cast<int>(pairs.size());
    report.n_dropped = dropped;

    // APE: rigid alignment of estimate onto truth, then translation residuals
    std::vector<Vec3> est_t, gt_t;
    for (const auto &[est, gt] : pairs) {
        est_t.push_back(est.translation);
        gt_t.push_back(gt.translation);
    }
    const Pose align = AlignRigid(est_t, gt_t);
    std::vector<double> ape_errors;
    for (size_t i = 0; i < pairs.size(); ++i) {
        ape_errors.push_back((align * est_t[i] - gt_t[i]).norm());
    }
    report.ape = StatsOf(ape_errors);

    // RPE at fixed frame delta
    std::vector<double> rpe_errors;
    for (size_t i = 0; i + rpe_delta < pairs.size(); ++i) {
        const size_t j = i + rpe_delta;
        const Pose rel_est = pairs[i].first.inverse() * pairs[j].first;
        const Pose rel_gt = pairs[i].second.inverse() * pairs[j].second;
        rpe_errors.push_back((rel_gt.inverse() * rel_est).translation.norm());
    }
    report.rpe = StatsOf(rpe_errors);

    // KITTI segment-based relative translational error
    std::vector<double> cum_dist(pairs.size(), 0.0);
    for (size_t i = 1; i < pairs.size(); ++i) {
        cum_dist[i] = cum_dist[i - 1] +
                      (pairs[i].second.translation - pairs[i - 1].second.translation).norm();
    }
    double percent_sum = 0.0;
    size_t percent_count = 0;
    for (size_t i = 0; i < pairs.size(); ++i) {
        for (double length : segment_lengths) {
            // first index at least `length` meters of ground-truth path ahead
            size_t j = i;
            while (j < pairs.size() && cum_dist[j] - cum_dist[i] < length) ++j;
            if (j >= pairs.size()) continue;
            const Pose rel_est = pairs[i].first.inverse() * pairs[j].first;
            const Pose rel_gt = pairs[i].second.inverse() * pairs[j].second;
            const double err = (rel_gt.inverse() * rel_est).translation.norm();
            percent_sum += err / length * 100.0;
            ++percent_count;
        }
    }
    if (percent_count > 0) {
        report.rel_trans_percent = percent_sum / static_cast<double>(percent_count);
    }
    return report;
}

}  // namespace genz
