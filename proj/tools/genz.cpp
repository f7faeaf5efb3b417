#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>

#include "genz/config.hpp"
#include "genz/eval.hpp"
#include "genz/io.hpp"
#include "genz/pipeline.hpp"
#include "genz/scenes.hpp"

namespace fs = std::filesystem;
using namespace genz;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumerical = 3;

ConfigStore LoadConfig(const std::string &config_path,
                       const std::vector<std::string> &overrides) {
    ConfigStore store;
    if (!config_path.empty()) store.LoadFile(config_path);
    store.ApplyEnvironment();
    for (const auto &o : overrides) store.ApplyOverride(o);
    return store;
}

void WriteDiagnosticsCsv(const std::vector<ScanDiagnostics> &diags, const Trajectory &traj,
                         const std::string &path, bool log_runtime) {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot write diagnostics: " + path);
    out << "# genz-diagnostics v1\n";
    out << "index,timestamp,alpha_final,n_planar,n_nonplanar,iterations,"
           "condition_number_median,runtime_seconds\n";
    out << std::setprecision(17);
    for (size_t i = 0; i < diags.size(); ++i) {
        const auto &d = diags[i];
        out << i << "," << traj[i].first << "," << d.alpha_final << "," << d.n_planar << ","
            << d.n_nonplanar << "," << d.iterations << "," << d.condition_number_median << ","
            << (log_runtime ? d.runtime_seconds : 0.0) << "\n";
    }
}

std::vector<std::string> ListScanFiles(const std::string &dir) {
    if (!fs::is_directory(dir)) throw FormatError("dataset directory not found: " + dir);
    std::vector<std::string> files;
    for (const auto &entry : fs::directory_iterator(dir)) {
        const auto ext = entry.path().extension().string();
        if (ext == ".bin" || ext == ".ply") files.push_back(entry.path().string());
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw FormatError("no .bin or .ply scans in " + dir);
    return files;
}

ScanFrame LoadScan(const std::string &path, int index) {
    if (fs::path(path).extension() == ".bin") return ReadKittiBin(path, index);
    ScanFrame frame;
    frame.points = ReadPly(path);
    frame.timestamp = 0.1 * index;
    return frame;
}

int CmdRun(const std::string &dataset_dir, const std::string &config_path,
           const std::string &out_dir, const std::vector<std::string> &overrides) {
    auto store = LoadConfig(config_path, overrides);
    const RunConfig cfg = MaterializeRunConfig(store);
    const auto files = ListScanFiles(dataset_dir);

    fs::create_directories(out_dir);
    OdometryPipeline pipeline(cfg.pipeline);
    for (size_t i = 0; i < files.size(); ++i) {
        pipeline.ProcessScan(LoadScan(files[i], static_cast<int>(i)));
    }
    WriteTrajectoryTum(pipeline.trajectory(), out_dir + "/trajectory_tum.txt");
    WriteTrajectoryKitti(pipeline.trajectory(), out_dir + "/trajectory_kitti.txt");
    WriteDiagnosticsCsv(pipeline.diagnostics(), pipeline.trajectory(),
                        out_dir + "/diagnostics.csv", cfg.log_runtime);
    store.WriteEcho(out_dir + "/config_resolved.ini");
    std::cout << "processed " << files.size() << " scans -> " << out_dir << "\n";
    return 0;
}

std::vector<Pose> MakeTrajectory(const RunConfig &cfg) {
    if (cfg.trajectory_kind == "straight") {
        return StraightTrajectory(cfg.trajectory_length, cfg.trajectory_step);
    }
    if (cfg.trajectory_kind == "zigzag") {
        return ZigzagTrajectory(cfg.trajectory_length, cfg.trajectory_step, cfg.zigzag_deg);
    }
    throw ConfigError("unknown trajectory kind: " + cfg.trajectory_kind);
}

int CmdSynth(const std::string &config_path, const std::string &out_dir,
             std::vector<std::string> modes, const std::vector<std::string> &overrides) {
    auto store = LoadConfig(config_path, overrides);
    const RunConfig cfg = MaterializeRunConfig(store);
    if (modes.empty()) modes = {"genz", "force_point_to_plane", "force_point_to_point"};

    fs::create_directories(out_dir);
    const Scene scene = BuildScene(cfg.scene);
    const auto trajectory = MakeTrajectory(cfg);
    const auto sequence = SimulateSequence(scene, trajectory, cfg.sim_max_range,
                                           cfg.sim_subsample, cfg.scene.noise_sigma, cfg.seed);

    std::vector<Vec3> scene_points;
    for (const auto &lp : scene.points) scene_points.push_back(lp.position);
    WritePly(scene_points, out_dir + "/scene.ply");
    WriteTrajectoryTum(sequence.ground_truth, out_dir + "/ground_truth_tum.txt");
    store.WriteEcho(out_dir + "/config_resolved.ini");

    std::ostringstream table;
    table << std::left << std::setw(24) << "mode" << std::right << std::setw(12) << "ape_rmse"
          << std::setw(12) << "ape_max" << std::setw(12) << "rpe_rmse" << std::setw(12)
          << "rel_tr_%" << "\n";
    std::ofstream table_csv(out_dir + "/comparison.csv");
    table_csv << "mode,ape_rmse,ape_mean,ape_max,rpe_rmse,rel_trans_percent\n"
              << std::setprecision(17);

    for (const auto &mode_name : modes) {
        RunConfig mode_cfg = cfg;
        mode_cfg.pipeline.icp.metric_mode = ParseMetricMode(mode_name);
        OdometryPipeline pipeline(mode_cfg.pipeline);
        for (const auto &scan : sequence.scans) pipeline.ProcessScan(scan);

        const std::string prefix = out_dir + "/" + mode_name;
        WriteTrajectoryTum(pipeline.trajectory(), prefix + "_trajectory_tum.txt");
        WriteTrajectoryKitti(pipeline.trajectory(), prefix + "_trajectory_kitti.txt");
        WriteDiagnosticsCsv(pipeline.diagnostics(), pipeline.trajectory(),
                            prefix + "_diagnostics.csv", cfg.log_runtime);

        const auto report = Evaluate(pipeline.trajectory(), sequence.ground_truth, 1,
                                     {5.0, 10.0, 15.0, 20.0});
        table << std::left << std::setw(24) << mode_name << std::right << std::fixed
              << std::setprecision(4) << std::setw(12) << report.ape.rmse << std::setw(12)
              << report.ape.max << std::setw(12) << report.rpe.rmse << std::setw(12)
              << report.rel_trans_percent << "\n";
        table_csv << mode_name << "," << report.ape.rmse << "," << report.ape.mean << ","
                  << report.ape.max << "," << report.rpe.rmse << ","
                  << report.rel_trans_percent << "\n";
    }

    std::ofstream(out_dir + "/comparison.txt") << table.str();
    std::cout << table.str();
    return 0;
}

int CmdEval(const std::string &est_path, const std::string &gt_path, int rpe_delta,
            std::vector<double> segments, const std::string &out_path) {
    if (segments.empty()) segments = {100, 200, 300, 400, 500, 600, 700, 800};
    const auto estimate = ReadTrajectoryAuto(est_path);
    const auto truth = ReadTrajectoryAuto(gt_path);
    const auto report = Evaluate(estimate, truth, rpe_delta, segments);

    std::ostringstream text;
    text << std::fixed << std::setprecision(6);
    text << "associated poses: " << report.n_associated << " (dropped " << report.n_dropped
         << ")\n";
    text << "APE  mean " << report.ape.mean << "  rmse " << report.ape.rmse << "  max "
         << report.ape.max << "  std " << report.ape.std_dev << "\n";
    text << "RPE  mean " << report.rpe.mean << "  rmse " << report.rpe.rmse << "  max "
         << report.rpe.max << "  std " << report.rpe.std_dev << "\n";
    text << "rel. translational error: " << report.rel_trans_percent << " %\n";
    std::cout << text.str();
    if (!out_path.empty()) std::ofstream(out_path) << text.str();
    return 0;
}

int CmdClassifyDebug(const std::string &scan_path, const std::string &map_path,
                     bool use_scene, const std::string &config_path,
                     const std::string &out_path, const std::vector<std::string> &overrides) {
    auto store = LoadConfig(config_path, overrides);
    const RunConfig cfg = MaterializeRunConfig(store);

    VoxelGrid map(cfg.pipeline.map_voxel_size, cfg.pipeline.max_points_per_voxel);
    if (use_scene) {
        const Scene scene = BuildScene(cfg.scene);
        for (const auto &lp : scene.points) map.InsertPoint(lp.position);
    } else {
        map.InsertScan(ReadPly(map_path), Pose::Identity());
    }

    const ScanFrame scan = LoadScan(scan_path, 0);
    if (scan.points.empty()) throw EmptyScanError{};

    const Vec3 origin = Vec3::Zero();
    std::vector<Color> colors;
    colors.reserve(scan.points.size());
    const Color planar_color{173, 216, 230};  // light blue
    const Color nonplanar_color{255, 0, 0};
    for (const auto &p : scan.points) {
        bool planar = false;
        if (auto q = map.NearestNeighbor(p, cfg.pipeline.icp.max_corr_distance)) {
            planar = Classify({p, *q}, map, cfg.pipeline.icp.classifier, origin).planar;
        }
        colors.push_back(planar ? planar_color : nonplanar_color);
    }
    WritePly(scan.points, out_path, true, &colors);
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"GenZ-ICP LiDAR odometry: adaptive point-to-plane / point-to-point blending"};
    app.require_subcommand(1);

    std::string dataset_dir, config_path, out_dir = "out";
    std::vector<std::string> overrides;
    std::vector<std::string> modes;

    auto *run = app.add_subcommand("run", "Run odometry over a dataset directory");
    run->add_option("dataset", dataset_dir, "Directory of .bin or .ply scans")->required();
    run->add_option("-c,--config", config_path, "Config file (INI, key = value)");
    run->add_option("-o,--out", out_dir, "Output directory");
    run->add_option("--set", overrides, "Override config key: section.key=value");

    auto *synth = app.add_subcommand("synth", "Synthetic scene experiment across metric modes");
    synth->add_option("-c,--config", config_path, "Config file");
    synth->add_option("-o,--out", out_dir, "Output directory");
    synth->add_option("--mode", modes, "Metric modes to run (default: all three)");
    synth->add_option("--set", overrides, "Override config key: section.key=value");

    std::string est_path, gt_path, eval_out;
    int rpe_delta = 1;
    std::vector<double> segments;
    auto *eval = app.add_subcommand("eval", "Evaluate a trajectory against ground truth");
    eval->add_option("estimate", est_path, "Estimated trajectory (TUM or KITTI)")->required();
    eval->add_option("truth", gt_path, "Ground-truth trajectory (TUM or KITTI)")->required();
    eval->add_option("--rpe-delta", rpe_delta, "RPE frame delta");
    eval->add_option("--segment", segments, "Segment lengths in meters");
    eval->add_option("-o,--out", eval_out, "Also write the report to this file");

    std::string scan_path, map_path, debug_out = "classified.ply";
    bool use_scene = false;
    auto *dbg = app.add_subcommand("classify-debug", "Color a scan by planarity class");
    dbg->add_option("scan", scan_path, "Scan file (.bin or .ply)")->required();
    auto *map_opt = dbg->add_option("--map", map_path, "Map PLY file");
    dbg->add_flag("--scene", use_scene, "Build the map from the config's scene section");
    dbg->add_option("-c,--config", config_path, "Config file");
    dbg->add_option("-o,--out", debug_out, "Output colored PLY");
    dbg->add_option("--set", overrides, "Override config key: section.key=value");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e) == 0 ? 0 : kExitUsage;
    }

    try {
        if (run->parsed()) return CmdRun(dataset_dir, config_path, out_dir, overrides);
        if (synth->parsed()) return CmdSynth(config_path, out_dir, modes, overrides);
        if (eval->parsed()) return CmdEval(est_path, gt_path, rpe_delta, segments, eval_out);
        if (dbg->parsed()) {
            if (!use_scene && map_opt->count() == 0) {
                std::cerr << "classify-debug needs --map or --scene\n";
                return kExitUsage;
            }
            return CmdClassifyDebug(scan_path, map_path, use_scene, config_path, debug_out,
                                    overrides);
        }
    } catch (const ConfigError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const FormatError &e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const EmptyScanError &e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const EvaluationError &e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const NumericalError &e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const RegistrationError &e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitUsage;
}
