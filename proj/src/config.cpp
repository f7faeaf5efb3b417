#include "genz/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace genz {

namespace {

std::string Trim(const std::string &s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

ConfigStore::ConfigStore() {
    // every known key with its default
    values_ = {
        {"run.seed", "1"},
        {"run.threads", "1"},
        {"run.metric_mode", "genz"},
        {"icp.max_iterations", "100"},
        {"icp.convergence_eps", "1e-4"},
        {"icp.max_corr_distance", "2.0"},
        {"icp.classify_once_per_scan", "false"},
        {"classifier.tau_num", "5"},
        {"classifier.tau_planar", "0.1"},
        {"classifier.neighbor_radius", "1.5"},
        {"classifier.neighbor_max_count", "20"},
        {"map.voxel_size", "1.0"},
        {"map.max_points_per_voxel", "20"},
        {"map.max_range", "100.0"},
        {"map.insert_raw", "false"},
        {"preprocess.scan_voxel_size", "0.5"},
        {"preprocess.min_range", "0.5"},
        {"preprocess.max_range", "100.0"},
        {"scene.kind", "corridor"},
        {"scene.length", "60.0"},
        {"scene.width", "3.0"},
        {"scene.height", "3.0"},
        {"scene.extent", "20.0"},
        {"scene.n_clusters", "30"},
        {"scene.cluster_sigma", "0.5"},
        {"scene.clutter_fraction", "0.5"},
        {"scene.surface_density", "50.0"},
        {"scene.noise_sigma", "0.01"},
        {"sim.max_range", "20.0"},
        {"sim.subsample", "1.0"},
        {"trajectory.kind", "straight"},
        {"trajectory.length", "40.0"},
        {"trajectory.step", "1.0"},
        {"trajectory.zigzag_deg", "15.0"},
        {"output.log_runtime", "true"},
    };
}

void ConfigStore::Set(const std::string &key, const std::string &value) {
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("unknown config key: " + key);
    it->second = value;
}

void ConfigStore::LoadFile(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = Trim(line);
        if (line.empty() || line[0] == '#' || line[0] == ';') continue;
        if (line.front() == '[' && line.back() == ']') {
            section = Trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
        }
        const std::string key = Trim(line.substr(0, eq));
        const std::string value = Trim(line.substr(eq + 1));
        Set(section.empty() ? key : section + "." + key, value);
    }
}

void ConfigStore::ApplyEnvironment() {
    for (const auto &[key, value] : values_) {
        std::string env_name = "GENZ_" + key;
        std::replace(env_name.begin(), env_name.end(), '.', '_');
        std::transform(env_name.begin(), env_name.end(), env_name.begin(),
                       [](unsigned char c) { return std::toupper(c); });
        if (const char *env = std::getenv(env_name.c_str())) {
            values_[key] = env;
        }
    }
}

void ConfigStore::ApplyOverride(const std::string &assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) {
        throw ConfigError("override must be section.key=value: " + assignment);
    }
    Set(Trim(assignment.substr(0, eq)), Trim(assignment.substr(eq + 1)));
}

const std::string &ConfigStore::Get(const std::string &key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("unknown config key: " + key);
    return it->second;
}

double ConfigStore::GetDouble(const std::string &key) const {
    try {
        return std::stod(Get(key));
    } catch (const std::invalid_argument &) {
        throw ConfigError("key " + key + " is not a number: " + Get(key));
    }
}

int ConfigStore::GetInt(const std::string &key) const {
    try {
        return std::stoi(Get(key));
    } catch (const std::invalid_argument &) {
        throw ConfigError("key " + key + " is not an integer: " + Get(key));
    }
}

uint64_t ConfigStore::GetUint64(const std::string &key) const {
    try {
        return std::stoull(Get(key));
    } catch (const std::invalid_argument &) {
        throw ConfigError("key " + key + " is not an integer: " + Get(key));
    }
}

bool ConfigStore::GetBool(const std::string &key) const {
    const std::string &v = Get(key);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("key " + key + " is not a boolean: " + v);
}

std::vector<std::pair<std::string, std::string>> ConfigStore::Entries() const {
    return {values_.begin(), values_.end()};
}

void ConfigStore::WriteEcho(const std::string &path) const {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write config echo: " + path);
    std::string section;
    for (const auto &[key, value] : values_) {
        const auto dot = key.find('.');
        const std::string sec = key.substr(0, dot);
        if (sec != section) {
            if (!section.empty()) out << "\n";
            out << "[" << sec << "]\n";
            section = sec;
        }
        out << key.substr(dot + 1) << " = " << value << "\n";
    }
}

MetricMode ParseMetricMode(const std::string &name) {
    if (name == "genz") return MetricMode::Genz;
    if (name == "force_point_to_plane") return MetricMode::ForcePointToPlane;
    if (name == "force_point_to_point") return MetricMode::ForcePointToPoint;
    throw ConfigError("unknown metric mode: " + name +
                      " (expected genz, force_point_to_plane or force_point_to_point)");
}

std::string MetricModeName(MetricMode mode) {
    switch (mode) {
        case MetricMode::Genz: return "genz";
        case MetricMode::ForcePointToPlane: return "force_point_to_plane";
        case MetricMode::ForcePointToPoint: return "force_point_to_point";
    }
    return "genz";
}

namespace {

SceneKind ParseSceneKind(const std::string &name) {
    if (name == "corridor") return SceneKind::Corridor;
    if (name == "room") return SceneKind::Room;
    if (name == "clutter") return SceneKind::Clutter;
    if (name == "mixed") return SceneKind::Mixed;
    throw ConfigError("unknown scene kind: " + name);
}

}  // namespace

RunConfig MaterializeRunConfig(const ConfigStore &s) {
    RunConfig cfg;
    cfg.seed = s.GetUint64("run.seed");
    cfg.threads = s.GetInt("run.threads");
    cfg.pipeline.icp.metric_mode = ParseMetricMode(s.Get("run.metric_mode"));
    cfg.pipeline.icp.max_iterations = s.GetInt("icp.max_iterations");
    cfg.pipeline.icp.convergence_eps = s.GetDouble("icp.convergence_eps");
    cfg.pipeline.icp.max_corr_distance = s.GetDouble("icp.max_corr_distance");
    cfg.pipeline.icp.classify_once_per_scan = s.GetBool("icp.classify_once_per_scan");
    cfg.pipeline.icp.classifier.tau_num = s.GetInt("classifier.tau_num");
    cfg.pipeline.icp.classifier.tau_planar = s.GetDouble("classifier.tau_planar");
    cfg.pipeline.icp.classifier.neighbor_radius = s.GetDouble("classifier.neighbor_radius");
    cfg.pipeline.icp.classifier.neighbor_max_count = s.GetInt("classifier.neighbor_max_count");
    cfg.pipeline.map_voxel_size = s.GetDouble("map.voxel_size");
    cfg.pipeline.max_points_per_voxel = s.GetInt("map.max_points_per_voxel");
    cfg.pipeline.map_max_range = s.GetDouble("map.max_range");
    cfg.pipeline.insert_raw = s.GetBool("map.insert_raw");
    cfg.pipeline.scan_voxel_size = s.GetDouble("preprocess.scan_voxel_size");
    cfg.pipeline.min_range = s.GetDouble("preprocess.min_range");
    cfg.pipeline.max_range = s.GetDouble("preprocess.max_range");
    cfg.scene.kind = ParseSceneKind(s.Get("scene.kind"));
    cfg.scene.length = s.GetDouble("scene.length");
    cfg.scene.width = s.GetDouble("scene.width");
    cfg.scene.height = s.GetDouble("scene.height");
    cfg.scene.extent = s.GetDouble("scene.extent");
    cfg.scene.n_clusters = s.GetInt("scene.n_clusters");
    cfg.scene.cluster_sigma = s.GetDouble("scene.cluster_sigma");
    cfg.scene.clutter_fraction = s.GetDouble("scene.clutter_fraction");
    cfg.scene.surface_density = s.GetDouble("scene.surface_density");
    cfg.scene.noise_sigma = s.GetDouble("scene.noise_sigma");
    cfg.scene.seed = cfg.seed;
    cfg.sim_max_range = s.GetDouble("sim.max_range");
    cfg.sim_subsample = s.GetDouble("sim.subsample");
    cfg.trajectory_kind = s.Get("trajectory.kind");
    cfg.trajectory_length = s.GetDouble("trajectory.length");
    cfg.trajectory_step = s.GetDouble("trajectory.step");
    cfg.zigzag_deg = s.GetDouble("trajectory.zigzag_deg");
    cfg.log_runtime = s.GetBool("output.log_runtime");
    return cfg;
}

}  // namespace genz
