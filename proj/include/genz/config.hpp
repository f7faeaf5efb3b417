#ifndef GENZ_CONFIG_HPP
#define GENZ_CONFIG_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "genz/pipeline.hpp"
#include "genz/scenes.hpp"

namespace genz {

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string &what) : std::runtime_error(what) {}
};

/// Flat key-value store with documented defaults. Keys are "section.name";
/// the file format is INI-style sections of `key = value` lines. Unknown
/// keys are rejected everywhere (file, env, CLI).
class ConfigStore {
public:
    ConfigStore();

    /// Layering: file over defaults, env (GENZ_SECTION_KEY) over file,
    /// explicit overrides ("section.key=value") over everything.
    void LoadFile(const std::string &path);
    void ApplyEnvironment();
    void ApplyOverride(const std::string &assignment);

    const std::string &Get(const std::string &key) const;
    double GetDouble(const std::string &key) const;
    int GetInt(const std::string &key) const;
    uint64_t GetUint64(const std::string &key) const;
    bool GetBool(const std::string &key) const;

    /// All keys with current values, stable order, for the echo file and --help.
    std::vector<std::pair<std::string, std::string>> Entries() const;

    void WriteEcho(const std::string &path) const;

private:
    void Set(const std::string &key, const std::string &value);
    std::map<std::string, std::string> values_;
};

/// Resolved run parameters materialized from a ConfigStore.
struct RunConfig {
    PipelineConfig pipeline;
    SceneSpec scene;
    double sim_max_range = 20.0;
    double sim_subsample = 1.0;
    std::string trajectory_kind = "straight";
    double trajectory_length = 40.0;
    double trajectory_step = 1.0;
    double zigzag_deg = 15.0;
    uint64_t seed = 1;
    int threads = 1;
    bool log_runtime = true;
};

MetricMode ParseMetricMode(const std::string &name);
std::string MetricModeName(MetricMode mode);

RunConfig MaterializeRunConfig(const ConfigStore &store);

}  // namespace genz

#endif
