#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "genz/config.hpp"

using namespace genz;

namespace {
struct TempFile {
    std::string path;
    explicit TempFile(const std::string &name) {
        path = (std::filesystem::temp_directory_path() / name).string();
    }
    ~TempFile() { std::remove(path.c_str()); }
};
}  // namespace

TEST_CASE("defaults materialize") {
    ConfigStore store;
    const RunConfig cfg = MaterializeRunConfig(store);
    CHECK(cfg.pipeline.icp.max_iterations == 100);
    CHECK(cfg.pipeline.icp.classifier.tau_num == 5);
    CHECK(cfg.pipeline.icp.classifier.tau_planar == doctest::Approx(0.1));
    CHECK(cfg.pipeline.map_voxel_size == doctest::Approx(1.0));
    CHECK(cfg.pipeline.icp.metric_mode == MetricMode::Genz);
    CHECK(cfg.pipeline.icp.classify_once_per_scan == false);
}

TEST_CASE("classify_once_per_scan materializes from its key") {
    ConfigStore store;
    store.ApplyOverride("icp.classify_once_per_scan=true");
    CHECK(MaterializeRunConfig(store).pipeline.icp.classify_once_per_scan == true);
}

TEST_CASE("file values override defaults; sections parse") {
    TempFile f("genz_cfg.ini");
    std::ofstream(f.path) << "[icp]\nmax_iterations = 7\n\n[scene]\nkind = room\n";
    ConfigStore store;
    store.LoadFile(f.path);
    const RunConfig cfg = MaterializeRunConfig(store);
    CHECK(cfg.pipeline.icp.max_iterations == 7);
    CHECK(cfg.scene.kind == SceneKind::Room);
}

TEST_CASE("unknown keys are rejected everywhere") {
    ConfigStore store;
    CHECK_THROWS_AS(store.ApplyOverride("icp.does_not_exist=1"), ConfigError);
    TempFile f("genz_badcfg.ini");
    std::ofstream(f.path) << "[icp]\nbogus = 1\n";
    ConfigStore store2;
    CHECK_THROWS_AS(store2.LoadFile(f.path), ConfigError);
}

TEST_CASE("explicit overrides beat file values") {
    TempFile f("genz_cfg2.ini");
    std::ofstream(f.path) << "[run]\nseed = 5\n";
    ConfigStore store;
    store.LoadFile(f.path);
    store.ApplyOverride("run.seed=9");
    CHECK(store.GetUint64("run.seed") == 9);
}

TEST_CASE("environment overrides with the GENZ_ prefix") {
    setenv("GENZ_ICP_MAX_ITERATIONS", "33", 1);
    ConfigStore store;
    store.ApplyEnvironment();
    unsetenv("GENZ_ICP_MAX_ITERATIONS");
    CHECK(store.GetInt("icp.max_iterations") == 33);
}

TEST_CASE("echo file re-parses to identical values") {
    TempFile f("genz_echo.ini");
    ConfigStore store;
    store.ApplyOverride("classifier.tau_planar=0.07");
    store.WriteEcho(f.path);
    ConfigStore reread;
    reread.LoadFile(f.path);
    CHECK(reread.Get("classifier.tau_planar") == "0.07");
    CHECK(reread.Entries().size() == store.Entries().size());
}

TEST_CASE("metric mode parsing and round trip") {
    CHECK(ParseMetricMode("genz") == MetricMode::Genz);
    CHECK(ParseMetricMode(MetricModeName(MetricMode::ForcePointToPoint)) ==
          MetricMode::ForcePointToPoint);
    CHECK_THROWS_AS(ParseMetricMode("nope"), ConfigError);
}

TEST_CASE("type errors are reported with the key name") {
    ConfigStore store;
    store.ApplyOverride("icp.convergence_eps=abc");
    try {
        MaterializeRunConfig(store);
        FAIL("expected ConfigError");
    } catch (const ConfigError &e) {
        CHECK(std::string(e.what()).find("convergence_eps") != std::string::npos);
    }
}
