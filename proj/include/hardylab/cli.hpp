#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace hardylab {

// Every knob of a batch run. Defaults are listed in docs/defaults.md.
struct RunConfig {
    std::string command = "hardy";  // hardy, critical-delta, properties, rellich, radial-classify, volume-scan, domain-info
    std::string domain_path;        // JSON file: {"domain": {...}, "field": {...}} or a bare domain object
    nlohmann::json domain;          // inline domain, used when domain_path is empty
    nlohmann::json field;           // inline field; null selects the exact field
    std::optional<double> delta;    // overrides field.delta

    std::vector<double> r_schedule;  // empty: 0.3, 0.2, 0.1 times min(1, inradius)
    int level_min = 0;
    int level_max = -1;  // -1: 5 radial, 4 planar, 2 decorated
    std::string path = "auto";
    int columns = 32;
    double q = 0.5;
    double eig_tol = 1e-9;
    int max_iter = 500;
    std::string inner = "cholesky";
    double stabilization_tol = 1e-3;
    bool use_profile = false;

    double criterion_tol = 5e-3;
    double tol = 0.01;  // critical-delta bracket width
    int max_estimates = 12;
    std::vector<double> grid = {1.2, 1.5, 1.8, 2.0};

    std::optional<double> b_delta;  // rellich: use this instead of estimating
    std::optional<double> rellich_B;
    double B_scale = 1.0;
    std::optional<double> layer;  // rellich layer width; default min(1, inradius)
    int grid_points = 20001;

    int d = 2;  // radial-classify
    double lambda = 1.0;
    double r_min = 1e-4;

    std::vector<double> anchor_center;  // volume-scan; empty: origin
    double anchor_radius = 2.0;
    std::vector<double> volume_r = {0.08, 0.04, 0.02, 0.01};  // strictly decreasing
    int samples = 20000;
    std::uint64_t seed = 12345;

    std::string output;  // empty: standard output
    std::string format = "json";
    std::string plot;  // plot kind written next to the report
    std::string plot_output;
    int threads = 0;  // 0: HARDYLAB_THREADS
};

nlohmann::json config_to_json(const RunConfig& config);
// Unknown keys and ill-typed values raise ConfigError naming the field.
RunConfig config_from_json(const nlohmann::json& doc);

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitUndetermined = 2;

// Runs one pipeline. Reports go to config.output or `out`; diagnostics go to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace hardylab
