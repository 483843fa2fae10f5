#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "sonotherm/array_model.hpp"
#include "sonotherm/experiment.hpp"
#include "sonotherm/thermal_model.hpp"

namespace sonotherm {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Full run configuration, read from a JSON file. Unknown keys are rejected
// with the offending key named. All physical quantities carry SI unit
// suffixes in their key names.
struct RunConfig {
    ArrayBuildConfig array;
    Medium medium;
    ThermalStack stack;
    ExposureMode mode;

    Vec3 focal_point{0.0, 0.0, 0.200};
    double base_amplitude = 1.0;
    double duration_s = 10.0;
    double sample_period_s = 0.010;
    std::vector<double> probe_radii_m{0.0, 0.005, 0.010, 0.015};
    bool normalize_initial = false;
    double frame_interval_s = 0.0;

    // field grid
    int grid_nu = 41, grid_nv = 41;
    double grid_spacing_m = 0.001;

    // calibration
    double calibrate_target_s = 5.88;
    double pain_threshold_c = 45.0;

    std::uint64_t seed = 0;

    static RunConfig from_file(const std::filesystem::path& path);
    static RunConfig from_json_text(const std::string& text);
};

} // namespace sonotherm
