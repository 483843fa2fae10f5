#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "sonotherm/thermal_model.hpp"

namespace sonotherm {

struct ThermalRunSpec {
    ExposureMode mode;
    double duration_s = 10.0;
    double focus_height_m = 0.200;
    std::vector<double> probe_radii_m{0.0, 0.005, 0.010, 0.015};
    double sample_period_s = 0.010;
    bool normalize_initial = false;
    double normalized_initial_c = 31.125; // shift target when normalizing
    double frame_interval_s = 0.0;        // 0 = no grid frames
    double base_amplitude = 1.0;
};

struct ThermalRunResult {
    ProbeSeries series;
    std::vector<ThermalState> frames;
    FieldGrid field;
};

ThermalRunResult run_thermal_experiment(const ThermalRunSpec& spec, const ArrayLayout& layout,
                                        const ThermalStack& stack);

enum class TrialPattern : std::uint8_t { SP, AM, None };
enum class ResponseOption : std::uint8_t { HeatOnly, VibrationOnly, Both, None };

std::string to_string(TrialPattern p);
std::string to_string(ResponseOption r);
std::optional<TrialPattern> parse_trial_pattern(std::string_view s);
std::optional<ResponseOption> parse_response_option(std::string_view s);

struct Trial {
    TrialPattern pattern;
    double presentation_s = 5.0;
    double rest_s = 10.0;
};

// 30 trials, 10 per pattern, order a seed-deterministic permutation.
struct TrialPlan {
    std::uint64_t seed = 0;
    std::vector<Trial> trials;
};

TrialPlan make_trial_plan(std::uint64_t seed);

struct TrialRecord {
    int participant = 0;
    int trial_index = 0;
    TrialPattern pattern;
    ResponseOption response;
};

// Percentages by (pattern row, response column); rows sum to 100.
struct ConfusionTable {
    std::array<std::array<double, 4>, 3> percent{};
};

// Per-participant response rates averaged over participants.
ConfusionTable aggregate(const std::vector<TrialRecord>& records);

void write_trial_plan_csv(const TrialPlan& plan, std::ostream& os);
std::vector<TrialRecord> read_trial_records_csv(std::istream& is);
void write_confusion_csv(const ConfusionTable& table, std::ostream& os);
void write_confusion_text(const ConfusionTable& table, std::ostream& os);

} // namespace sonotherm
