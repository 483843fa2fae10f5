#include "sonotherm/experiment.hpp"

#include <algorithm>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

namespace sonotherm {

ThermalRunResult run_thermal_experiment(const ThermalRunSpec& spec, const ArrayLayout& layout,
                                        const ThermalStack& stack) {
    if (spec.duration_s > kExposureDurationCap)
        throw std::invalid_argument("thermal run duration exceeds the 10 s exposure cap");
    for (double r : spec.probe_radii_m)
        if (r > stack.domain_radius_m)
            throw std::invalid_argument("probe radius outside the thermal domain");

    const Vec3 focus{0.0, 0.0, spec.focus_height_m};
    DriveSolution drive = focus_phases(layout, focus);
    drive.base_amplitude = spec.base_amplitude;
    drive.mode = spec.mode;

    GridSpec grid_spec;
    grid_spec.center = focus;

    ThermalRunResult result;
    result.field = field_on_plane(layout, drive, grid_spec);

    const Medium medium{layout.air_density, layout.sound_speed};
    const RadialProfile flux = absorbed_flux(result.field, stack, spec.mode, medium);

    result.series = simulate(stack, flux, spec.duration_s, spec.probe_radii_m,
                             spec.sample_period_s);

    if (spec.frame_interval_s > 0.0) {
        // Re-run the solver to capture full-grid frames at the requested cadence.
        ThermalSolver solver(stack);
        ThermalState state = solver.initial_state();
        const int steps_per_frame = std::max(
            1, static_cast<int>(std::ceil(spec.frame_interval_s / (0.8 * solver.stability_limit()))));
        const double dt = spec.frame_interval_s / steps_per_frame;
        result.frames.push_back(state);
        const auto nframes =
            static_cast<std::size_t>(std::floor(spec.duration_s / spec.frame_interval_s));
        for (std::size_t f = 0; f < nframes; ++f) {
            for (int k = 0; k < steps_per_frame; ++k)
                solver.step(state, flux, dt);
            result.frames.push_back(state);
        }
    }

    if (spec.normalize_initial && !result.series.samples.empty()) {
        const double shift = spec.normalized_initial_c - result.series.samples[0][0];
        for (auto& row : result.series.samples)
            for (auto& v : row)
                v += shift;
        for (auto& frame : result.frames)
            for (auto& v : frame.grid)
                v += shift;
    }
    return result;
}

std::string to_string(TrialPattern p) {
    switch (p) {
    case TrialPattern::SP: return "SP";
    case TrialPattern::AM: return "AM";
    case TrialPattern::None: return "None";
    }
    return "?";
}

std::string to_string(ResponseOption r) {
    switch (r) {
    case ResponseOption::HeatOnly: return "HeatOnly";
    case ResponseOption::VibrationOnly: return "VibrationOnly";
    case ResponseOption::Both: return "Both";
    case ResponseOption::None: return "None";
    }
    return "?";
}

std::optional<TrialPattern> parse_trial_pattern(std::string_view s) {
    if (s == "SP") return TrialPattern::SP;
    if (s == "AM") return TrialPattern::AM;
    if (s == "None") return TrialPattern::None;
    return std::nullopt;
}

std::optional<ResponseOption> parse_response_option(std::string_view s) {
    if (s == "HeatOnly") return ResponseOption::HeatOnly;
    if (s == "VibrationOnly") return ResponseOption::VibrationOnly;
    if (s == "Both") return ResponseOption::Both;
    if (s == "None") return ResponseOption::None;
    return std::nullopt;
}

TrialPlan make_trial_plan(std::uint64_t seed) {
    TrialPlan plan;
    plan.seed = seed;
    plan.trials.reserve(30);
    for (TrialPattern p : {TrialPattern::SP, TrialPattern::AM, TrialPattern::None})
        for (int i = 0; i < 10; ++i)
            plan.trials.push_back({p, 5.0, 10.0});
    std::mt19937_64 rng(seed);
    std::shuffle(plan.trials.begin(), plan.trials.end(), rng);
    return plan;
}

ConfusionTable aggregate(const std::vector<TrialRecord>& records) {
    if (records.empty())
        throw std::invalid_argument("no records");

    // per participant: counts[pattern][response] and presentations[pattern]
    struct Counts {
        std::array<std::array<double, 4>, 3> by{};
        std::array<double, 3> shown{};
    };
    std::map<int, Counts> per_participant;
    for (const auto& rec : records) {
        auto& c = per_participant[rec.participant];
        c.by[static_cast<int>(rec.pattern)][static_cast<int>(rec.response)] += 1.0;
        c.shown[static_cast<int>(rec.pattern)] += 1.0;
    }

    ConfusionTable table;
    for (int p = 0; p < 3; ++p) {
        for (const auto& [id, c] : per_participant) {
            (void)id;
            if (c.shown[p] == 0.0)
                throw std::invalid_argument("pattern " +
                                            to_string(static_cast<TrialPattern>(p)) +
                                            " has zero presentations for a participant");
            for (int r = 0; r < 4; ++r)
                table.percent[p][r] += 100.0 * c.by[p][r] / c.shown[p];
        }
        for (int r = 0; r < 4; ++r)
            table.percent[p][r] /= static_cast<double>(per_participant.size());
    }
    return table;
}

void write_trial_plan_csv(const TrialPlan& plan, std::ostream& os) {
    os << "trial_index,pattern,presentation_s,rest_s\n";
    for (std::size_t i = 0; i < plan.trials.size(); ++i) {
        const Trial& t = plan.trials[i];
        os << i << ',' << to_string(t.pattern) << ',' << t.presentation_s << ',' << t.rest_s
           << '\n';
    }
}

std::vector<TrialRecord> read_trial_records_csv(std::istream& is) {
    std::vector<TrialRecord> records;
    std::string line;
    bool header_skipped = false;
    while (std::getline(is, line)) {
        if (line.empty())
            continue;
        if (!header_skipped) {
            header_skipped = true;
            if (line.find("participant") != std::string::npos)
                continue;
        }
        std::istringstream ls(line);
        std::string part, idx, pat, resp;
        if (!std::getline(ls, part, ',') || !std::getline(ls, idx, ',') ||
            !std::getline(ls, pat, ',') || !std::getline(ls, resp, ','))
            throw std::invalid_argument("malformed record line: " + line);
        TrialRecord rec;
        rec.participant = std::stoi(part);
        rec.trial_index = std::stoi(idx);
        const auto p = parse_trial_pattern(pat);
        const auto r = parse_response_option(resp);
        if (!p || !r)
            throw std::invalid_argument("bad pattern or response in line: " + line);
        rec.pattern = *p;
        rec.response = *r;
        records.push_back(rec);
    }
    return records;
}

namespace {
constexpr std::array<const char*, 3> kPatternNames{"SP", "AM", "None"};
constexpr std::array<const char*, 4> kResponseNames{"HeatOnly", "VibrationOnly", "Both", "None"};
} // namespace

void write_confusion_csv(const ConfusionTable& table, std::ostream& os) {
    os << "pattern";
    for (const char* r : kResponseNames)
        os << ',' << r;
    os << '\n';
    for (int p = 0; p < 3; ++p) {
        os << kPatternNames[p];
        for (int r = 0; r < 4; ++r)
            os << ',' << table.percent[p][r];
        os << '\n';
    }
}

void write_confusion_text(const ConfusionTable& table, std::ostream& os) {
    os << std::left << std::setw(8) << "pattern";
    for (const char* r : kResponseNames)
        os << std::right << std::setw(15) << r;
    os << '\n';
    for (int p = 0; p < 3; ++p) {
        os << std::left << std::setw(8) << kPatternNames[p];
        for (int r = 0; r < 4; ++r)
            os << std::right << std::setw(14) << std::fixed << std::setprecision(1)
               << table.percent[p][r] << '%';
        os << '\n';
    }
    os.unsetf(std::ios::fixed);
}

} // namespace sonotherm
