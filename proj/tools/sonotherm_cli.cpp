#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "sonotherm/config.hpp"
#include "sonotherm/experiment.hpp"

namespace fs = std::filesystem;
using namespace sonotherm;

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    bool seed_set = false;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool config_required = true) {
    auto* c = cmd->add_option("--config", args.config_path, "JSON run configuration");
    if (config_required)
        c->required();
    cmd->add_option("--out", args.out_dir, "output directory");
    cmd->add_option("--seed", args.seed, "seed override")->each([&](const std::string&) {
        args.seed_set = true;
    });
}

RunConfig load_config(const CommonArgs& args) {
    RunConfig cfg = args.config_path.empty() ? RunConfig{} : RunConfig::from_file(args.config_path);
    if (cfg.stack.layers.empty())
        cfg.stack = ThermalStack::default_glove_skin();
    if (args.seed_set)
        cfg.seed = args.seed;
    return cfg;
}

std::ofstream open_out(const CommonArgs& args, const std::string& name, bool binary = false) {
    fs::create_directories(args.out_dir);
    const fs::path p = fs::path(args.out_dir) / name;
    std::ofstream f(p, binary ? std::ios::binary : std::ios::out);
    if (!f)
        throw std::runtime_error("cannot open output file: " + p.string());
    return f;
}

FieldGrid compute_field(const RunConfig& cfg, const ArrayLayout& layout) {
    DriveSolution drive = focus_phases(layout, cfg.focal_point);
    drive.base_amplitude = cfg.base_amplitude;
    drive.mode = cfg.mode;
    GridSpec spec;
    spec.center = cfg.focal_point;
    spec.nu = cfg.grid_nu;
    spec.nv = cfg.grid_nv;
    spec.spacing_m = cfg.grid_spacing_m;
    return field_on_plane(layout, drive, spec);
}

int cmd_field(const CommonArgs& args) {
    const RunConfig cfg = load_config(args);
    const ArrayLayout layout = build_dual_array(cfg.array);
    const FieldGrid field = compute_field(cfg, layout);
    {
        auto f = open_out(args, "field.csv");
        write_field_csv(field, f);
    }
    {
        auto f = open_out(args, "field.pgm", true);
        write_field_pgm(field, f);
    }
    std::cout << "wrote field.csv and field.pgm (" << field.nu << "x" << field.nv << ")\n";
    return 0;
}

int cmd_thermal(const CommonArgs& args) {
    const RunConfig cfg = load_config(args);
    const ArrayLayout layout = build_dual_array(cfg.array);

    ThermalRunSpec spec;
    spec.mode = cfg.mode;
    spec.duration_s = cfg.duration_s;
    spec.focus_height_m = cfg.focal_point.z;
    spec.probe_radii_m = cfg.probe_radii_m;
    spec.sample_period_s = cfg.sample_period_s;
    spec.normalize_initial = cfg.normalize_initial;
    spec.frame_interval_s = cfg.frame_interval_s;
    spec.base_amplitude = cfg.base_amplitude;

    const ThermalRunResult result = run_thermal_experiment(spec, layout, cfg.stack);
    {
        auto f = open_out(args, "probes.csv");
        write_probe_csv(result.series, f);
    }
    for (std::size_t i = 0; i < result.frames.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "frame_%04zu.csv", i);
        auto f = open_out(args, name);
        write_grid_csv(result.frames[i], f);
    }
    std::cout << "wrote probes.csv (" << result.series.samples.size() << " samples)";
    if (!result.frames.empty())
        std::cout << " and " << result.frames.size() << " grid frames";
    std::cout << '\n';
    return 0;
}

int cmd_calibrate(const CommonArgs& args) {
    const RunConfig cfg = load_config(args);
    const ArrayLayout layout = build_dual_array(cfg.array);
    const FieldGrid field = compute_field(cfg, layout);

    const CalibrationResult result =
        calibrate_absorption(cfg.stack, field, cfg.mode, cfg.medium, cfg.calibrate_target_s,
                             cfg.pain_threshold_c, cfg.duration_s, cfg.sample_period_s);

    std::cout << "absorption_fraction " << result.absorption_fraction << '\n'
              << "achieved_time_s " << result.achieved_time_s << '\n';
    auto f = open_out(args, "calibration_patch.json");
    f << "{\n  \"stack\": {\n    \"absorption_fraction\": " << result.absorption_fraction
      << "\n  }\n}\n";
    return 0;
}

int cmd_plan(const CommonArgs& args) {
    const RunConfig cfg = load_config(args);
    const ArrayLayout layout = build_dual_array(cfg.array);
    const FieldGrid field = compute_field(cfg, layout);

    // Predictor: rescale the unit-amplitude field and simulate to threshold.
    const ThermalPredictor predictor = [&](const ExposureMode& mode,
                                           double amplitude) -> std::optional<double> {
        FieldGrid scaled = field;
        const double s = cfg.base_amplitude > 0.0 ? amplitude / cfg.base_amplitude : 0.0;
        for (auto& v : scaled.values)
            v *= s;
        const RadialProfile flux = absorbed_flux(scaled, cfg.stack, mode, cfg.medium);
        const ProbeSeries series =
            simulate(cfg.stack, flux, kExposureDurationCap, {0.0}, cfg.sample_period_s);
        return time_to_threshold(series, cfg.pain_threshold_c);
    };

    const ExposurePlan plan =
        plan_exposure(cfg.mode, cfg.duration_s, cfg.base_amplitude, cfg.focal_point, predictor);
    auto f = open_out(args, "plan.txt");
    f << plan.to_record() << '\n';
    std::cout << plan.to_record() << '\n';
    return 0;
}

int cmd_protocol(const CommonArgs& args) {
    const RunConfig cfg = load_config(args);
    const TrialPlan plan = make_trial_plan(cfg.seed);
    auto f = open_out(args, "trial_plan.csv");
    write_trial_plan_csv(plan, f);
    std::cout << "wrote trial_plan.csv (seed " << cfg.seed << ")\n";
    return 0;
}

int cmd_aggregate(const CommonArgs& args, const std::string& records_path) {
    std::ifstream rf(records_path);
    if (!rf)
        throw std::runtime_error("cannot open records file: " + records_path);
    const std::vector<TrialRecord> records = read_trial_records_csv(rf);
    const ConfusionTable table = aggregate(records);
    {
        auto f = open_out(args, "confusion.csv");
        write_confusion_csv(table, f);
    }
    write_confusion_text(table, std::cout);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ultrasound glove-heating simulator and stimulus planner"};
    app.require_subcommand(1);

    CommonArgs field_args, thermal_args, cal_args, plan_args, proto_args, agg_args;
    std::string records_path;

    add_common(app.add_subcommand("field", "focal pressure field on the glove plane"), field_args,
               false);
    add_common(app.add_subcommand("thermal", "thermal run: probe series + grid frames"),
               thermal_args, false);
    add_common(app.add_subcommand("calibrate", "fit absorption fraction to the pain-time target"),
               cal_args, false);
    add_common(app.add_subcommand("plan", "safety-gated exposure plan"), plan_args, false);
    add_common(app.add_subcommand("protocol", "randomized 30-trial schedule"), proto_args, false);
    auto* agg = app.add_subcommand("aggregate", "confusion table from trial records");
    add_common(agg, agg_args, false);
    agg->add_option("--records", records_path, "trial records CSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (app.got_subcommand("field"))
            return cmd_field(field_args);
        if (app.got_subcommand("thermal"))
            return cmd_thermal(thermal_args);
        if (app.got_subcommand("calibrate"))
            return cmd_calibrate(cal_args);
        if (app.got_subcommand("plan"))
            return cmd_plan(plan_args);
        if (app.got_subcommand("protocol"))
            return cmd_protocol(proto_args);
        if (app.got_subcommand("aggregate"))
            return cmd_aggregate(agg_args, records_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}
