#include "sonotherm/config.hpp"

#include <fstream>
#include <set>

#include <json.hpp>

namespace sonotherm {

namespace {

using nlohmann::json;

// Pulls known keys out of an object and rejects anything left over, naming
// the offending key with its path.
class ObjectReader {
  public:
    ObjectReader(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
        if (!obj.is_object())
            throw ConfigError("expected an object at '" + path_ + "'");
    }

    template <typename T>
    void get(const char* key, T& out) {
        if (auto it = obj_.find(key); it != obj_.end()) {
            try {
                out = it->get<T>();
            } catch (const json::exception&) {
                throw ConfigError("bad value type for key '" + path_ + key + "'");
            }
        }
        seen_.insert(key);
    }

    const json* child(const char* key) {
        seen_.insert(key);
        auto it = obj_.find(key);
        return it != obj_.end() ? &*it : nullptr;
    }

    ~ObjectReader() noexcept(false) {
        if (std::uncaught_exceptions())
            return;
        for (auto it = obj_.begin(); it != obj_.end(); ++it)
            if (!seen_.count(it.key()))
                throw ConfigError("unknown config key '" + path_ + it.key() + "'");
    }

  private:
    const json& obj_;
    std::string path_;
    std::set<std::string> seen_;
};

void read_array(const json& j, ArrayBuildConfig& a) {
    ObjectReader r(j, "array.");
    r.get("rows", a.rows);
    r.get("cols", a.cols);
    r.get("pitch_m", a.pitch_m);
    r.get("transducer_radius_m", a.transducer_radius_m);
    r.get("ref_amplitude_pa", a.ref_amplitude_pa);
    r.get("corner_trim", a.corner_trim);
    r.get("num_arrays", a.num_arrays);
    r.get("array_offset_x_m", a.array_offset_x_m);
    r.get("frequency_hz", a.frequency_hz);
    r.get("sound_speed_m_per_s", a.sound_speed);
    r.get("air_density_kg_per_m3", a.air_density);
}

void read_mode(const json& j, ExposureMode& m) {
    ObjectReader r(j, "mode.");
    std::string kind = to_string(m.kind);
    r.get("kind", kind);
    if (kind == "SP")
        m.kind = ExposureMode::Kind::SP;
    else if (kind == "AM")
        m.kind = ExposureMode::Kind::AM;
    else
        throw ConfigError("mode.kind must be SP or AM");
    r.get("am_frequency_hz", m.am_frequency_hz);
    r.get("am_duty", m.am_duty);
    m.validate();
}

MaterialLayer read_layer(const json& j, int index) {
    MaterialLayer l{"layer" + std::to_string(index), 0.001, 1000.0, 1000.0, 0.1};
    ObjectReader r(j, "stack.layers[" + std::to_string(index) + "].");
    r.get("name", l.name);
    r.get("thickness_m", l.thickness_m);
    r.get("density_kg_per_m3", l.density);
    r.get("specific_heat_j_per_kg_k", l.specific_heat);
    r.get("conductivity_w_per_m_k", l.conductivity);
    return l;
}

void read_stack(const json& j, ThermalStack& s) {
    ObjectReader r(j, "stack.");
    if (const json* layers = r.child("layers")) {
        if (!layers->is_array() || layers->empty())
            throw ConfigError("stack.layers must be a non-empty array");
        s.layers.clear();
        int i = 0;
        for (const auto& lj : *layers)
            s.layers.push_back(read_layer(lj, i++));
    }
    r.get("absorption_fraction", s.absorption_fraction);
    r.get("ambient_temperature_c", s.ambient_temperature_c);
    r.get("initial_temperature_c", s.initial_temperature_c);
    r.get("convection_coefficient_w_per_m2_k", s.convection_coefficient);
    r.get("domain_radius_m", s.domain_radius_m);
    r.get("dr_m", s.dr_m);
    r.get("dz_m", s.dz_m);
    std::string bottom = s.bottom == BottomBoundary::FixedInitial ? "fixed_initial" : "insulated";
    r.get("bottom_boundary", bottom);
    if (bottom == "fixed_initial")
        s.bottom = BottomBoundary::FixedInitial;
    else if (bottom == "insulated")
        s.bottom = BottomBoundary::Insulated;
    else
        throw ConfigError("stack.bottom_boundary must be fixed_initial or insulated");
}

} // namespace

RunConfig RunConfig::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }

    RunConfig cfg;
    cfg.stack = ThermalStack::default_glove_skin();

    ObjectReader r(j, "");
    r.get("seed", cfg.seed);
    if (const json* c = r.child("array"))
        read_array(*c, cfg.array);
    if (const json* c = r.child("mode"))
        read_mode(*c, cfg.mode);
    if (const json* c = r.child("stack"))
        read_stack(*c, cfg.stack);
    r.get("focus_height_m", cfg.focal_point.z);
    r.get("base_amplitude", cfg.base_amplitude);
    r.get("duration_s", cfg.duration_s);
    r.get("sample_period_s", cfg.sample_period_s);
    r.get("probe_radii_m", cfg.probe_radii_m);
    r.get("normalize_initial", cfg.normalize_initial);
    r.get("frame_interval_s", cfg.frame_interval_s);
    if (const json* c = r.child("grid")) {
        ObjectReader g(*c, "grid.");
        g.get("nu", cfg.grid_nu);
        g.get("nv", cfg.grid_nv);
        g.get("spacing_m", cfg.grid_spacing_m);
    }
    if (const json* c = r.child("calibrate")) {
        ObjectReader g(*c, "calibrate.");
        g.get("target_s", cfg.calibrate_target_s);
        g.get("pain_threshold_c", cfg.pain_threshold_c);
    }

    cfg.medium = Medium{cfg.array.air_density, cfg.array.sound_speed};
    return cfg;
}

RunConfig RunConfig::from_file(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f)
        throw ConfigError("cannot open config file: " + path.string());
    std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    return from_json_text(text);
}

} // namespace sonotherm
