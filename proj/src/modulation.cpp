#include "sonotherm/modulation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sonotherm {

ExposureMode ExposureMode::am(double freq_hz, double duty) {
    ExposureMode m{Kind::AM, freq_hz, duty};
    m.validate();
    return m;
}

void ExposureMode::validate() const {
    if (kind == Kind::AM) {
        if (am_frequency_hz <= 0.0)
            throw std::invalid_argument("AM frequency must be positive");
        if (am_duty <= 0.0 || am_duty >= 1.0)
            throw std::invalid_argument("AM duty must be in (0,1)");
    }
}

std::string to_string(GateReason r) {
    switch (r) {
    case GateReason::Requested: return "requested";
    case GateReason::DurationCap: return "duration_cap";
    case GateReason::ThermalCutoff: return "thermal_cutoff";
    }
    return "?";
}

std::string to_string(ExposureMode::Kind k) {
    return k == ExposureMode::Kind::SP ? "SP" : "AM";
}

std::string ExposurePlan::to_record() const {
    std::ostringstream os;
    os << to_string(mode.kind) << ' ' << mode.am_duty << ' ' << mode.am_frequency_hz << ' '
       << duration_s << ' ' << base_amplitude << ' ' << to_string(gate_reason);
    return os.str();
}

double envelope(const ExposureMode& mode, double t_s) {
    if (t_s < 0.0)
        throw std::invalid_argument("envelope time must be >= 0");
    if (mode.kind == ExposureMode::Kind::SP)
        return 1.0;
    const double period = 1.0 / mode.am_frequency_hz;
    double frac = std::fmod(t_s, period) / period;
    if (frac < 0.0)
        frac += 1.0;
    if (1.0 - frac < 1e-9) // exact period multiple up to fp rounding
        frac = 0.0;
    return frac < mode.am_duty ? 1.0 : 0.0;
}

double effective_energy_factor(const ExposureMode& mode) {
    mode.validate();
    return mode.kind == ExposureMode::Kind::SP ? 1.0 : mode.am_duty;
}

ExposurePlan plan_exposure(const ExposureMode& mode, double requested_duration_s,
                           double base_amplitude, const Vec3& focal_point,
                           const ThermalPredictor& predictor) {
    if (requested_duration_s <= 0.0)
        throw std::invalid_argument("requested duration must be positive");
    if (base_amplitude < 0.0 || base_amplitude > 1.0)
        throw std::invalid_argument("base_amplitude outside [0,1]");
    mode.validate();

    ExposurePlan plan;
    plan.mode = mode;
    plan.base_amplitude = base_amplitude;
    plan.focal_point = focal_point;
    plan.duration_s = requested_duration_s;
    plan.gate_reason = GateReason::Requested;

    if (plan.duration_s > kExposureDurationCap) {
        plan.duration_s = kExposureDurationCap;
        plan.gate_reason = GateReason::DurationCap;
    }
    if (predictor) {
        if (auto cutoff = predictor(mode, base_amplitude); cutoff && *cutoff < plan.duration_s) {
            plan.duration_s = *cutoff;
            plan.gate_reason = GateReason::ThermalCutoff;
        }
    }
    return plan;
}

} // namespace sonotherm
