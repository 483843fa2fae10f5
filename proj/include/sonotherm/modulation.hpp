#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

#include "sonotherm/vec3.hpp"

namespace sonotherm {

// Irradiation mode: SP is constant-amplitude, AM gates the carrier on/off
// at am_frequency with the given duty cycle.
struct ExposureMode {
    enum class Kind { SP, AM };

    Kind kind = Kind::SP;
    double am_frequency_hz = 150.0;
    double am_duty = 0.5;

    static ExposureMode sp() { return {Kind::SP, 150.0, 0.5}; }
    static ExposureMode am(double freq_hz = 150.0, double duty = 0.5);

    void validate() const;
};

enum class GateReason { Requested, DurationCap, ThermalCutoff };

std::string to_string(GateReason r);
std::string to_string(ExposureMode::Kind k);

struct ExposurePlan {
    ExposureMode mode;
    double duration_s = 0.0;
    double base_amplitude = 1.0;
    Vec3 focal_point;
    GateReason gate_reason = GateReason::Requested;

    std::string to_record() const;
};

// Amplitude envelope at time t, in [0,1]. SP: always 1. AM: rectangular.
double envelope(const ExposureMode& mode, double t_s);

// Mean of envelope^2 over one period. SP -> 1, AM(duty d) -> d.
double effective_energy_factor(const ExposureMode& mode);

// Time for the peak skin-interface temperature to reach the pain threshold,
// or nullopt if never reached within the planning horizon.
using ThermalPredictor =
    std::function<std::optional<double>(const ExposureMode&, double base_amplitude)>;

inline constexpr double kExposureDurationCap = 10.0; // s

ExposurePlan plan_exposure(const ExposureMode& mode, double requested_duration_s,
                           double base_amplitude, const Vec3& focal_point,
                           const ThermalPredictor& predictor);

} // namespace sonotherm
