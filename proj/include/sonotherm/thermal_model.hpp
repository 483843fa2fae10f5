#pragma once

#include <optional>
#include <vector>

#include "sonotherm/acoustic_field.hpp"
#include "sonotherm/modulation.hpp"

namespace sonotherm {

struct MaterialLayer {
    std::string name;
    double thickness_m;
    double density;       // kg/m^3
    double specific_heat; // J/(kg K)
    double conductivity;  // W/(m K)

    double diffusivity() const { return conductivity / (density * specific_heat); }
};

enum class BottomBoundary { FixedInitial, Insulated };

// Layered fabric+skin stack under the focal spot. Fabric first (exposed
// face), then skin. Absorbed acoustic power is deposited in the top fabric
// cell ring; convective loss applies on the exposed face.
struct ThermalStack {
    std::vector<MaterialLayer> layers;
    double absorption_fraction = 0.2;   // of incident intensity, [0,1]
    double ambient_temperature_c = 25.0;
    double initial_temperature_c = 31.125;
    double convection_coefficient = 10.0; // W/(m^2 K), exposed fabric face
    BottomBoundary bottom = BottomBoundary::FixedInitial;

    double domain_radius_m = 0.025;
    double dr_m = 0.00025;
    double dz_m = 0.00025;

    double total_thickness() const;
    // Depth of the fabric/skin interface (end of the first layer).
    double interface_depth() const { return layers.front().thickness_m; }

    static ThermalStack default_glove_skin();
};

// Axisymmetric flux profile q(r), piecewise linear in r at spacing dr.
struct RadialProfile {
    double dr_m = 0.0;
    std::vector<double> values; // W/m^2 at r = i*dr

    double at(double r_m) const; // linear interpolation, 0 beyond the last bin
};

// Cell-centered (r,z) temperature grid; r index i at (i+0.5)*dr, z index j
// at (j+0.5)*dz measured down from the exposed face.
struct ThermalState {
    int nr = 0, nz = 0;
    double dr_m = 0.0, dz_m = 0.0;
    double time_s = 0.0;
    std::vector<double> grid; // nr*nz, row = constant z

    double& at(int ir, int iz) { return grid[static_cast<std::size_t>(iz) * nr + ir]; }
    double at(int ir, int iz) const { return grid[static_cast<std::size_t>(iz) * nr + ir]; }
};

struct ProbeSeries {
    std::vector<double> probe_radii_m;
    double sample_period_s = 0.010;
    std::vector<std::vector<double>> samples; // samples[t][probe], degC

    double time_at(std::size_t row) const { return static_cast<double>(row) * sample_period_s; }
};

// Heat flux absorbed at the fabric surface:
//   q(r) = absorption_fraction * effective_energy_factor(mode) * I(r)
// with I(r) the radially averaged intensity of the (focus-centered) grid.
RadialProfile absorbed_flux(const FieldGrid& field, const ThermalStack& stack,
                            const ExposureMode& mode, const Medium& medium);

// Precomputed geometry/material coefficients for the explicit update.
class ThermalSolver {
  public:
    ThermalSolver(const ThermalStack& stack);

    ThermalState initial_state() const;
    // Largest stable dt: min over cells of 1 / (2 alpha (1/dr^2 + 1/dz^2)).
    double stability_limit() const { return dt_max_; }

    // One explicit step. Rejects dt > stability_limit (never clamps).
    void step(ThermalState& state, const RadialProfile& flux, double dt) const;

    // Temperature at the fabric/skin interface plane at radius r
    // (conductivity-weighted across the interface, linear in r).
    double interface_temperature(const ThermalState& state, double r_m) const;

    double total_energy(const ThermalState& state) const; // J, relative to 0 degC

  private:
    const ThermalStack stack_;
    int nr_, nz_;
    double dt_max_;
    int interface_iz_;               // first skin cell row (nz_ if single layer)
    double interface_weight_fabric_; // face-temperature weight of the fabric cell
    std::vector<double> rho_cp_;     // per z-row
    std::vector<double> cond_;       // per z-row
    std::vector<double> cell_volume_; // per r-column, 2 pi r dr dz
    // Per-cell exchange rates (1/s) toward each neighbor; step scales by dt.
    std::vector<double> rate_w_, rate_e_, rate_n_, rate_s_; // nr*nz
    double flux_gain_ = 0.0; // degC per (W/m^2 * s) deposited in a top cell
    mutable double cached_dt_ = -1.0;
    mutable std::vector<double> cw_, ce_, cn_, cs_; // dt-scaled copies
    mutable std::vector<double> scratch_;
    void precompute();
};

// Runs the explicit solver for `duration`, sampling interface temperatures at
// the probe radii every sample_period. Row count = floor(duration/period)+1.
ProbeSeries simulate(const ThermalStack& stack, const RadialProfile& flux, double duration_s,
                     const std::vector<double>& probe_radii_m, double sample_period_s);

// First crossing time of `threshold` for the given probe column, by linear
// interpolation between samples; nullopt if never crossed.
std::optional<double> time_to_threshold(const ProbeSeries& series, double threshold_c,
                                        std::size_t probe_index = 0);

struct CalibrationResult {
    double absorption_fraction;
    double achieved_time_s;
};

// Bisection on absorption_fraction so the center probe reaches `threshold`
// at `target_time`. Errors if unreachable at absorption_fraction = 1.
CalibrationResult calibrate_absorption(const ThermalStack& stack_template, const FieldGrid& field,
                                       const ExposureMode& mode, const Medium& medium,
                                       double target_time_s, double threshold_c,
                                       double sim_duration_s = 10.0,
                                       double sample_period_s = 0.010);

void write_probe_csv(const ProbeSeries& series, std::ostream& os);
void write_grid_csv(const ThermalState& state, std::ostream& os);

} // namespace sonotherm
