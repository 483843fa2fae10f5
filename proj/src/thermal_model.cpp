#include "sonotherm/thermal_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "sonotherm/kernels.hpp"

namespace sonotherm {

double ThermalStack::total_thickness() const {
    double t = 0.0;
    for (const auto& l : layers)
        t += l.thickness_m;
    return t;
}

ThermalStack ThermalStack::default_glove_skin() {
    ThermalStack s;
    s.layers = {
        {"cotton_fabric", 0.001, 400.0, 1300.0, 0.06},
        {"skin", 0.005, 1100.0, 3500.0, 0.35},
    };
    return s;
}

double RadialProfile::at(double r_m) const {
    if (values.empty() || r_m < 0.0)
        return 0.0;
    const double x = r_m / dr_m;
    const double last = static_cast<double>(values.size() - 1);
    if (x >= last) {
        // taper to zero over one bin past the last sample
        const double over = x - last;
        return over >= 1.0 ? 0.0 : values.back() * (1.0 - over);
    }
    const auto i = static_cast<std::size_t>(x);
    const double f = x - static_cast<double>(i);
    return values[i] * (1.0 - f) + values[i + 1] * f;
}

RadialProfile absorbed_flux(const FieldGrid& field, const ThermalStack& stack,
                            const ExposureMode& mode, const Medium& medium) {
    if (std::abs(field.u_axis.z) > 1e-9 || std::abs(field.v_axis.z) > 1e-9)
        throw std::invalid_argument("field grid is not aligned with the stack surface plane");
    if (stack.absorption_fraction < 0.0 || stack.absorption_fraction > 1.0)
        throw std::invalid_argument("absorption_fraction outside [0,1]");

    const double scale = stack.absorption_fraction * effective_energy_factor(mode);
    const Vec3 center = field.point((field.nu - 1) / 2, (field.nv - 1) / 2);

    // Radially average intensity into bins one grid spacing wide.
    const double dr = field.spacing_m;
    std::vector<double> sum, count;
    for (int iu = 0; iu < field.nu; ++iu) {
        for (int iv = 0; iv < field.nv; ++iv) {
            const double r = (field.point(iu, iv) - center).norm();
            const auto bin = static_cast<std::size_t>(std::lround(r / dr));
            if (bin >= sum.size()) {
                sum.resize(bin + 1, 0.0);
                count.resize(bin + 1, 0.0);
            }
            sum[bin] += intensity(field.at(iu, iv), medium);
            count[bin] += 1.0;
        }
    }
    RadialProfile profile;
    profile.dr_m = dr;
    profile.values.resize(sum.size());
    for (std::size_t i = 0; i < sum.size(); ++i)
        profile.values[i] = count[i] > 0.0 ? scale * sum[i] / count[i] : 0.0;
    return profile;
}

namespace {

int layer_cells(const MaterialLayer& l, double dz) {
    const int n = static_cast<int>(std::lround(l.thickness_m / dz));
    if (n < 1)
        throw std::invalid_argument("layer '" + l.name + "' thinner than one cell");
    return n;
}

double harmonic_mean(double a, double b) { return 2.0 * a * b / (a + b); }

} // namespace

ThermalSolver::ThermalSolver(const ThermalStack& stack) : stack_(stack) {
    if (stack.layers.empty())
        throw std::invalid_argument("thermal stack needs at least one layer");
    for (const auto& l : stack.layers) {
        if (l.thickness_m <= 0.0 || l.density <= 0.0 || l.specific_heat <= 0.0 ||
            l.conductivity <= 0.0)
            throw std::invalid_argument("layer '" + l.name + "' has non-positive parameters");
    }
    if (stack.dr_m <= 0.0 || stack.dz_m <= 0.0 || stack.domain_radius_m <= 0.0)
        throw std::invalid_argument("grid spacings and domain radius must be positive");

    nr_ = static_cast<int>(std::lround(stack.domain_radius_m / stack.dr_m));
    if (nr_ < 2)
        throw std::invalid_argument("domain radius too small for the radial spacing");

    nz_ = 0;
    const int fabric_cells = layer_cells(stack.layers[0], stack.dz_m);
    for (const auto& l : stack.layers)
        nz_ += layer_cells(l, stack.dz_m);
    interface_iz_ = stack.layers.size() > 1 ? fabric_cells : nz_;
    if (stack.layers.size() > 1) {
        const double kf = stack.layers[0].conductivity;
        const double ks = stack.layers[1].conductivity;
        interface_weight_fabric_ = kf / (kf + ks);
    } else {
        interface_weight_fabric_ = 1.0;
    }
    precompute();
}

void ThermalSolver::precompute() {
    const double dr = stack_.dr_m, dz = stack_.dz_m;

    rho_cp_.assign(nz_, 0.0);
    cond_.assign(nz_, 0.0);
    {
        int j = 0;
        for (const auto& l : stack_.layers) {
            const int n = layer_cells(l, dz);
            for (int c = 0; c < n; ++c, ++j) {
                rho_cp_[j] = l.density * l.specific_heat;
                cond_[j] = l.conductivity;
            }
        }
    }

    cell_volume_.assign(nr_, 0.0);
    for (int i = 0; i < nr_; ++i)
        cell_volume_[i] = 2.0 * std::numbers::pi * (i + 0.5) * dr * dr * dz;

    const std::size_t ncells = static_cast<std::size_t>(nr_) * nz_;
    rate_w_.assign(ncells, 0.0);
    rate_e_.assign(ncells, 0.0);
    rate_n_.assign(ncells, 0.0);
    rate_s_.assign(ncells, 0.0);

    double dt_max = std::numeric_limits<double>::infinity();
    for (int j = 0; j < nz_; ++j) {
        const double alpha = cond_[j] / rho_cp_[j];
        dt_max = std::min(dt_max, 1.0 / (2.0 * alpha * (1.0 / (dr * dr) + 1.0 / (dz * dz))));
        for (int i = 0; i < nr_; ++i) {
            const std::size_t c = static_cast<std::size_t>(j) * nr_ + i;
            // radial faces; axis (i=0) and outer rim are flux-free
            if (i > 0)
                rate_w_[c] = alpha * i / ((i + 0.5) * dr * dr);
            if (i < nr_ - 1)
                rate_e_[c] = alpha * (i + 1) / ((i + 0.5) * dr * dr);
            // axial faces
            if (j > 0)
                rate_n_[c] = harmonic_mean(cond_[j - 1], cond_[j]) / (rho_cp_[j] * dz * dz);
            else {
                // massless surface node: half-cell conduction G in series with
                // the convective film h, so the effective ambient conductance
                // is Gh/(G+h) and a fraction G/(G+h) of the surface flux
                // reaches the top cell. Keeps the top boundary second order.
                const double g = 2.0 * cond_[0] / dz;
                const double h = stack_.convection_coefficient;
                rate_n_[c] = (g * h / (g + h)) / (rho_cp_[0] * dz);
            }
            if (j < nz_ - 1)
                rate_s_[c] = harmonic_mean(cond_[j], cond_[j + 1]) / (rho_cp_[j] * dz * dz);
            else if (stack_.bottom == BottomBoundary::FixedInitial)
                rate_s_[c] = cond_[j] / (rho_cp_[j] * dz * dz); // ghost node one dz below
        }
    }
    dt_max_ = dt_max;
    {
        const double g = 2.0 * cond_[0] / dz;
        const double h = stack_.convection_coefficient;
        flux_gain_ = (g / (g + h)) / (rho_cp_[0] * dz);
    }
}

ThermalState ThermalSolver::initial_state() const {
    ThermalState s;
    s.nr = nr_;
    s.nz = nz_;
    s.dr_m = stack_.dr_m;
    s.dz_m = stack_.dz_m;
    s.time_s = 0.0;
    s.grid.assign(static_cast<std::size_t>(nr_) * nz_, stack_.initial_temperature_c);
    return s;
}

void ThermalSolver::step(ThermalState& state, const RadialProfile& flux, double dt) const {
    if (dt <= 0.0)
        throw std::invalid_argument("dt must be positive");
    if (dt > dt_max_ * (1.0 + 1e-12))
        throw std::invalid_argument("dt exceeds explicit stability limit");
    if (state.nr != nr_ || state.nz != nz_)
        throw std::invalid_argument("state does not match solver grid");

    const std::size_t ncells = rate_w_.size();
    if (cached_dt_ != dt) {
        cw_.resize(ncells); ce_.resize(ncells); cn_.resize(ncells); cs_.resize(ncells);
        for (std::size_t c = 0; c < ncells; ++c) {
            cw_[c] = rate_w_[c] * dt;
            ce_[c] = rate_e_[c] * dt;
            cn_[c] = rate_n_[c] * dt;
            cs_[c] = rate_s_[c] * dt;
        }
        cached_dt_ = dt;
    }

    const auto n = static_cast<std::size_t>(nr_);
    // scratch: new grid | padded row | top src row | ambient row | bottom row | zero row
    scratch_.resize(ncells + (n + 2) + 4 * n);
    double* fresh = scratch_.data();
    double* pad = fresh + ncells;
    double* src_top = pad + (n + 2);
    double* amb_row = src_top + n;
    double* bot_row = amb_row + n;
    double* zero_row = bot_row + n;

    for (std::size_t i = 0; i < n; ++i) {
        src_top[i] = dt * flux_gain_ * flux.at((static_cast<double>(i) + 0.5) * stack_.dr_m);
        amb_row[i] = stack_.ambient_temperature_c;
        bot_row[i] = stack_.initial_temperature_c;
        zero_row[i] = 0.0;
    }

    const auto& kern = kernels::dispatch();
    for (int j = 0; j < nz_; ++j) {
        const double* row = state.grid.data() + static_cast<std::size_t>(j) * n;
        pad[0] = row[0];
        std::copy(row, row + n, pad + 1);
        pad[n + 1] = row[n - 1];
        const double* up = j > 0 ? state.grid.data() + static_cast<std::size_t>(j - 1) * n : amb_row;
        const double* down =
            j < nz_ - 1 ? state.grid.data() + static_cast<std::size_t>(j + 1) * n : bot_row;
        const std::size_t off = static_cast<std::size_t>(j) * n;
        kern.heat_row({pad, n + 2}, {up, n}, {down, n}, {cw_.data() + off, n},
                      {ce_.data() + off, n}, {cn_.data() + off, n}, {cs_.data() + off, n},
                      {j == 0 ? src_top : zero_row, n}, {fresh + off, n});
    }
    std::copy(fresh, fresh + ncells, state.grid.data());
    state.time_s += dt;
}

double ThermalSolver::interface_temperature(const ThermalState& state, double r_m) const {
    const auto read_row = [&](int iz) {
        const double x = r_m / stack_.dr_m - 0.5;
        if (x <= 0.0)
            return state.at(0, iz);
        const int i = static_cast<int>(x);
        if (i + 1 >= nr_)
            return state.at(nr_ - 1, iz);
        const double f = x - i;
        return state.at(i, iz) * (1.0 - f) + state.at(i + 1, iz) * f;
    };
    if (interface_iz_ >= nz_)
        return read_row(0); // single-layer stack: exposed face
    // One-sided quadratic extrapolation to the material interface from each
    // side, then the flux-continuity weighting. (9*near - far)/8 is the
    // quadratic reconstruction of the face value from the two cell centers at
    // dz/2 and 3dz/2; using it instead of the raw adjacent cells removes the
    // curvature term from the readout error.
    const double near_f = read_row(interface_iz_ - 1);
    const double near_s = read_row(interface_iz_);
    double face_f = near_f, face_s = near_s;
    if (interface_iz_ >= 2)
        face_f = (9.0 * near_f - read_row(interface_iz_ - 2)) / 8.0;
    if (interface_iz_ + 1 < nz_)
        face_s = (9.0 * near_s - read_row(interface_iz_ + 1)) / 8.0;
    return interface_weight_fabric_ * face_f + (1.0 - interface_weight_fabric_) * face_s;
}

double ThermalSolver::total_energy(const ThermalState& state) const {
    double e = 0.0;
    for (int j = 0; j < nz_; ++j)
        for (int i = 0; i < nr_; ++i)
            e += rho_cp_[j] * cell_volume_[i] * state.at(i, j);
    return e;
}

ProbeSeries simulate(const ThermalStack& stack, const RadialProfile& flux, double duration_s,
                     const std::vector<double>& probe_radii_m, double sample_period_s) {
    if (duration_s <= 0.0 || duration_s > 60.0)
        throw std::invalid_argument("duration must be in (0, 60] s");
    if (sample_period_s <= 0.0)
        throw std::invalid_argument("sample_period must be positive");

    ThermalSolver solver(stack);
    ThermalState state = solver.initial_state();

    const int steps_per_sample = std::max(
        1, static_cast<int>(std::ceil(sample_period_s / (0.8 * solver.stability_limit()))));
    const double dt = sample_period_s / steps_per_sample;

    ProbeSeries series;
    series.probe_radii_m = probe_radii_m;
    series.sample_period_s = sample_period_s;
    const auto rows = static_cast<std::size_t>(std::floor(duration_s / sample_period_s)) + 1;
    series.samples.reserve(rows);

    const auto record = [&] {
        std::vector<double> row;
        row.reserve(probe_radii_m.size());
        for (double r : probe_radii_m)
            row.push_back(solver.interface_temperature(state, r));
        series.samples.push_back(std::move(row));
    };

    record();
    for (std::size_t s = 1; s < rows; ++s) {
        for (int k = 0; k < steps_per_sample; ++k)
            solver.step(state, flux, dt);
        record();
    }
    return series;
}

std::optional<double> time_to_threshold(const ProbeSeries& series, double threshold_c,
                                        std::size_t probe_index) {
    if (!std::isfinite(threshold_c))
        throw std::invalid_argument("threshold must be finite");
    for (std::size_t t = 0; t < series.samples.size(); ++t) {
        const double v = series.samples[t].at(probe_index);
        if (v >= threshold_c) {
            if (t == 0)
                return 0.0;
            const double prev = series.samples[t - 1][probe_index];
            const double f = (threshold_c - prev) / (v - prev);
            return (static_cast<double>(t - 1) + f) * series.sample_period_s;
        }
    }
    return std::nullopt;
}

CalibrationResult calibrate_absorption(const ThermalStack& stack_template, const FieldGrid& field,
                                       const ExposureMode& mode, const Medium& medium,
                                       double target_time_s, double threshold_c,
                                       double sim_duration_s, double sample_period_s) {
    if (target_time_s <= 0.0 || target_time_s > sim_duration_s)
        throw std::invalid_argument("target time outside (0, duration]");

    const std::vector<double> center_probe{0.0};
    const auto crossing_time = [&](double fraction) -> std::optional<double> {
        ThermalStack stack = stack_template;
        stack.absorption_fraction = fraction;
        const RadialProfile flux = absorbed_flux(field, stack, mode, medium);
        const ProbeSeries series = simulate(stack, flux, sim_duration_s, center_probe,
                                            sample_period_s);
        return time_to_threshold(series, threshold_c);
    };

    const auto at_full = crossing_time(1.0);
    if (!at_full)
        throw std::runtime_error(
            "insufficient power: threshold not reached at absorption_fraction 1");
    if (*at_full > target_time_s + 0.02)
        throw std::runtime_error(
            "insufficient power: full absorption crosses later than the target time");

    double lo = 0.0, hi = 1.0;
    double best_f = 1.0, best_t = *at_full;
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        const auto t = crossing_time(mid);
        if (t) {
            best_f = mid;
            best_t = *t;
            if (std::abs(*t - target_time_s) <= 0.02)
                return {mid, *t};
        }
        // crossing time decreases with absorption
        if (!t || *t > target_time_s)
            lo = mid;
        else
            hi = mid;
    }
    return {best_f, best_t};
}

void write_probe_csv(const ProbeSeries& series, std::ostream& os) {
    os << "time_s";
    for (double r : series.probe_radii_m)
        os << ",r_" << r * 1000.0 << "mm_c";
    os << '\n';
    for (std::size_t t = 0; t < series.samples.size(); ++t) {
        os << series.time_at(t);
        for (double v : series.samples[t])
            os << ',' << v;
        os << '\n';
    }
}

void write_grid_csv(const ThermalState& state, std::ostream& os) {
    os << "# time_s," << state.time_s << '\n';
    os << "# nr," << state.nr << ",nz," << state.nz << ",dr_m," << state.dr_m << ",dz_m,"
       << state.dz_m << '\n';
    for (int j = 0; j < state.nz; ++j) {
        for (int i = 0; i < state.nr; ++i) {
            if (i)
                os << ',';
            os << state.at(i, j);
        }
        os << '\n';
    }
}

} // namespace sonotherm
