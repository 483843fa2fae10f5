#include "sonotherm/array_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sonotherm {

double ArrayLayout::wavenumber() const {
    return 2.0 * std::numbers::pi * frequency_hz / sound_speed;
}

namespace {

// Grid positions removed per array, chosen in mirror-symmetric sets: the
// four corners first, then the two ends of the central row, then the two
// ends of the central column.
std::vector<std::pair<int, int>> trim_positions(int rows, int cols, int trim) {
    const int rmax = rows - 1, cmax = cols - 1;
    std::vector<std::pair<int, int>> out;
    const std::vector<std::vector<std::pair<int, int>>> groups = {
        {{0, 0}, {0, cmax}, {rmax, 0}, {rmax, cmax}},
        {{rows / 2, 0}, {rows / 2, cmax}},
        {{0, cols / 2}, {rmax, cols / 2}},
    };
    for (const auto& g : groups) {
        if (static_cast<int>(out.size()) >= trim)
            break;
        if (static_cast<int>(out.size() + g.size()) > trim)
            throw std::invalid_argument("corner_trim not expressible as symmetric removals");
        out.insert(out.end(), g.begin(), g.end());
    }
    if (static_cast<int>(out.size()) != trim)
        throw std::invalid_argument("corner_trim too large for symmetric removal groups");
    return out;
}

} // namespace

ArrayLayout build_dual_array(const ArrayBuildConfig& config) {
    if (config.pitch_m <= 0.0)
        throw std::invalid_argument("pitch must be positive");
    if (config.rows < 1 || config.cols < 1 || config.num_arrays < 1)
        throw std::invalid_argument("rows, cols and num_arrays must be >= 1");
    if (config.transducer_radius_m <= 0.0)
        throw std::invalid_argument("transducer radius must be positive");

    std::vector<std::pair<int, int>> trimmed;
    if (config.corner_trim > 0)
        trimmed = trim_positions(config.rows, config.cols, config.corner_trim);

    ArrayLayout layout;
    layout.frequency_hz = config.frequency_hz;
    layout.sound_speed = config.sound_speed;
    layout.air_density = config.air_density;

    const double x0 = -0.5 * (config.cols - 1) * config.pitch_m;
    const double y0 = -0.5 * (config.rows - 1) * config.pitch_m;
    for (int a = 0; a < config.num_arrays; ++a) {
        // Arrays are spread along x, centered about the origin.
        const double cx = config.num_arrays == 1
                              ? 0.0
                              : (2.0 * a - (config.num_arrays - 1)) * config.array_offset_x_m;
        for (int r = 0; r < config.rows; ++r) {
            for (int c = 0; c < config.cols; ++c) {
                if (std::find(trimmed.begin(), trimmed.end(), std::make_pair(r, c)) !=
                    trimmed.end())
                    continue;
                Transducer t;
                t.position = {cx + x0 + c * config.pitch_m, y0 + r * config.pitch_m, 0.0};
                t.normal = {0.0, 0.0, 1.0};
                t.radius = config.transducer_radius_m;
                t.ref_amplitude = config.ref_amplitude_pa;
                layout.transducers.push_back(t);
            }
        }
    }

    const double min_sep = 2.0 * config.transducer_radius_m;
    for (std::size_t i = 0; i < layout.transducers.size(); ++i) {
        for (std::size_t j = i + 1; j < layout.transducers.size(); ++j) {
            const double d =
                (layout.transducers[i].position - layout.transducers[j].position).norm();
            if (d < min_sep - 1e-12)
                throw std::invalid_argument("transducer footprints overlap");
        }
    }
    return layout;
}

DriveSolution focus_phases(const ArrayLayout& layout, const Vec3& focal_point) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    const double k = layout.wavenumber();
    const double lambda = layout.wavelength();

    DriveSolution drive;
    drive.phases.reserve(layout.transducers.size());
    for (std::size_t i = 0; i < layout.transducers.size(); ++i) {
        const double d = (focal_point - layout.transducers[i].position).norm();
        if (d < lambda)
            throw std::invalid_argument("focal point within one wavelength of transducer " +
                                        std::to_string(i));
        double phase = std::fmod(-k * d, two_pi);
        if (phase < 0.0)
            phase += two_pi;
        if (phase >= two_pi)
            phase = 0.0;
        drive.phases.push_back(phase);
    }
    return drive;
}

} // namespace sonotherm
