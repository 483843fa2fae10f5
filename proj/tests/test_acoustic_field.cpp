#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "sonotherm/acoustic_field.hpp"
#include "sonotherm/bessel.hpp"

using namespace sonotherm;

namespace {

ArrayLayout single_transducer_layout() {
    ArrayBuildConfig cfg;
    cfg.rows = 1;
    cfg.cols = 1;
    cfg.corner_trim = 0;
    cfg.num_arrays = 1;
    return build_dual_array(cfg);
}

DriveSolution zero_phase_drive(const ArrayLayout& layout, double amplitude = 1.0) {
    DriveSolution d;
    d.phases.assign(layout.transducers.size(), 0.0);
    d.base_amplitude = amplitude;
    return d;
}

} // namespace

TEST_CASE("on-axis magnitude at 1 m equals ref_amplitude") {
    const ArrayLayout layout = single_transducer_layout();
    const auto p = pressure_at(layout, zero_phase_drive(layout), {0.0, 0.0, 1.0});
    CHECK(std::abs(p) == doctest::Approx(layout.transducers[0].ref_amplitude).epsilon(1e-12));
}

TEST_CASE("on-axis directivity factor is exactly 1") {
    // off-axis magnitude / on-axis magnitude at equal distance = D(theta)
    const ArrayLayout layout = single_transducer_layout();
    const DriveSolution drive = zero_phase_drive(layout);
    const double a0 = std::abs(pressure_at(layout, drive, {0.0, 0.0, 0.5}));
    CHECK(a0 == doctest::Approx(layout.transducers[0].ref_amplitude / 0.5).epsilon(1e-12));

    const double theta = 0.4;
    const Vec3 off{0.5 * std::sin(theta), 0.0, 0.5 * std::cos(theta)};
    const double ka = layout.wavenumber() * layout.transducers[0].radius;
    CHECK(std::abs(pressure_at(layout, drive, off)) ==
          doctest::Approx(a0 * std::abs(jinc(ka * std::sin(theta)))).epsilon(1e-9));
}

TEST_CASE("coherent focus equals the incoherent magnitude sum") {
    const ArrayLayout layout = build_dual_array({});
    const Vec3 focus{0.0, 0.0, 0.2};
    DriveSolution drive = focus_phases(layout, focus);

    // independent route: sum of per-transducer magnitudes at the focus
    const double ka = layout.wavenumber() * layout.transducers[0].radius;
    double bound = 0.0;
    for (const auto& t : layout.transducers) {
        const Vec3 r = focus - t.position;
        const double d = r.norm();
        const double sin_theta = std::sqrt(std::max(0.0, 1.0 - std::pow(r.dot(t.normal) / d, 2)));
        bound += t.ref_amplitude / d * jinc(ka * sin_theta);
    }
    CHECK(std::abs(pressure_at(layout, drive, focus)) ==
          doctest::Approx(bound).epsilon(1e-6));
}

TEST_CASE("near-field violation names the transducer") {
    const ArrayLayout layout = build_dual_array({});
    try {
        pressure_at(layout, zero_phase_drive(layout), layout.transducers[3].position + Vec3{0, 0, 0.002});
        FAIL("expected near-field rejection");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("3") != std::string::npos);
    }
}

TEST_CASE("linearity in base_amplitude") {
    const ArrayLayout layout = build_dual_array({});
    const Vec3 p{0.004, -0.002, 0.2};
    DriveSolution drive = focus_phases(layout, {0, 0, 0.2});
    drive.base_amplitude = 1.0;
    const auto full = pressure_at(layout, drive, p);
    drive.base_amplitude = 0.25;
    const auto quarter = pressure_at(layout, drive, p);
    CHECK(std::abs(quarter - full * 0.25) < 1e-12 * std::abs(full));

    const Medium medium;
    CHECK(intensity(quarter, medium) ==
          doctest::Approx(intensity(full, medium) / 16.0).epsilon(1e-9));
}

TEST_CASE("single-source magnitude decays as 1/d on axis") {
    const ArrayLayout layout = single_transducer_layout();
    const DriveSolution drive = zero_phase_drive(layout);
    const double a1 = std::abs(pressure_at(layout, drive, {0, 0, 0.3}));
    const double a2 = std::abs(pressure_at(layout, drive, {0, 0, 0.6}));
    CHECK(a1 / a2 == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("1x1 grid equals pressure_at") {
    const ArrayLayout layout = build_dual_array({});
    const DriveSolution drive = focus_phases(layout, {0, 0, 0.2});
    GridSpec spec;
    spec.center = {0, 0, 0.2};
    spec.nu = spec.nv = 1;
    const FieldGrid grid = field_on_plane(layout, drive, spec);
    CHECK(grid.at(0, 0) == pressure_at(layout, drive, {0, 0, 0.2}));
}

TEST_CASE("focus-centered grid: center maximum, sidelobes below, symmetric") {
    const ArrayLayout layout = build_dual_array({});
    const DriveSolution drive = focus_phases(layout, {0, 0, 0.2});
    GridSpec spec;
    spec.center = {0, 0, 0.2};
    const FieldGrid grid = field_on_plane(layout, drive, spec);
    const int cu = (spec.nu - 1) / 2, cv = (spec.nv - 1) / 2;
    const double peak = std::abs(grid.at(cu, cv));

    for (int iu = 0; iu < spec.nu; ++iu)
        for (int iv = 0; iv < spec.nv; ++iv)
            CHECK(std::abs(grid.at(iu, iv)) <= peak * (1.0 + 1e-9));

    // mirror symmetry about the focus under index reflection
    for (int iu = 0; iu < spec.nu; ++iu)
        for (int iv = 0; iv < spec.nv; ++iv)
            CHECK(std::abs(std::abs(grid.at(iu, iv)) -
                           std::abs(grid.at(spec.nu - 1 - iu, spec.nv - 1 - iv))) < 1e-9 * peak);

    // main-lobe -6 dB full width within [lambda/2, 2 lambda]
    const double lambda = layout.wavelength();
    double half_width = 0.0;
    for (int iv2 = cv + 1; iv2 < spec.nv; ++iv2) {
        const double lo = std::abs(grid.at(cu, iv2));
        if (lo < 0.5 * peak) { // interpolate the crossing between samples
            const double hi = std::abs(grid.at(cu, iv2 - 1));
            const double frac = (hi - 0.5 * peak) / (hi - lo);
            half_width = (iv2 - 1 - cv + frac) * spec.spacing_m;
            break;
        }
    }
    const double full_width = 2.0 * half_width;
    CHECK(full_width >= 0.5 * lambda);
    CHECK(full_width <= 2.0 * lambda);

    // first sidelobe along v: next local max after the first minimum
    int iv = cv;
    while (iv + 1 < spec.nv && std::abs(grid.at(cu, iv + 1)) < std::abs(grid.at(cu, iv)))
        ++iv;
    double sidelobe = 0.0;
    for (; iv < spec.nv; ++iv)
        sidelobe = std::max(sidelobe, std::abs(grid.at(cu, iv)));
    CHECK(sidelobe < peak);
    CHECK(sidelobe > 0.0);
}

TEST_CASE("radiation pressure is intensity / c") {
    const Medium medium{1.18, 346.0};
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-3000.0, 3000.0);
    for (int i = 0; i < 100; ++i) {
        const std::complex<double> p{u(rng), u(rng)};
        CHECK(radiation_pressure(p, medium) * medium.sound_speed ==
              doctest::Approx(intensity(p, medium)).epsilon(1e-12));
    }
    CHECK(radiation_pressure({0.0, 0.0}, medium) == 0.0);
    CHECK(intensity({0.0, 0.0}, medium) == 0.0);
}

TEST_CASE("intensity and radiation pressure match hand-evaluated values") {
    // |p| = 1000 Pa, rho c = 408.3 -> I = 1e6 / 816.6
    const Medium m1{408.3 / 346.0, 346.0};
    CHECK(intensity({1000.0, 0.0}, m1) == doctest::Approx(1.0e6 / 816.6).epsilon(1e-12));
    // |p| = 2000 Pa, rho = 1.18, c = 346 -> P = 4e6 / (2 * 1.18 * 346^2)
    const Medium m2{1.18, 346.0};
    CHECK(radiation_pressure({0.0, 2000.0}, m2) ==
          doctest::Approx(4.0e6 / (2.0 * 1.18 * 346.0 * 346.0)).epsilon(1e-12));
}

TEST_CASE("field CSV carries grid metadata and values") {
    const ArrayLayout layout = single_transducer_layout();
    const DriveSolution drive = zero_phase_drive(layout);
    GridSpec spec;
    spec.center = {0, 0, 0.2};
    spec.nu = spec.nv = 3;
    const FieldGrid grid = field_on_plane(layout, drive, spec);
    std::ostringstream os;
    write_field_csv(grid, os);
    const std::string text = os.str();
    CHECK(text.find("# origin_m") != std::string::npos);
    CHECK(text.find("# spacing_m,0.001") != std::string::npos);
    CHECK(text.find("# nu,3,nv,3") != std::string::npos);
}
