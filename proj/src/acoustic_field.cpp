#include "sonotherm/acoustic_field.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "sonotherm/kernels.hpp"

namespace sonotherm {

namespace {

// Structure-of-arrays copy of the layout + drive for the field kernel.
struct SourceBuffers {
    std::vector<double> px, py, pz, nx, ny, nz, amp, phase;
    kernels::SourceArrays view;

    SourceBuffers(const ArrayLayout& layout, const DriveSolution& drive) {
        const std::size_t n = layout.transducers.size();
        if (drive.phases.size() != n)
            throw std::invalid_argument("drive phase count does not match layout");
        if (drive.base_amplitude < 0.0 || drive.base_amplitude > 1.0)
            throw std::invalid_argument("base_amplitude outside [0,1]");
        px.reserve(n); py.reserve(n); pz.reserve(n);
        nx.reserve(n); ny.reserve(n); nz.reserve(n);
        amp.reserve(n); phase.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            const Transducer& t = layout.transducers[i];
            px.push_back(t.position.x);
            py.push_back(t.position.y);
            pz.push_back(t.position.z);
            nx.push_back(t.normal.x);
            ny.push_back(t.normal.y);
            nz.push_back(t.normal.z);
            amp.push_back(drive.base_amplitude * t.ref_amplitude); // Pa at 1 m -> Pa*m
            phase.push_back(drive.phases[i]);
        }
        view = {px, py, pz, nx, ny, nz, amp, phase, layout.wavenumber(),
                layout.wavenumber() * (n ? layout.transducers[0].radius : 0.0)};
    }
};

void check_far_field(const ArrayLayout& layout, const Vec3& point) {
    const double lambda = layout.wavelength();
    for (std::size_t i = 0; i < layout.transducers.size(); ++i) {
        if ((point - layout.transducers[i].position).norm() < lambda)
            throw std::invalid_argument("evaluation point within one wavelength of transducer " +
                                        std::to_string(i));
    }
}

} // namespace

std::complex<double> pressure_at(const ArrayLayout& layout, const DriveSolution& drive,
                                 const Vec3& point) {
    check_far_field(layout, point);
    SourceBuffers src(layout, drive);
    return kernels::dispatch().pressure_sum(src.view, point.x, point.y, point.z);
}

FieldGrid field_on_plane(const ArrayLayout& layout, const DriveSolution& drive,
                         const GridSpec& spec) {
    if (spec.nu < 1 || spec.nv < 1)
        throw std::invalid_argument("grid sample counts must be >= 1");
    const Vec3 u = spec.u_axis.normalized();
    const Vec3 v = spec.v_axis.normalized();
    if (std::abs(u.dot(v)) > 1e-9)
        throw std::invalid_argument("grid axes must be orthogonal");

    FieldGrid grid;
    grid.u_axis = u;
    grid.v_axis = v;
    grid.nu = spec.nu;
    grid.nv = spec.nv;
    grid.spacing_m = spec.spacing_m;
    grid.origin = spec.center - u * (0.5 * (spec.nu - 1) * spec.spacing_m) -
                  v * (0.5 * (spec.nv - 1) * spec.spacing_m);
    grid.values.resize(static_cast<std::size_t>(spec.nu) * spec.nv);

    SourceBuffers src(layout, drive);
    const auto& kern = kernels::dispatch();
    for (int iu = 0; iu < spec.nu; ++iu) {
        for (int iv = 0; iv < spec.nv; ++iv) {
            const Vec3 p = grid.point(iu, iv);
            try {
                check_far_field(layout, p);
            } catch (const std::invalid_argument& e) {
                throw std::invalid_argument("grid sample (" + std::to_string(iu) + "," +
                                            std::to_string(iv) + "): " + e.what());
            }
            grid.at(iu, iv) = kern.pressure_sum(src.view, p.x, p.y, p.z);
        }
    }
    return grid;
}

double intensity(const std::complex<double>& p_amplitude, const Medium& medium) {
    return std::norm(p_amplitude) / (2.0 * medium.impedance());
}

double radiation_pressure(const std::complex<double>& p_amplitude, const Medium& medium) {
    return std::norm(p_amplitude) / (2.0 * medium.density * medium.sound_speed * medium.sound_speed);
}

void write_field_csv(const FieldGrid& grid, std::ostream& os) {
    os << "# origin_m," << grid.origin.x << ',' << grid.origin.y << ',' << grid.origin.z << '\n';
    os << "# u_axis," << grid.u_axis.x << ',' << grid.u_axis.y << ',' << grid.u_axis.z << '\n';
    os << "# v_axis," << grid.v_axis.x << ',' << grid.v_axis.y << ',' << grid.v_axis.z << '\n';
    os << "# spacing_m," << grid.spacing_m << '\n';
    os << "# nu," << grid.nu << ",nv," << grid.nv << '\n';
    for (int iu = 0; iu < grid.nu; ++iu) {
        for (int iv = 0; iv < grid.nv; ++iv) {
            if (iv)
                os << ',';
            os << std::abs(grid.at(iu, iv));
        }
        os << '\n';
    }
}

void write_field_pgm(const FieldGrid& grid, std::ostream& os) {
    double peak = 0.0;
    for (const auto& v : grid.values)
        peak = std::max(peak, std::abs(v));
    os << "P5\n" << grid.nv << ' ' << grid.nu << "\n255\n";
    for (int iu = 0; iu < grid.nu; ++iu) {
        for (int iv = 0; iv < grid.nv; ++iv) {
            const double a = peak > 0.0 ? std::abs(grid.at(iu, iv)) / peak : 0.0;
            os.put(static_cast<char>(static_cast<unsigned char>(std::lround(a * 255.0))));
        }
    }
}

} // namespace sonotherm
