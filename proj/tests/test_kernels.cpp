#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "sonotherm/kernels.hpp"

using namespace sonotherm::kernels;

namespace {

struct RandomSources {
    std::vector<double> px, py, pz, nx, ny, nz, amp, phase;

    explicit RandomSources(std::size_t n, std::uint64_t seed) {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> pos(-0.1, 0.1), a(0.5, 6.0), ph(0.0, 6.28);
        for (std::size_t i = 0; i < n; ++i) {
            px.push_back(pos(rng));
            py.push_back(pos(rng));
            pz.push_back(pos(rng) * 0.1);
            // random unit normal biased toward +z
            double vx = pos(rng), vy = pos(rng), vz = 1.0;
            const double norm = std::sqrt(vx * vx + vy * vy + vz * vz);
            nx.push_back(vx / norm);
            ny.push_back(vy / norm);
            nz.push_back(vz / norm);
            amp.push_back(a(rng));
            phase.push_back(ph(rng));
        }
    }

    SourceArrays view() const {
        return {px, py, pz, nx, ny, nz, amp, phase, 726.4, 3.632};
    }
};

} // namespace

TEST_CASE("dispatch exposes a working variant and can be forced to scalar") {
    CHECK(select_variant("scalar"));
    CHECK(dispatch().name == "scalar");
    CHECK(!select_variant("no-such-variant"));
#if defined(SONOTHERM_HAVE_AVX2)
    if (select_variant("avx2"))
        CHECK(dispatch().name == "avx2");
#endif
    select_variant("scalar");
}

TEST_CASE("scalar pressure sum is deterministic") {
    const RandomSources src(498, 11);
    const auto a = pressure_sum_scalar(src.view(), 0.01, -0.02, 0.2);
    const auto b = pressure_sum_scalar(src.view(), 0.01, -0.02, 0.2);
    CHECK(a == b);
}

#if defined(SONOTHERM_HAVE_AVX2)
TEST_CASE("avx2 pressure sum matches scalar") {
    if (!select_variant("avx2")) {
        MESSAGE("avx2 unavailable on this CPU, skipping");
        return;
    }
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        // sizes exercise both the vector body and the scalar tail
        for (std::size_t n : {4ULL, 7ULL, 498ULL, 501ULL}) {
            const RandomSources src(n, seed);
            for (double x : {0.0, 0.013, -0.05}) {
                const auto s = pressure_sum_scalar(src.view(), x, 0.004, 0.21);
                const auto v = pressure_sum_avx2(src.view(), x, 0.004, 0.21);
                CHECK(std::abs(s - v) <= 1e-12 * std::abs(s) + 1e-15);
            }
        }
    }
    select_variant("scalar");
}

TEST_CASE("avx2 heat row matches scalar") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> temp(20.0, 80.0), coeff(0.0, 0.1), src(0.0, 0.01);
    for (std::size_t n : {1ULL, 4ULL, 5ULL, 100ULL, 103ULL}) {
        std::vector<double> t(n + 2), up(n), down(n), cw(n), ce(n), cn(n), cs(n), q(n);
        for (auto* v : {&t})
            for (auto& x : *v)
                x = temp(rng);
        for (std::size_t i = 0; i < n; ++i) {
            up[i] = temp(rng);
            down[i] = temp(rng);
            cw[i] = coeff(rng);
            ce[i] = coeff(rng);
            cn[i] = coeff(rng);
            cs[i] = coeff(rng);
            q[i] = src(rng);
        }
        std::vector<double> out_s(n), out_v(n);
        heat_row_scalar(t, up, down, cw, ce, cn, cs, q, out_s);
        heat_row_avx2(t, up, down, cw, ce, cn, cs, q, out_v);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(out_v[i] == doctest::Approx(out_s[i]).epsilon(1e-14));
    }
}
#endif
