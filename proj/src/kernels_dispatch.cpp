#include "sonotherm/kernels.hpp"

namespace sonotherm::kernels {

namespace {

constexpr Dispatch kScalar{pressure_sum_scalar, heat_row_scalar, "scalar"};

#if defined(SONOTHERM_HAVE_AVX2)
constexpr Dispatch kAvx2{pressure_sum_avx2, heat_row_avx2, "avx2"};
#endif

const Dispatch* detect() {
#if defined(SONOTHERM_HAVE_AVX2)
    if (__builtin_cpu_supports("avx2"))
        return &kAvx2;
#endif
    return &kScalar;
}

const Dispatch*& active() {
    static const Dispatch* d = detect();
    return d;
}

} // namespace

const Dispatch& dispatch() { return *active(); }

bool select_variant(std::string_view name) {
    if (name == "scalar") {
        active() = &kScalar;
        return true;
    }
#if defined(SONOTHERM_HAVE_AVX2)
    if (name == "avx2" && __builtin_cpu_supports("avx2")) {
        active() = &kAvx2;
        return true;
    }
#endif
    return false;
}

} // namespace sonotherm::kernels
