#include <cmath>
#include <cstdlib>
#include <cstring>

#include "spdc/kernels.hpp"
#include "spdc/quad.hpp"

namespace spdc {

namespace kernels {

KernelSum as_cell_sum_scalar(const PumpNodes& nodes, const AsCell& cell)
{
    KernelSum out;
    CompensatedSum acc;
    const double g2 = 2.0 * cell.gamma * cell.gamma;
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        const double dx = nodes.kx[j] - cell.ksx;
        const double dy = nodes.ky[j] - cell.ksy;
        double rad = cell.shell2 - dx * dx - dy * dy;
        if (rad < 0.0) {
            out.evanescent = true;
            rad = 0.0;
        }
        const double x = cell.half_length * (nodes.kz[j] - cell.kz_signal - std::sqrt(rad));
        double env2;
        if (cell.envelope == Envelope::gaussian) {
            env2 = std::exp(-g2 * x * x);
        } else {
            const double s = std::abs(x) < 1e-8 ? 1.0 : std::sin(x) / x;
            env2 = s * s;
        }
        acc.add(nodes.weight[j] * env2);
    }
    out.value = acc.value();
    return out;
}

double gaussian_ring_sum_scalar(const double* sines, std::size_t n, double d, double c, double a)
{
    CompensatedSum acc;
    for (std::size_t j = 0; j < n; ++j) {
        const double u = d * sines[j] - c;
        acc.add(std::exp(-a * u * u));
    }
    return acc.value();
}

}  // namespace kernels

const char* to_string(SimdLevel level) { return level == SimdLevel::avx2 ? "avx2" : "scalar"; }

bool simd_supported(SimdLevel level)
{
    if (level == SimdLevel::scalar) {
        return true;
    }
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

SimdLevel detect_simd_level()
{
    const char* env = std::getenv("SPDC_SIMD");
    if (env != nullptr && std::strcmp(env, "scalar") == 0) {
        return SimdLevel::scalar;
    }
    return simd_supported(SimdLevel::avx2) ? SimdLevel::avx2 : SimdLevel::scalar;
}

KernelSum as_cell_sum(const PumpNodes& nodes, const AsCell& cell, SimdLevel level)
{
    if (level == SimdLevel::avx2 && simd_supported(level)) {
        return kernels::as_cell_sum_avx2(nodes, cell);
    }
    return kernels::as_cell_sum_scalar(nodes, cell);
}

double gaussian_ring_sum(const std::vector<double>& sines, double d, double c, double a, SimdLevel level)
{
    if (level == SimdLevel::avx2 && simd_supported(level)) {
        return kernels::gaussian_ring_sum_avx2(sines.data(), sines.size(), d, c, a);
    }
    return kernels::gaussian_ring_sum_scalar(sines.data(), sines.size(), d, c, a);
}

}  // namespace spdc
