#pragma once

#include <cstddef>
#include <vector>

#include "spdc/phase_match.hpp"

namespace spdc {

enum class SimdLevel { scalar, avx2 };

const char* to_string(SimdLevel level);
bool simd_supported(SimdLevel level);
// Best level the CPU supports; SPDC_SIMD=scalar forces the reference kernels.
SimdLevel detect_simd_level();

// Pump quadrature nodes in structure-of-arrays form. kz holds the
// extraordinary k_z of each node and weight already includes the measure and
// the pump intensity.
struct PumpNodes {
    std::vector<double> kx, ky, kz, weight;
    std::size_t size() const { return kx.size(); }
};

struct AsCell {
    double ksx = 0.0;
    double ksy = 0.0;
    double kz_signal = 0.0;
    double shell2 = 0.0;       // (n_o k0 / 2)^2
    double half_length = 0.0;  // L / 2
    double gamma = 0.0;
    Envelope envelope = Envelope::sinc;
};

struct KernelSum {
    double value = 0.0;
    bool evanescent = false;   // some idler node had an imaginary k_z
};

// sum_j weight_j * envelope(L dk_j / 2)^2 over the pump nodes.
KernelSum as_cell_sum(const PumpNodes& nodes, const AsCell& cell, SimdLevel level);

// sum_j exp(-a (d * sines_j - c)^2).
double gaussian_ring_sum(const std::vector<double>& sines, double d, double c, double a, SimdLevel level);

namespace kernels {

KernelSum as_cell_sum_scalar(const PumpNodes& nodes, const AsCell& cell);
KernelSum as_cell_sum_avx2(const PumpNodes& nodes, const AsCell& cell);
double gaussian_ring_sum_scalar(const double* sines, std::size_t n, double d, double c, double a);
double gaussian_ring_sum_avx2(const double* sines, std::size_t n, double d, double c, double a);

}  // namespace kernels

}  // namespace spdc
