#include "spdc/phase_match.hpp"

#include <cmath>

namespace spdc {

double delta_kz_exact(Vec2 ks, Vec2 ki, const DerivedIndices& idx)
{
    return extraordinary_kz(ks + ki, idx) - ordinary_kz(norm(ks), idx) - ordinary_kz(norm(ki), idx);
}

MismatchExpansion taylor_mismatch(Vec2 ks, Vec2 ki, const DerivedIndices& idx)
{
    const double c = 2.0 / (idx.n_o * idx.k0);
    MismatchExpansion m;
    m.kappa_tilde = idx.k0 * (idx.n_eff - idx.n_o) + c * norm2(ks);
    m.d = idx.beta * idx.axis.perp() + c * ks;
    m.delta_kz = m.kappa_tilde - dot(m.d, ks + ki);
    return m;
}

double pm_envelope(double delta_kz, double length_um, const PhaseMatchSpec& pm)
{
    const double x = 0.5 * length_um * delta_kz;
    if (pm.envelope == Envelope::gaussian) {
        const double g = pm.gamma * x;
        return std::exp(-g * g);
    }
    if (std::abs(x) < 1e-8) {
        return 1.0 - x * x / 6.0;
    }
    return std::sin(x) / x;
}

std::complex<double> pm_amplitude(double delta_kz, double length_um, const PhaseMatchSpec& pm)
{
    const double x = 0.5 * length_um * delta_kz;
    return pm_envelope(delta_kz, length_um, pm) * std::complex<double>(std::cos(x), std::sin(x));
}

std::complex<double> pump_spectrum(Vec2 kp, const PumpBeam& pump)
{
    const double r = norm(kp);
    double radial;
    if (pump.cone_radius > 0.0) {
        const double u = (r - pump.cone_radius) / pump.width;
        radial = pump.amplitude / pump.cone_radius * std::exp(-0.5 * u * u);
    } else {
        const double u = r / pump.width;
        radial = pump.amplitude / pump.width * std::exp(-0.5 * u * u);
    }
    if (pump.oam_index == 0) {
        return radial;
    }
    return std::polar(radial, pump.oam_index * std::atan2(kp.y, kp.x));
}

double pump_intensity(double k_perp, const PumpBeam& pump)
{
    const double scale = pump.cone_radius > 0.0 ? pump.cone_radius : pump.width;
    const double u = (k_perp - pump.cone_radius) / pump.width;
    const double a = pump.amplitude / scale;
    return a * a * std::exp(-u * u);
}

}  // namespace spdc
