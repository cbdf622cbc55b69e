#pragma once

#include <complex>

#include "spdc/optics.hpp"

namespace spdc {

// Longitudinal mismatch k_z(pump) - k_z(signal) - k_z(idler), exact dispersion.
double delta_kz_exact(Vec2 ks, Vec2 ki, const DerivedIndices& idx);

// First-order expansion in the pump transverse momentum about k_s.
struct MismatchExpansion {
    double kappa_tilde = 0.0;
    Vec2 d;
    double delta_kz = 0.0;   // kappa_tilde - d . (ks + ki)
};

MismatchExpansion taylor_mismatch(Vec2 ks, Vec2 ki, const DerivedIndices& idx);

enum class Envelope { sinc, gaussian };

struct PhaseMatchSpec {
    Envelope envelope = Envelope::sinc;
    double gamma = 0.4393;
};

// sinc(x) or exp(-(gamma x)^2) with x = L * dk / 2.
double pm_envelope(double delta_kz, double length_um, const PhaseMatchSpec& pm);
std::complex<double> pm_amplitude(double delta_kz, double length_um, const PhaseMatchSpec& pm);

// Bessel-Gauss angular spectrum; a Gaussian at the origin when the cone radius is zero.
std::complex<double> pump_spectrum(Vec2 kp, const PumpBeam& pump);
// |pump_spectrum|^2 as a function of |k_perp| only.
double pump_intensity(double k_perp, const PumpBeam& pump);

}  // namespace spdc
