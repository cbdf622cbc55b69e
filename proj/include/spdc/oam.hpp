#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "spdc/phase_match.hpp"
#include "spdc/quad.hpp"

namespace spdc {

// Orthonormal basis with p3 along the mode axis at polar angle theta and azimuth phi.
struct TiltedFrame {
    double theta = 0.0;
    double phi = 0.0;
    Vec3 p1, p2, p3;

    Vec3 to_frame(const Vec3& k) const { return {dot(p1, k), dot(p2, k), dot(p3, k)}; }
    Vec3 to_lab(const Vec3& kt) const { return p1 * kt.x + p2 * kt.y + p3 * kt.z; }
};

TiltedFrame tilted_frame(double theta, double phi);

// Binomial sum that replaces exp(i ell phi) for a mode whose axis is tilted;
// equals exp(i ell (phi - phi_frame)) at theta = 0.
std::complex<double> angular_factor(int ell, double theta, double phi_frame, double phi, double kz, double kperp);

enum class KzBranch { plus, minus };

struct TiltedDispersion {
    double kz = 0.0;
    double kperp = 0.0;
    double jacobian = 0.0;
    bool in_domain = false;
    bool on_mode = false;   // the root lies on the mode cone at this lab azimuth
};

// Lab k_z and |k_perp| of the ordinary cone of transverse radius kappa about
// the tilted axis, at lab azimuth phi. shell is n_o times the vacuum wavenumber.
TiltedDispersion tilted_dispersion(double kappa, double shell, double phi, double theta, double phi_frame,
                                   KzBranch branch = KzBranch::plus);

// Polar angle of the emission cone for a Gaussian pump.
double emission_cone_tilt(const DerivedIndices& idx);

// Ordinary Bessel-Gauss mode of an emitted photon; width 0 is an ideal ring.
struct BesselMode {
    double theta = 0.0;
    double phi = 0.0;
    double kappa = 0.0;
    double width = 0.0;
};

struct OamQuadrature {
    int radial_points = 16;
    int azimuthal_points = 128;
    double rel_tol = 1e-2;
    bool check = true;       // repeat with doubled counts and compare
};

struct OamOptions {
    OamQuadrature quad;
    PhaseMatchSpec pm;
    unsigned workers = 1;
    // Multiply the envelope by exp(i L dk / 2), i.e. put the crystal entrance
    // face at z = 0 instead of centring the crystal there.
    bool entrance_phase = false;
};

struct IndexRange {
    int min = 0;
    int max = 0;
    int size() const { return max - min + 1; }
};

// F(ls, li), row ls, column li, both ascending.
struct AmplitudeMatrix {
    IndexRange signal;
    IndexRange idler;
    std::vector<std::complex<double>> values;
    std::vector<std::uint8_t> unconverged;
    double change = 0.0;     // max |F_fine - F_coarse| / max |F_fine|
    bool converged = true;

    const std::complex<double>& at(int ls, int li) const
    {
        return values[static_cast<std::size_t>(ls - signal.min) * idler.size() + (li - idler.min)];
    }
    double max_abs() const;
};

AmplitudeMatrix amplitude_matrix(const CrystalConfig& crystal, const PumpBeam& pump, const BesselMode& signal,
                                 const BesselMode& idler, IndexRange ls, IndexRange li, const OamOptions& opts);

std::complex<double> transition_amplitude(const CrystalConfig& crystal, const PumpBeam& pump,
                                          const BesselMode& signal, int ls, const BesselMode& idler, int li,
                                          const OamOptions& opts);

// Same amplitudes integrated over the lab azimuth with the two-branch
// dispersion, the angular factor and the Jacobian. Ideal rings only.
AmplitudeMatrix amplitude_matrix_lab(const CrystalConfig& crystal, const PumpBeam& pump, const BesselMode& signal,
                                     const BesselMode& idler, IndexRange ls, IndexRange li, int azimuthal_points,
                                     const PhaseMatchSpec& pm);

struct Marginals {
    IndexRange signal;
    IndexRange idler;
    std::vector<double> signal_probs;
    std::vector<double> idler_probs;
};

// Normalized row and column sums of |F|^2.
Marginals marginals(const AmplitudeMatrix& f);

}  // namespace spdc
