#pragma once

#include <numbers>
#include <vector>

#include "spdc/vec.hpp"

namespace spdc {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Validity range of the dispersion fits, in micrometres.
inline constexpr double kSellmeierMinUm = 0.3;
inline constexpr double kSellmeierMaxUm = 1.2;

// n^2 = a + b / (lambda^2 - c) - d * lambda^2, lambda in micrometres.
// A single coefficient is a constant n^2.
struct SellmeierCoefficients {
    double a = 1.0;
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;

    static SellmeierCoefficients from_list(const std::vector<double>& coeffs);
    std::vector<double> to_list() const;
    bool operator==(const SellmeierCoefficients&) const = default;
};

double sellmeier_index(const SellmeierCoefficients& s, double wavelength_um);

struct CrystalConfig {
    SellmeierCoefficients ordinary;
    SellmeierCoefficients extraordinary;
    double axis_polar = 0.0;                  // rad, from the lab z axis
    double axis_azimuth = kPi / 2.0;          // rad
    double length_um = 1000.0;
    double d22_pm_per_v = 2.2;

    Vec3 optical_axis() const;
    void validate() const;
};

struct PumpBeam {
    double wavelength_nm = 406.8;
    double cone_radius = 0.05;   // transverse wavenumber of the Bessel annulus, 1/um
    double width = 0.0007;       // Gaussian half width of the annulus, 1/um
    int oam_index = 0;
    double amplitude = 1.0;

    double vacuum_wavenumber() const;  // 1/um
    void validate() const;
    // False when the annulus is not narrow compared with its radius.
    bool narrow_annulus() const { return cone_radius == 0.0 || width <= 0.2 * cone_radius; }
};

// Pump dielectric constants are taken at the pump wavelength, the ordinary
// index of the emitted photons at twice the pump wavelength.
struct DerivedIndices {
    double k0 = 0.0;             // pump vacuum wavenumber
    double n_o = 0.0;            // ordinary index of signal and idler
    double n_o_pump = 0.0;
    double n_e_pump = 0.0;
    double eps_perp = 0.0;
    double eps_par = 0.0;
    double delta_eps = 0.0;
    double n_eff = 0.0;
    double beta = 0.0;
    double eta = 0.0;
    Vec3 axis;

    // |k| of an emitted photon inside the crystal.
    double shell() const { return 0.5 * n_o * k0; }
    // Real exact-collinear cone radius squared; negative when no cone exists.
    double cone_radius_squared() const;
};

DerivedIndices derived_indices(const CrystalConfig& crystal, double pump_wavelength_nm);

double ordinary_kz(double k_perp, const DerivedIndices& idx);
double extraordinary_kz(Vec2 k_perp, const DerivedIndices& idx);

enum class Polarization { ordinary, extraordinary };

struct PolarizationVector {
    Vec3 vector;
    bool degenerate = false;
};

// eps_perp and vacuum_wavenumber refer to the wave's own frequency.
PolarizationVector polarization_vector(const Vec3& k, const Vec3& axis, Polarization pol, double eps_perp,
                                       double vacuum_wavenumber);

enum class ChiMode { effective, vectorial };

// Contraction of the nonlinear tensor, normalized so that the collinear
// on-axis configuration gives 1.
double chi_contraction(const Vec3& kp, const Vec3& ks, const Vec3& ki, const DerivedIndices& idx, ChiMode mode);

}  // namespace spdc
