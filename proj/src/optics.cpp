#include "spdc/optics.hpp"

#include <cmath>
#include <string>

#include "spdc/errors.hpp"

namespace spdc {

SellmeierCoefficients SellmeierCoefficients::from_list(const std::vector<double>& coeffs)
{
    if (coeffs.size() == 1) {
        return {coeffs[0], 0.0, 0.0, 0.0};
    }
    if (coeffs.size() == 4) {
        return {coeffs[0], coeffs[1], coeffs[2], coeffs[3]};
    }
    throw DomainError("sellmeier: expected 1 or 4 coefficients, got " + std::to_string(coeffs.size()));
}

std::vector<double> SellmeierCoefficients::to_list() const
{
    if (b == 0.0 && c == 0.0 && d == 0.0) {
        return {a};
    }
    return {a, b, c, d};
}

double sellmeier_index(const SellmeierCoefficients& s, double wavelength_um)
{
    if (!(wavelength_um >= kSellmeierMinUm && wavelength_um <= kSellmeierMaxUm)) {
        throw DomainError("sellmeier: wavelength " + std::to_string(wavelength_um) + " um outside [" +
                          std::to_string(kSellmeierMinUm) + ", " + std::to_string(kSellmeierMaxUm) + "]");
    }
    const double l2 = wavelength_um * wavelength_um;
    double n2 = s.a - s.d * l2;
    if (s.b != 0.0) {
        if (l2 == s.c) {
            throw DomainError("sellmeier: pole at the requested wavelength");
        }
        n2 += s.b / (l2 - s.c);
    }
    if (!(n2 >= 1.0)) {
        throw DomainError("sellmeier: n^2 = " + std::to_string(n2) + " is below 1");
    }
    return std::sqrt(n2);
}

Vec3 CrystalConfig::optical_axis() const
{
    const double s = std::sin(axis_polar);
    return {s * std::cos(axis_azimuth), s * std::sin(axis_azimuth), std::cos(axis_polar)};
}

void CrystalConfig::validate() const
{
    if (!(axis_polar >= 0.0 && axis_polar < kPi / 2.0)) {
        throw DomainError("crystal: axis polar angle must lie in [0, pi/2)");
    }
    if (!std::isfinite(axis_azimuth)) {
        throw DomainError("crystal: axis azimuth is not finite");
    }
    if (!(length_um > 0.0) || !std::isfinite(length_um)) {
        throw DomainError("crystal: length must be positive");
    }
    if (!std::isfinite(d22_pm_per_v)) {
        throw DomainError("crystal: d22 is not finite");
    }
}

double PumpBeam::vacuum_wavenumber() const { return kTwoPi / (wavelength_nm * 1e-3); }

void PumpBeam::validate() const
{
    if (!(wavelength_nm > 0.0) || !std::isfinite(wavelength_nm)) {
        throw DomainError("pump: wavelength must be positive");
    }
    if (!(cone_radius >= 0.0) || !std::isfinite(cone_radius)) {
        throw DomainError("pump: cone radius must be non-negative");
    }
    if (!(width > 0.0) || !std::isfinite(width)) {
        throw DomainError("pump: annulus width must be positive");
    }
    if (!std::isfinite(amplitude)) {
        throw DomainError("pump: amplitude is not finite");
    }
}

double DerivedIndices::cone_radius_squared() const
{
    const double nk = n_o * k0;
    return 0.5 * nk * nk * (1.0 - n_eff / n_o);
}

DerivedIndices derived_indices(const CrystalConfig& crystal, double pump_wavelength_nm)
{
    crystal.validate();
    if (!(pump_wavelength_nm > 0.0)) {
        throw DomainError("pump wavelength must be positive");
    }
    const double lp = pump_wavelength_nm * 1e-3;
    DerivedIndices idx;
    idx.k0 = kTwoPi / lp;
    idx.n_o = sellmeier_index(crystal.ordinary, 2.0 * lp);
    idx.n_o_pump = sellmeier_index(crystal.ordinary, lp);
    idx.n_e_pump = sellmeier_index(crystal.extraordinary, lp);
    idx.eps_perp = idx.n_o_pump * idx.n_o_pump;
    idx.eps_par = idx.n_e_pump * idx.n_e_pump;
    idx.delta_eps = idx.eps_par - idx.eps_perp;
    idx.axis = crystal.optical_axis();

    const double az = idx.axis.z;
    const double denom = idx.eps_perp + idx.delta_eps * az * az;
    idx.n_eff = std::sqrt(idx.eps_perp * idx.eps_par / denom);
    idx.beta = idx.delta_eps * az / denom;
    idx.eta = 1.0 / denom;
    return idx;
}

double ordinary_kz(double k_perp, const DerivedIndices& idx)
{
    const double n = idx.shell();
    const double rad = n * n - k_perp * k_perp;
    if (rad < 0.0) {
        throw DomainError("ordinary_kz: evanescent, |k_perp| = " + std::to_string(k_perp));
    }
    return std::sqrt(rad);
}

double extraordinary_kz(Vec2 k_perp, const DerivedIndices& idx)
{
    const double rad = 1.0 - norm2(k_perp) * idx.eta / (idx.k0 * idx.k0);
    if (rad < 0.0) {
        throw DomainError("extraordinary_kz: evanescent, |k_perp| = " + std::to_string(norm(k_perp)));
    }
    return -idx.beta * dot(idx.axis.perp(), k_perp) + idx.k0 * idx.n_eff * std::sqrt(rad);
}

PolarizationVector polarization_vector(const Vec3& k, const Vec3& axis, Polarization pol, double eps_perp,
                                       double vacuum_wavenumber)
{
    if (pol == Polarization::ordinary) {
        const Vec3 v = cross(axis, k);
        const double scale = norm(axis) * norm(k);
        return {v, !(norm(v) > 1e-12 * scale)};
    }
    const double k2 = eps_perp * vacuum_wavenumber * vacuum_wavenumber;
    return {axis - k * (dot(axis, k) / k2), false};
}

namespace {

struct CrystalFrame {
    Vec3 e1, e2, e3;
    Vec3 apply(const Vec3& k) const { return {dot(e1, k), dot(e2, k), dot(e3, k)}; }
};

CrystalFrame crystal_frame(const Vec3& axis)
{
    const Vec3 z{0.0, 0.0, 1.0};
    Vec3 e1 = cross(z, axis);
    const double n1 = norm(e1);
    e1 = n1 > 1e-12 ? e1 * (1.0 / n1) : Vec3{1.0, 0.0, 0.0};
    return {e1, cross(axis, e1), axis};
}

double vectorial_raw(const CrystalFrame& f, const Vec3& kp, const Vec3& ks, const Vec3& ki, double ks0, double ki0)
{
    const Vec3 p = f.apply(kp);
    const Vec3 s = f.apply(ks);
    const Vec3 i = f.apply(ki);
    return -ks0 * ki0 * p.z * ((-s.y * i.x - s.x * i.y) * p.x + (s.y * i.y - s.x * i.x) * p.y);
}

}  // namespace

double chi_contraction(const Vec3& kp, const Vec3& ks, const Vec3& ki, const DerivedIndices& idx, ChiMode mode)
{
    if (mode == ChiMode::effective) {
        return 1.0;
    }
    const CrystalFrame f = crystal_frame(idx.axis);
    const double k0s = 0.5 * idx.k0;
    const double raw = vectorial_raw(f, kp, ks, ki, k0s, k0s);
    const Vec3 pump_axis{0.0, 0.0, idx.k0 * idx.n_eff};
    const Vec3 emitted_axis{0.0, 0.0, idx.shell()};
    const double ref = vectorial_raw(f, pump_axis, emitted_axis, emitted_axis, k0s, k0s);
    if (std::abs(ref) < 1e-300) {
        return raw;
    }
    return raw / ref;
}

}  // namespace spdc
