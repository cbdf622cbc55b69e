#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spdc/kernels.hpp"
#include "spdc/phase_match.hpp"
#include "spdc/quad.hpp"

namespace spdc {

// Cell-centred grid; the bounds are the outer cell edges and row 0 holds the
// largest k_y.
struct GridSpec {
    int nx = 256;
    int ny = 256;
    double kx_min = -0.7;
    double kx_max = 0.7;
    double ky_min = -0.7;
    double ky_max = 0.7;

    static GridSpec square(int n, Vec2 center, double half_extent);
    void validate() const;
    double dx() const { return (kx_max - kx_min) / nx; }
    double dy() const { return (ky_max - ky_min) / ny; }
    double kx(int col) const { return kx_min + (col + 0.5) * dx(); }
    double ky(int row) const { return ky_max - (row + 0.5) * dy(); }
    Vec2 k(int row, int col) const { return {kx(col), ky(row)}; }
    std::size_t cells() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
    bool operator==(const GridSpec&) const = default;
};

enum class CellStatus : std::uint8_t { ok = 0, not_converged = 1, domain_error = 2 };

struct SpectrumGrid {
    GridSpec grid;
    std::vector<double> values;       // row-major, row 0 = largest k_y
    std::vector<CellStatus> status;
    std::string first_error;

    double at(int row, int col) const { return values[static_cast<std::size_t>(row) * grid.nx + col]; }
    std::size_t count(CellStatus s) const;
    double max_value() const;
};

struct AsOptions {
    QuadratureSpec quad;
    PhaseMatchSpec pm;
    unsigned workers = 1;
    SimdLevel simd = SimdLevel::scalar;
};

// Angular spectrum by direct quadrature over the pump annulus with exact dispersion.
SpectrumGrid as_numeric(const GridSpec& grid, const CrystalConfig& crystal, const PumpBeam& pump,
                        const AsOptions& opts);

// Closed form of the angular spectrum in the Gaussian phase-matching
// approximation, with the azimuthal integral done by the trapezoid rule.
SpectrumGrid as_analytic(const GridSpec& grid, const CrystalConfig& crystal, const PumpBeam& pump,
                         const AsOptions& opts);

struct ConeGeometry {
    double r_as = 0.0;          // radius of the emission cone for a Gaussian pump
    double sigma_as = 0.0;      // width parameter, 1/um^2
    double walkoff_b = 0.0;     // n_o k0 beta |a_perp| / 2
    double r_plus = 0.0;
    double r_minus = 0.0;
    double a_plus = 0.0;        // centre offsets along displacement
    double a_minus = 0.0;
    Vec2 displacement;          // unit vector of the centre offsets
    Vec2 touch_point;
    bool reliable = false;      // |b| ~ r_as >> kappa
};

// Throws DomainError when n_eff >= n_o (no real cone).
ConeGeometry cone_geometry(const CrystalConfig& crystal, const PumpBeam& pump, double gamma = 0.4393);

// Signal spectrum conditioned on an idler transverse momentum; pointwise exact.
SpectrumGrid cas_numeric(const GridSpec& grid, Vec2 idler, const CrystalConfig& crystal, const PumpBeam& pump,
                         const AsOptions& opts);

struct CasClosedForm {
    double w_eff = 0.0;
    Vec2 center;                // K0
    double radius_squared = 0.0;
    double radius() const;      // 0 when radius_squared <= 0
};

CasClosedForm cas_closed_form(Vec2 idler, const CrystalConfig& crystal, const PumpBeam& pump, double gamma);

struct CasAnalytic {
    SpectrumGrid map;
    CasClosedForm form;
};

CasAnalytic cas_analytic(const GridSpec& grid, Vec2 idler, const CrystalConfig& crystal, const PumpBeam& pump,
                         const AsOptions& opts);

// Grid centred on -idler that resolves the pump annulus.
GridSpec cas_default_grid(Vec2 idler, const PumpBeam& pump, int n = 256);

// Left side minus right side of the propagation-invariance condition.
double pi_residual(Vec2 ks, Vec2 ki, const DerivedIndices& idx, double kappa, double freq_ratio = 1.0);

struct GridPeak {
    Vec2 k;
    double value = 0.0;
    int row = 0;
    int col = 0;
};

// Values within kTieTolerance of the maximum tie, so that mirror images that
// differ only by rounding are resolved the same way. Ties go to the smallest
// |k|, then the smallest azimuth in [0, 2pi). Empty when every cell is zero.
inline constexpr double kTieTolerance = 1e-12;
std::optional<GridPeak> find_max(const SpectrumGrid& grid);

}  // namespace spdc
