#include "spdc/spectra.hpp"

#include <algorithm>
#include <cmath>

#include "spdc/errors.hpp"

namespace spdc {

GridSpec GridSpec::square(int n, Vec2 center, double half_extent)
{
    return {n, n, center.x - half_extent, center.x + half_extent, center.y - half_extent, center.y + half_extent};
}

void GridSpec::validate() const
{
    if (nx < 1 || ny < 1) {
        throw DomainError("grid: cell counts must be positive");
    }
    if (!(kx_max > kx_min) || !(ky_max > ky_min)) {
        throw DomainError("grid: empty k range");
    }
}

std::size_t SpectrumGrid::count(CellStatus s) const { return static_cast<std::size_t>(std::count(status.begin(), status.end(), s)); }

double SpectrumGrid::max_value() const
{
    double m = 0.0;
    for (double v : values) {
        m = std::max(m, v);
    }
    return m;
}

namespace {

struct CellValue {
    double value = 0.0;
    CellStatus status = CellStatus::ok;
};

template <class Fn>
SpectrumGrid map_grid(const GridSpec& grid, unsigned workers, Fn&& fn)
{
    SpectrumGrid out;
    out.grid = grid;
    out.values.assign(grid.cells(), 0.0);
    out.status.assign(grid.cells(), CellStatus::ok);
    const auto cells = parallel_cell_map(grid.cells(), workers, [&](std::size_t i) {
        const int row = static_cast<int>(i / grid.nx);
        const int col = static_cast<int>(i % grid.nx);
        return fn(grid.k(row, col));
    });
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (!cells[i].ok) {
            out.status[i] = CellStatus::domain_error;
            if (out.first_error.empty()) {
                out.first_error = cells[i].error;
            }
            continue;
        }
        out.values[i] = cells[i].value.value;
        out.status[i] = cells[i].value.status;
    }
    return out;
}

PumpNodes pump_nodes(const DerivedIndices& idx, const PumpBeam& pump, int nr, int nphi)
{
    const double r_lo = std::max(0.0, pump.cone_radius - 6.0 * pump.width);
    const double r_hi = pump.cone_radius + 6.0 * pump.width;
    const GaussLegendreRule rule = gauss_legendre(nr, r_lo, r_hi);
    const double h = kTwoPi / nphi;
    PumpNodes nodes;
    const std::size_t n = static_cast<std::size_t>(nr) * static_cast<std::size_t>(nphi);
    nodes.kx.reserve(n);
    nodes.ky.reserve(n);
    nodes.kz.reserve(n);
    nodes.weight.reserve(n);
    for (int i = 0; i < nr; ++i) {
        const double r = rule.nodes[i];
        const double w = rule.weights[i] * r * h * pump_intensity(r, pump);
        for (int j = 0; j < nphi; ++j) {
            const double phi = h * j;
            const Vec2 kp{r * std::cos(phi), r * std::sin(phi)};
            nodes.kx.push_back(kp.x);
            nodes.ky.push_back(kp.y);
            nodes.kz.push_back(extraordinary_kz(kp, idx));
            nodes.weight.push_back(w);
        }
    }
    return nodes;
}

bool settled(double cur, double prev, double rel_tol, double floor)
{
    return std::abs(cur - prev) <= rel_tol * std::max(std::abs(cur), floor);
}

}  // namespace

SpectrumGrid as_numeric(const GridSpec& grid, const CrystalConfig& crystal, const PumpBeam& pump,
                        const AsOptions& opts)
{
    grid.validate();
    pump.validate();
    opts.quad.validate();
    const DerivedIndices idx = derived_indices(crystal, pump.wavelength_nm);

    std::vector<PumpNodes> levels;
    for (int k = 0; k <= opts.quad.max_doublings; ++k) {
        levels.push_back(pump_nodes(idx, pump, opts.quad.radial_points << k, opts.quad.azimuthal_points << k));
    }
    CompensatedSum power;
    for (double w : levels[0].weight) {
        power.add(w);
    }
    const double floor = 1e-9 * power.value();

    AsCell base;
    base.shell2 = idx.shell() * idx.shell();
    base.half_length = 0.5 * crystal.length_um;
    base.gamma = opts.pm.gamma;
    base.envelope = opts.pm.envelope;

    return map_grid(grid, opts.workers, [&](Vec2 ks) {
        AsCell cell = base;
        cell.ksx = ks.x;
        cell.ksy = ks.y;
        cell.kz_signal = ordinary_kz(norm(ks), idx);
        KernelSum prev = as_cell_sum(levels[0], cell, opts.simd);
        if (prev.evanescent) {
            throw DomainError("as_numeric: evanescent idler inside the pump annulus");
        }
        CellValue out{prev.value, levels.size() > 1 ? CellStatus::not_converged : CellStatus::ok};
        for (std::size_t k = 1; k < levels.size(); ++k) {
            const KernelSum cur = as_cell_sum(levels[k], cell, opts.simd);
            if (cur.evanescent) {
                throw DomainError("as_numeric: evanescent idler inside the pump annulus");
            }
            out.value = cur.value;
            if (settled(cur.value, prev.value, opts.quad.rel_tol, floor)) {
                out.status = CellStatus::ok;
                break;
            }
            prev = cur;
        }
        return out;
    });
}

SpectrumGrid as_analytic(const GridSpec& grid, const CrystalConfig& crystal, const PumpBeam& pump,
                         const AsOptions& opts)
{
    grid.validate();
    pump.validate();
    opts.quad.validate();
    const DerivedIndices idx = derived_indices(crystal, pump.wavelength_nm);
    const double gl = opts.pm.gamma * crystal.length_um;
    const double a = 0.5 * gl * gl;
    const double c = 2.0 / (idx.n_o * idx.k0);
    const double q = gl / (idx.n_o * idx.k0);
    const double inv_sigma2 = 2.0 * q * q;
    const double r2 = idx.cone_radius_squared();
    const Vec2 bap = idx.beta * idx.axis.perp();

    std::vector<std::vector<double>> sines;
    for (int k = 0; k <= opts.quad.max_doublings; ++k) {
        const int n = opts.quad.azimuthal_points << k;
        std::vector<double> s(n);
        for (int j = 0; j < n; ++j) {
            s[j] = std::sin(kTwoPi * j / n);
        }
        sines.push_back(std::move(s));
    }

    return map_grid(grid, opts.workers, [&](Vec2 ks) {
        const double k2 = norm2(ks);
        const double kt = idx.k0 * (idx.n_eff - idx.n_o) + c * k2;
        const double d = norm(bap + c * ks) * pump.cone_radius;
        const double u = k2 - r2;
        const double pre = std::exp(-inv_sigma2 * u * u);
        if (d == 0.0) {
            return CellValue{pre * kTwoPi * std::exp(-a * kt * kt), CellStatus::ok};
        }
        auto ring = [&](std::size_t k) {
            return kTwoPi / static_cast<double>(sines[k].size()) * gaussian_ring_sum(sines[k], d, kt, a, opts.simd);
        };
        double prev = ring(0);
        CellValue out{pre * prev, sines.size() > 1 ? CellStatus::not_converged : CellStatus::ok};
        for (std::size_t k = 1; k < sines.size(); ++k) {
            const double cur = ring(k);
            out.value = pre * cur;
            if (settled(cur, prev, opts.quad.rel_tol, 0.0)) {
                out.status = CellStatus::ok;
                break;
            }
            prev = cur;
        }
        return out;
    });
}

ConeGeometry cone_geometry(const CrystalConfig& crystal, const PumpBeam& pump, double gamma)
{
    pump.validate();
    const DerivedIndices idx = derived_indices(crystal, pump.wavelength_nm);
    const double r2 = idx.cone_radius_squared();
    if (!(r2 > 0.0)) {
        throw DomainError("cone_geometry: n_eff >= n_o, no real emission cone");
    }
    ConeGeometry g;
    g.r_as = std::sqrt(r2);
    const double gl = gamma * crystal.length_um / (idx.n_o * idx.k0);
    g.sigma_as = 1.0 / std::sqrt(2.0 * gl * gl);

    const Vec2 ap = idx.axis.perp();
    const double ap_norm = norm(ap);
    // Centres shift against the in-plane projection of the optical axis.
    g.displacement = ap_norm > 0.0 ? ap * (-1.0 / ap_norm) : Vec2{0.0, 1.0};
    g.walkoff_b = 0.5 * idx.n_o * idx.k0 * idx.beta * ap_norm;

    const double kappa = pump.cone_radius;
    const double br = g.walkoff_b / g.r_as;
    const double q = kappa / (2.0 * g.r_as);
    g.r_plus = g.r_as - 0.5 * kappa * (1.0 + br - q);
    g.a_plus = -0.5 * kappa * (1.0 + br - q);
    g.r_minus = g.r_as - 0.5 * kappa * (1.0 - br + q);
    g.a_minus = 0.5 * kappa * (1.0 + br - q);
    g.touch_point = g.displacement * (-(g.r_as - 0.5 * kappa));
    g.reliable = std::abs(g.walkoff_b) > 0.5 * g.r_as && std::abs(g.walkoff_b) < 4.0 * g.r_as && kappa < 0.5 * g.r_as;
    return g;
}

SpectrumGrid cas_numeric(const GridSpec& grid, Vec2 idler, const CrystalConfig& crystal, const PumpBeam& pump,
                         const AsOptions& opts)
{
    grid.validate();
    pump.validate();
    const DerivedIndices idx = derived_indices(crystal, pump.wavelength_nm);
    const double kzi = ordinary_kz(norm(idler), idx);
    return map_grid(grid, opts.workers, [&](Vec2 ks) {
        const Vec2 kp = ks + idler;
        const double dk = extraordinary_kz(kp, idx) - ordinary_kz(norm(ks), idx) - kzi;
        const double env = pm_envelope(dk, crystal.length_um, opts.pm);
        return CellValue{pump_intensity(norm(kp), pump) * env * env, CellStatus::ok};
    });
}

double CasClosedForm::radius() const { return radius_squared > 0.0 ? std::sqrt(radius_squared) : 0.0; }

CasClosedForm cas_closed_form(Vec2 idler, const CrystalConfig& crystal, const PumpBeam& pump, double gamma)
{
    pump.validate();
    const DerivedIndices idx = derived_indices(crystal, pump.wavelength_nm);
    const Vec2 ap = idx.axis.perp();
    const double ki = norm(idler);
    Vec2 dir;
    if (ki > 0.0) {
        dir = idler * (1.0 / ki);
    } else if (norm(ap) > 0.0) {
        dir = ap * (1.0 / norm(ap));
    }
    const double gl = gamma * crystal.length_um;
    const double a_dir = dot(ap, dir);
    const double w2 = pump.width * pump.width;

    CasClosedForm f;
    const double inv_weff2 = 1.0 / w2 + gl * gl * idx.beta * idx.beta * a_dir * a_dir;
    const double weff2 = 1.0 / inv_weff2;
    f.w_eff = std::sqrt(weff2);
    const double ratio = weff2 / w2;
    const double g2 = gl * gl * weff2;
    const double c = 2.0 / (idx.n_o * idx.k0);
    const double a_ki = dot(ap, idler);
    const double s = idx.k0 * (idx.n_eff - idx.n_o) - idx.beta * a_ki;
    const Vec2 v = c * idler - idx.beta * ap;
    const double t = c * ki * ki - idx.beta * a_ki;

    f.center = idler * (-ratio) + v * (g2 * s);
    const double kappa = pump.cone_radius;
    f.radius_squared = ratio * kappa * kappa + ki * ki * (ratio * ratio - ratio) + 2.0 * g2 * s * t -
                       t * t * g2 * (1.0 - g2 * norm2(v));
    return f;
}

CasAnalytic cas_analytic(const GridSpec& grid, Vec2 idler, const CrystalConfig& crystal, const PumpBeam& pump,
                         const AsOptions& opts)
{
    grid.validate();
    CasAnalytic out;
    out.form = cas_closed_form(idler, crystal, pump, opts.pm.gamma);
    const double scale = pump.amplitude / (pump.cone_radius > 0.0 ? pump.cone_radius : pump.width);
    const double pre = scale * scale;
    const double r = out.form.radius();
    const double inv_w2 = 1.0 / (out.form.w_eff * out.form.w_eff);
    const Vec2 center = out.form.center;
    out.map = map_grid(grid, opts.workers, [&](Vec2 ks) {
        const double u = norm(ks - center) - r;
        return CellValue{pre * std::exp(-u * u * inv_w2), CellStatus::ok};
    });
    return out;
}

GridSpec cas_default_grid(Vec2 idler, const PumpBeam& pump, int n)
{
    return GridSpec::square(n, -idler, pump.cone_radius + 10.0 * pump.width);
}

double pi_residual(Vec2 ks, Vec2 ki, const DerivedIndices& idx, double kappa, double freq_ratio)
{
    const double k0i = idx.n_o * idx.k0 * freq_ratio / (1.0 + freq_ratio);
    const double s2 = norm2(ks);
    const double r2 = freq_ratio * freq_ratio;
    double bracket = norm2(ki) + dot(ki, ks);
    if (s2 > 0.0) {
        const double proj = dot(ki, ks) / std::sqrt(s2);
        bracket += proj * proj;
    }
    return norm2(ks + ki) * r2 + s2 * (1.0 - r2) - s2 / (k0i * k0i) * bracket - kappa * kappa;
}

std::optional<GridPeak> find_max(const SpectrumGrid& grid)
{
    const double top = grid.max_value();
    if (!(top > 0.0)) {
        return std::nullopt;
    }
    auto azimuth = [](Vec2 k) {
        const double a = std::atan2(k.y, k.x);
        return a < 0.0 ? a + kTwoPi : a;
    };
    std::optional<GridPeak> best;
    for (int row = 0; row < grid.grid.ny; ++row) {
        for (int col = 0; col < grid.grid.nx; ++col) {
            const double v = grid.at(row, col);
            if (!(v >= top * (1.0 - kTieTolerance))) {
                continue;
            }
            const Vec2 k = grid.grid.k(row, col);
            bool take = !best;
            if (best) {
                const double n1 = norm(k);
                const double n0 = norm(best->k);
                const double tol = kTieTolerance * std::max(n0, n1);
                take = n1 < n0 - tol || (std::abs(n1 - n0) <= tol && azimuth(k) < azimuth(best->k));
            }
            if (take) {
                best = GridPeak{k, v, row, col};
            }
        }
    }
    return best;
}

}  // namespace spdc
