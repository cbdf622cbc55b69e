#include <doctest.h>

#include <cstring>

#include "spdc/analysis.hpp"
#include "spdc/errors.hpp"
#include "spdc/spectra.hpp"
#include "support.hpp"

using namespace spdc;

TEST_SUITE("spectra") {

AsOptions fast_options(unsigned workers = 1)
{
    AsOptions o;
    o.quad = {32, 64, 1e-2, 2};
    o.workers = workers;
    o.simd = detect_simd_level();
    return o;
}

bool same_bits(const SpectrumGrid& a, const SpectrumGrid& b)
{
    return a.values.size() == b.values.size() &&
           std::memcmp(a.values.data(), b.values.data(), a.values.size() * sizeof(double)) == 0;
}

TEST_CASE("cone geometry of the reference cut")
{
    const CrystalConfig c = testing::bbo();
    const ConeGeometry g = cone_geometry(c, testing::pump());
    const DerivedIndices idx = derived_indices(c, 406.8);
    const double nk = idx.n_o * idx.k0;
    CHECK(g.r_as * g.r_as == doctest::Approx(0.5 * nk * nk * (1.0 - idx.n_eff / idx.n_o)).epsilon(1e-12));
    CHECK(g.r_as == doctest::Approx(0.49).epsilon(0.05 / 0.49));
    CHECK(g.a_plus == doctest::Approx(0.02).epsilon(0.1));
    CHECK(g.a_minus == doctest::Approx(-0.02).epsilon(0.1));
    CHECK(g.r_plus == doctest::Approx(0.51).epsilon(0.01));
    // independent evaluation of the displaced-cone estimates
    const double b = 0.5 * nk * idx.beta * std::abs(idx.axis.y);
    const double k = 0.05, r = g.r_as;
    CHECK(g.r_plus == doctest::Approx(r - 0.5 * k * (1 + b / r - k / (2 * r))).epsilon(1e-12));
    CHECK(g.r_minus == doctest::Approx(r - 0.5 * k * (1 - b / r + k / (2 * r))).epsilon(1e-12));
    CHECK(g.a_minus == doctest::Approx(0.5 * k * (1 + b / r - k / (2 * r))).epsilon(1e-12));
    CHECK(g.displacement.y == doctest::Approx(1.0));
    CHECK(g.touch_point.y == doctest::Approx(-r + 0.5 * k).epsilon(1e-12));
    CHECK(g.sigma_as == doctest::Approx(idx.n_o * idx.k0 / (std::sqrt(2.0) * 0.4393 * 1000.0)).epsilon(1e-12));
}

TEST_CASE("positive uniaxial crystal has no cone")
{
    CrystalConfig c = testing::bbo();
    std::swap(c.ordinary, c.extraordinary);
    CHECK_THROWS_AS(cone_geometry(c, testing::pump()), DomainError);
}

TEST_CASE("angular spectrum is mirror symmetric about the y axis")
{
    const GridSpec grid{16, 12, -0.6, 0.6, -0.6, 0.3};
    const SpectrumGrid g = as_numeric(grid, testing::bbo(), testing::pump(), fast_options());
    const double top = g.max_value();
    CHECK(top > 0.0);
    for (int row = 0; row < grid.ny; ++row) {
        for (int col = 0; col < grid.nx; ++col) {
            CHECK(std::abs(g.at(row, col) - g.at(row, grid.nx - 1 - col)) <= 1e-9 * top);
        }
    }
}

TEST_CASE("angular spectrum does not depend on the pump OAM")
{
    const GridSpec grid{10, 10, -0.1, 0.1, -0.55, -0.35};
    PumpBeam p3 = testing::pump();
    p3.oam_index = 3;
    CHECK(same_bits(as_numeric(grid, testing::bbo(), testing::pump(), fast_options()),
                    as_numeric(grid, testing::bbo(), p3, fast_options())));
    const Vec2 idler{0.027, -0.485};
    const GridSpec cg = cas_default_grid(idler, testing::pump(), 32);
    CHECK(same_bits(cas_numeric(cg, idler, testing::bbo(), testing::pump(), fast_options()),
                    cas_numeric(cg, idler, testing::bbo(), p3, fast_options())));
}

TEST_CASE("angular spectrum is independent of the worker count")
{
    const GridSpec grid{12, 12, -0.6, 0.6, -0.6, 0.6};
    const SpectrumGrid a = as_numeric(grid, testing::bbo(), testing::pump(), fast_options(1));
    CHECK(same_bits(a, as_numeric(grid, testing::bbo(), testing::pump(), fast_options(3))));
    CHECK(same_bits(as_analytic(grid, testing::bbo(), testing::pump(), fast_options(1)),
                    as_analytic(grid, testing::bbo(), testing::pump(), fast_options(4))));
}

TEST_CASE("scalar and vector kernels give the same map")
{
    const GridSpec grid{8, 8, -0.6, 0.6, -0.6, 0.0};
    AsOptions s = fast_options();
    s.simd = SimdLevel::scalar;
    const SpectrumGrid a = as_numeric(grid, testing::bbo(), testing::pump(), s);
    const SpectrumGrid b = as_numeric(grid, testing::bbo(), testing::pump(), fast_options());
    const double top = a.max_value();
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        CHECK(std::abs(a.values[i] - b.values[i]) <= 1e-12 * top);
    }
    const SpectrumGrid c = as_analytic(grid, testing::bbo(), testing::pump(), s);
    const SpectrumGrid d = as_analytic(grid, testing::bbo(), testing::pump(), fast_options());
    for (std::size_t i = 0; i < c.values.size(); ++i) {
        CHECK(std::abs(c.values[i] - d.values[i]) <= 1e-12 * c.max_value());
    }
}

TEST_CASE("Gaussian-pump limit of the closed form peaks at 2 pi on the cone")
{
    const CrystalConfig c = testing::bbo();
    const double r = cone_geometry(c, testing::pump()).r_as;
    const PumpBeam p = testing::pump(0.0, 0.0007);
    for (double a : {0.3, 1.9, 4.4}) {
        const Vec2 k{r * std::cos(a), r * std::sin(a)};
        const GridSpec one{1, 1, k.x - 1e-9, k.x + 1e-9, k.y - 1e-9, k.y + 1e-9};
        const SpectrumGrid g = as_analytic(one, c, p, fast_options());
        CHECK(g.values[0] == doctest::Approx(kTwoPi).epsilon(1e-9));
    }
}

TEST_CASE("Gaussian-pump limit of the numeric spectrum is an isotropic ring")
{
    const CrystalConfig c = testing::bbo();
    const PumpBeam p = testing::pump(0.0, 0.001);
    const DerivedIndices idx = derived_indices(c, 406.8);
    std::vector<double> peaks, radii;
    for (double a : {0.0, kPi / 2, kPi, 1.5 * kPi}) {
        const Vec2 u{std::cos(a), std::sin(a)};
        double best = 0.0, best_r = 0.0;
        for (int i = 0; i <= 200; ++i) {
            const double r = 0.44 + 0.1 * i / 200;
            const Vec2 k = u * r;
            const GridSpec one{1, 1, k.x - 1e-9, k.x + 1e-9, k.y - 1e-9, k.y + 1e-9};
            const double v = as_numeric(one, c, p, fast_options()).values[0];
            if (v > best) {
                best = v;
                best_r = r;
            }
        }
        CHECK(best_r == doctest::Approx(std::sqrt(idx.cone_radius_squared())).epsilon(0.02));
        radii.push_back(best_r);
        peaks.push_back(best);
    }
    for (double r : radii) {
        CHECK(std::abs(r - radii[0]) <= 0.002);
    }
    for (double v : peaks) {
        CHECK(v == doctest::Approx(peaks[0]).epsilon(0.05));
    }
}

TEST_CASE("rotating the optical axis rotates the closed-form spectrum")
{
    CrystalConfig c = testing::bbo();
    const PumpBeam p = testing::pump(0.15);
    const GridSpec grid{64, 64, -0.7, 0.7, -0.7, 0.7};
    const SpectrumGrid a = as_analytic(grid, c, p, fast_options());
    c.axis_azimuth += kPi / 2;
    const SpectrumGrid b = as_analytic(grid, c, p, fast_options());
    // b(k) = a(R^-1 k) with R a quarter turn
    double worst = 0.0;
    for (int row = 0; row < grid.ny; ++row) {
        for (int col = 0; col < grid.nx; ++col) {
            const Vec2 k = grid.k(row, col);
            worst = std::max(worst, std::abs(b.at(row, col) - sample(a, {k.y, -k.x})));
        }
    }
    CHECK(worst <= 1e-9 * a.max_value());
}

TEST_CASE("conditional spectrum is supported on the pump annulus")
{
    const CrystalConfig c = testing::bbo();
    const PumpBeam p = testing::pump();
    const Vec2 idler{0.027, -0.485};
    const GridSpec grid = cas_default_grid(idler, p, 256);
    const SpectrumGrid g = cas_numeric(grid, idler, c, p, fast_options());
    double inside = 0.0, outside = 0.0;
    for (int row = 0; row < grid.ny; ++row) {
        for (int col = 0; col < grid.nx; ++col) {
            const double d = std::abs(norm(grid.k(row, col) + idler) - p.cone_radius);
            (d <= 4.0 * p.width ? inside : outside) += g.at(row, col);
        }
    }
    CHECK(outside < 1e-4 * (inside + outside));
}

TEST_CASE("thin crystal conditional spectrum is the translated pump annulus")
{
    CrystalConfig c = testing::bbo();
    c.length_um = 1e-6;
    const PumpBeam p = testing::pump();
    const Vec2 idler{0.027, -0.485};
    const GridSpec grid = cas_default_grid(idler, p, 48);
    const SpectrumGrid g = cas_numeric(grid, idler, c, p, fast_options());
    for (int row = 0; row < grid.ny; ++row) {
        for (int col = 0; col < grid.nx; ++col) {
            const double want = pump_intensity(norm(grid.k(row, col) + idler), p);
            CHECK(g.at(row, col) == doctest::Approx(want).epsilon(1e-12));
        }
    }
}

double ring_half_width(const SpectrumGrid& g, Vec2 center, double r_max)
{
    const auto cuts = ridge_scan(g, center, 90, 0.0, r_max, 2001, 0.05);
    double s = 0.0;
    int n = 0;
    for (const auto& c : cuts) {
        if (c.peak_value >= 0.05 * g.max_value()) {
            s += c.hwhm;
            ++n;
        }
    }
    return s / n;
}

TEST_CASE("conditional ring width scales with the pump width")
{
    const CrystalConfig c = testing::bbo();
    const Vec2 idler{0.027, -0.485};
    const PumpBeam narrow = testing::pump(0.05, 0.0007);
    const PumpBeam wide = testing::pump(0.05, 0.007);
    const GridSpec gn = cas_default_grid(idler, narrow, 512);
    const GridSpec gw = cas_default_grid(idler, wide, 512);
    const double wn = ring_half_width(cas_numeric(gn, idler, c, narrow, fast_options()), -idler, 0.5 * (gn.kx_max - gn.kx_min));
    const double ww = ring_half_width(cas_numeric(gw, idler, c, wide, fast_options()), -idler, 0.5 * (gw.kx_max - gw.kx_min));
    CHECK(ww / wn == doctest::Approx(10.0).epsilon(0.15));
}

TEST_CASE("conditional closed form")
{
    const CrystalConfig c = testing::bbo();
    const PumpBeam p = testing::pump();
    const Vec2 idler{0.027, -0.485};
    const CasClosedForm f = cas_closed_form(idler, c, p, 0.4393);
    CHECK(f.w_eff <= p.width);
    CHECK(f.w_eff > 0.0);
    // idler along x is perpendicular to the projected axis
    const CasClosedForm fx = cas_closed_form({0.49, 0.0}, c, p, 0.4393);
    CHECK(fx.w_eff == p.width);
    CrystalConfig thin = c;
    thin.length_um = 1e-3;
    const CasClosedForm t = cas_closed_form(idler, thin, p, 0.4393);
    CHECK(std::abs(t.w_eff - p.width) <= 1e-10 * p.width);
    CHECK(norm(t.center + idler) <= 1e-10 * norm(idler));
    CHECK(std::abs(t.radius() - p.cone_radius) <= 1e-10 * p.cone_radius);
    CHECK(CasClosedForm{1.0, {}, -4.0}.radius() == 0.0);
}

CircleFit ring_fit(const SpectrumGrid& g, Vec2 center, double r_max)
{
    std::vector<Vec2> pts;
    for (const auto& cut : ridge_scan(g, center, 180, 0.0, r_max, 2001, 0.05)) {
        if (cut.peak_value >= 0.05 * g.max_value()) {
            pts.push_back(center + Vec2{std::cos(cut.azimuth), std::sin(cut.azimuth)} * cut.peak_radius);
        }
    }
    return fit_circle(pts);
}

TEST_CASE("closed-form conditional ring agrees with the numeric one")
{
    const CrystalConfig c = testing::bbo();
    const PumpBeam p = testing::pump();
    const Vec2 idler{0.027, -0.485};
    const GridSpec grid = cas_default_grid(idler, p, 256);
    const CasAnalytic a = cas_analytic(grid, idler, c, p, fast_options());
    const SpectrumGrid n = cas_numeric(grid, idler, c, p, fast_options());
    const double half = 0.5 * (grid.kx_max - grid.kx_min);
    const CircleFit fa = ring_fit(a.map, -idler, half);
    const CircleFit fn = ring_fit(n, -idler, half);
    CHECK(norm(fa.center - fn.center) <= a.form.w_eff);
    CHECK(std::abs(fa.radius - fn.radius) <= 2.0 * a.form.w_eff);
}

TEST_CASE("propagation-invariance residual")
{
    const DerivedIndices idx = derived_indices(testing::bbo(), 406.8);
    const double kappa = 0.05;
    const Vec2 dir{0.6, 0.8};
    // paraxial signal on the condition
    for (double s : {1e-3, 1e-4, 1e-5}) {
        const Vec2 ks{s, 0.0};
        const Vec2 ki = dir * kappa - ks;
        CHECK(std::abs(pi_residual(ks, ki, idx, kappa)) <= 10.0 * s * s);
    }
    // experimental regime: signal at a tenth of the shell
    const double k0i = 0.5 * idx.n_o * idx.k0;
    const Vec2 ks{0.1 * k0i, 0.0};
    const Vec2 ki = dir * kappa - ks;
    CHECK(std::abs(pi_residual(ks, ki, idx, kappa)) / norm2(ks) <= 0.011);
    // sign tells inside from outside of the pump cone
    const Vec2 small{1e-4, 0.0};
    CHECK(pi_residual(small, dir * 0.04 - small, idx, kappa) < 0.0);
    CHECK(pi_residual(small, dir * 0.06 - small, idx, kappa) > 0.0);
}

TEST_CASE("find_max")
{
    SpectrumGrid g;
    g.grid = {4, 4, -2, 2, -2, 2};
    g.values.assign(16, 0.0);
    g.status.assign(16, CellStatus::ok);
    CHECK_FALSE(find_max(g));
    g.values[5] = 3.0;
    auto p = find_max(g);
    REQUIRE(p);
    CHECK(p->row == 1);
    CHECK(p->col == 1);
    CHECK(p->k == Vec2{-0.5, 0.5});
    // uniform grid: smallest |k| then smallest azimuth in [0, 2 pi)
    g.values.assign(16, 1.0);
    p = find_max(g);
    REQUIRE(p);
    CHECK(p->k == Vec2{0.5, 0.5});
    // mirror images that differ by rounding count as a tie
    g.values.assign(16, 0.0);
    g.values[3 * 4 + 0] = 1.0;
    g.values[3 * 4 + 3] = std::nextafter(1.0, 2.0);
    p = find_max(g);
    REQUIRE(p);
    CHECK(p->k == Vec2{-1.5, -1.5});
    g.values[3 * 4 + 3] = 1.0 + 1e-9;
    CHECK(find_max(g)->k == Vec2{1.5, -1.5});
}

}
