#include "spdc/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <memory>
#include <random>
#include <sstream>

#include "spdc/analysis.hpp"
#include "spdc/errors.hpp"

namespace spdc {

namespace {

constexpr double kRidgeThreshold = 0.05;
constexpr int kRidgeAzimuths = 360;
constexpr int kRidgeSamples = 1001;
const Vec2 kReferencePeak{0.027, -0.485};

std::string fmt(const char* f, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

std::string vec(Vec2 v)
{
    return "(" + fmt("%.4f", v.x) + ", " + fmt("%.4f", v.y) + ")";
}

bool bit_identical(const SpectrumGrid& a, const SpectrumGrid& b)
{
    return a.grid == b.grid && a.values.size() == b.values.size() &&
           std::equal(a.values.begin(), a.values.end(), b.values.begin(), [](double x, double y) {
               return std::bit_cast<std::uint64_t>(x) == std::bit_cast<std::uint64_t>(y);
           });
}

bool bit_identical(const AmplitudeMatrix& a, const AmplitudeMatrix& b)
{
    if (a.values.size() != b.values.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        if (std::bit_cast<std::uint64_t>(a.values[i].real()) != std::bit_cast<std::uint64_t>(b.values[i].real()) ||
            std::bit_cast<std::uint64_t>(a.values[i].imag()) != std::bit_cast<std::uint64_t>(b.values[i].imag())) {
            return false;
        }
    }
    return true;
}

double rel_change(double fine, double coarse) { return std::abs(fine - coarse) / std::abs(fine); }

// Scalars read off an angular-spectrum map at the reference pump.
struct AsScalars {
    Vec2 peak;
    double ridge_radius = 0.0;
    double mean_hwhm = 0.0;
};

struct CasScalars {
    Vec2 idler;
    CircleFit fit;
    double mean_hwhm = 0.0;
    CasClosedForm form;
};

std::vector<RidgeCut> lit_cuts(const SpectrumGrid& g, Vec2 center, double r_min, double r_max)
{
    std::vector<RidgeCut> cuts = ridge_scan(g, center, kRidgeAzimuths, r_min, r_max, kRidgeSamples, kRidgeThreshold);
    const double floor = kRidgeThreshold * g.max_value();
    std::erase_if(cuts, [&](const RidgeCut& c) { return c.peak_value < floor; });
    return cuts;
}

double mean_hwhm(const std::vector<RidgeCut>& cuts)
{
    double s = 0.0;
    for (const RidgeCut& c : cuts) {
        s += c.hwhm;
    }
    return cuts.empty() ? 0.0 : s / cuts.size();
}

class Context {
public:
    explicit Context(const ValidationOptions& opts)
    {
        cfg_ = opts.base;
        workers_ = opts.workers ? opts.workers : worker_count();
        as_opts_.quad = cfg_.quad;
        as_opts_.pm = cfg_.pm;
        as_opts_.workers = workers_;
        as_opts_.simd = opts.simd;
    }

    const RunConfig& cfg() const { return cfg_; }
    unsigned workers() const { return workers_; }
    const AsOptions& as_opts() const { return as_opts_; }

    PumpBeam pump(double kappa, int ell = 0) const
    {
        PumpBeam p = cfg_.pump;
        p.cone_radius = kappa;
        p.oam_index = ell;
        return p;
    }

    const SpectrumGrid& as_numeric_map(double kappa, int ell = 0)
    {
        auto& slot = numeric_[{kappa, ell}];
        if (!slot) {
            slot = std::make_unique<SpectrumGrid>(as_numeric(cfg_.grid, cfg_.crystal, pump(kappa, ell), as_opts_));
        }
        return *slot;
    }

    const SpectrumGrid& as_analytic_map(double kappa)
    {
        auto& slot = analytic_[kappa];
        if (!slot) {
            slot = std::make_unique<SpectrumGrid>(as_analytic(cfg_.grid, cfg_.crystal, pump(kappa), as_opts_));
        }
        return *slot;
    }

    Vec2 auto_idler()
    {
        const auto peak = find_max(as_numeric_map(cfg_.pump.cone_radius));
        if (!peak) {
            throw DomainError("angular spectrum is identically zero");
        }
        return peak->k;
    }

    GridSpec cas_grid(Vec2 idler) const
    {
        const double half = cfg_.cas.half_extent > 0.0 ? cfg_.cas.half_extent
                                                       : cfg_.pump.cone_radius + 10.0 * cfg_.pump.width;
        return GridSpec::square(cfg_.cas.cells, -idler, half);
    }

    const SpectrumGrid& cas_map(int ell = 0)
    {
        auto& slot = cas_[ell];
        if (!slot) {
            const Vec2 idler = auto_idler();
            slot = std::make_unique<SpectrumGrid>(
                cas_numeric(cas_grid(idler), idler, cfg_.crystal, pump(cfg_.pump.cone_radius, ell), as_opts_));
        }
        return *slot;
    }

    AsScalars as_scalars(const SpectrumGrid& g) const
    {
        AsScalars s;
        const auto peak = find_max(g);
        if (!peak) {
            throw DomainError("angular spectrum is identically zero");
        }
        s.peak = peak->k;
        s.ridge_radius = radial_moments(g, {}, 0.5).mean;
        s.mean_hwhm = mean_hwhm(lit_cuts(g, {}, 0.2, 0.7));
        return s;
    }

    CasScalars cas_scalars(const SpectrumGrid& as_map)
    {
        CasScalars s;
        const auto peak = find_max(as_map);
        if (!peak) {
            throw DomainError("angular spectrum is identically zero");
        }
        s.idler = peak->k;
        const GridSpec grid = cas_grid(s.idler);
        const SpectrumGrid cas = cas_numeric(grid, s.idler, cfg_.crystal, cfg_.pump, as_opts_);
        const Vec2 center = -s.idler;
        const auto cuts = lit_cuts(cas, center, 0.0, 0.5 * (grid.kx_max - grid.kx_min));
        std::vector<Vec2> pts;
        for (const RidgeCut& c : cuts) {
            pts.push_back(center + Vec2{std::cos(c.azimuth), std::sin(c.azimuth)} * c.peak_radius);
        }
        s.fit = fit_circle(pts);
        s.mean_hwhm = mean_hwhm(cuts);
        s.form = cas_closed_form(s.idler, cfg_.crystal, cfg_.pump, cfg_.pm.gamma);
        return s;
    }

    struct OamGeometry {
        PumpBeam pump;
        BesselMode signal;
        BesselMode idler;
        OamOptions opts;
    };

    OamGeometry oam_geometry(bool maximal) const
    {
        const OamSettings& o = cfg_.oam;
        OamGeometry g;
        g.pump = pump(o.pump_kappa);
        g.pump.width = o.width;
        const double theta = o.theta ? *o.theta : emission_cone_tilt(derived_indices(cfg_.crystal, g.pump.wavelength_nm));
        // perpendicular orientation turns both frames by a quarter turn
        const double turn = maximal ? 0.0 : kPi / 2.0;
        g.signal = {theta, o.signal_phi + turn, o.signal_kappa, o.width};
        g.idler = {theta, o.idler_phi + turn, o.idler_kappa, o.width};
        g.opts.quad = o.quad;
        g.opts.pm = cfg_.pm;
        g.opts.entrance_phase = o.entrance_phase;
        g.opts.workers = workers_;
        return g;
    }

    const AmplitudeMatrix& oam_matrix(bool maximal, int ell_max, unsigned workers = 0)
    {
        auto& slot = oam_[{maximal, ell_max, workers}];
        if (!slot) {
            OamGeometry g = oam_geometry(maximal);
            if (workers) {
                g.opts.workers = workers;
            }
            const IndexRange r{-ell_max, ell_max};
            slot = std::make_unique<AmplitudeMatrix>(
                amplitude_matrix(cfg_.crystal, g.pump, g.signal, g.idler, r, r, g.opts));
        }
        return *slot;
    }

private:
    RunConfig cfg_;
    unsigned workers_ = 1;
    AsOptions as_opts_;
    std::map<std::pair<double, int>, std::unique_ptr<SpectrumGrid>> numeric_;
    std::map<double, std::unique_ptr<SpectrumGrid>> analytic_;
    std::map<int, std::unique_ptr<SpectrumGrid>> cas_;
    std::map<std::tuple<bool, int, unsigned>, std::unique_ptr<AmplitudeMatrix>> oam_;
};

struct Outcome {
    bool passed = true;
    std::ostringstream detail;

    void check(bool ok, const std::string& what)
    {
        passed = passed && ok;
        if (detail.tellp() > 0) {
            detail << "; ";
        }
        detail << what << (ok ? "" : " [fail]");
    }
};

Outcome cone_radius(Context& ctx)
{
    Outcome o;
    const ConeGeometry g = cone_geometry(ctx.cfg().crystal, ctx.cfg().pump, ctx.cfg().pm.gamma);
    o.check(std::abs(g.r_as - 0.49) <= 0.05, "r_AS = " + fmt("%.4f", g.r_as) + " 1/um, want 0.49 +- 0.05");
    return o;
}

Outcome walk_off(Context& ctx)
{
    Outcome o;
    const DerivedIndices idx = derived_indices(ctx.cfg().crystal, ctx.cfg().pump.wavelength_nm);
    const double v = std::abs(idx.beta * idx.axis.y);
    o.check(std::abs(v - 0.068) <= 0.005, "|beta a_y| = " + fmt("%.4f", v) + " rad, want 0.068 +- 0.005");
    return o;
}

Outcome as_structure(Context& ctx)
{
    Outcome o;
    const SpectrumGrid& g = ctx.as_numeric_map(ctx.cfg().pump.cone_radius);
    o.check(g.count(CellStatus::ok) == g.values.size(),
            std::to_string(g.values.size() - g.count(CellStatus::ok)) + " cells unconverged or failed");
    const AsScalars s = ctx.as_scalars(g);
    // the spectrum is even in k_x, so the maximum comes as a mirror pair
    const Vec2 mirror{-s.peak.x, s.peak.y};
    const double off = std::min(norm(s.peak - kReferencePeak), norm(mirror - kReferencePeak));
    o.check(off <= 0.02, "peak at " + vec(s.peak) + " (or its mirror image), " + fmt("%.4f", off) + " from " +
                             vec(kReferencePeak) + ", want <= 0.02");

    const auto cuts = lit_cuts(g, {}, 0.2, 0.7);
    const bool single = !cuts.empty() && std::all_of(cuts.begin(), cuts.end(), [](const RidgeCut& c) {
        return c.single_interval;
    });
    o.check(cuts.size() == static_cast<std::size_t>(kRidgeAzimuths) && single,
            std::to_string(cuts.size()) + "/" + std::to_string(kRidgeAzimuths) +
                " azimuths lit, single half-maximum interval: " + (single ? "yes" : "no"));
    double lo = 1e300, hi = 0.0, wlo = 1e300, whi = 0.0;
    for (const RidgeCut& c : cuts) {
        lo = std::min(lo, c.peak_value);
        hi = std::max(hi, c.peak_value);
        wlo = std::min(wlo, c.hwhm);
        whi = std::max(whi, c.hwhm);
    }
    const double contrast = cuts.empty() ? 0.0 : hi / lo;
    o.check(contrast > 1.1, "azimuthal max/min of ridge height " + fmt("%.3g", contrast) + ", want > 1.1");
    const double w = mean_hwhm(cuts);
    o.check(w >= 0.01 && w <= 0.03, "ridge half width " + fmt("%.4f", w) + " (range " + fmt("%.4f", wlo) + ".." +
                                        fmt("%.4f", whi) + ") 1/um, want in [0.01, 0.03]");
    return o;
}

struct CircleAgreement {
    double center_err = 0.0;
    double radius_err = 0.0;
};

Outcome double_cone(Context& ctx)
{
    Outcome o;
    for (double kappa : {0.09, 0.15}) {
        const std::string tag = "kappa " + fmt("%.2f", kappa) + ": ";
        const SpectrumGrid& g = ctx.as_numeric_map(kappa);
        const ConeGeometry geo = cone_geometry(ctx.cfg().crystal, ctx.pump(kappa), ctx.cfg().pm.gamma);
        const auto cuts = lit_cuts(g, {}, 0.2, 0.7);
        std::vector<Vec2> inner, outer;
        for (const RidgeCut& c : cuts) {
            if (c.maxima_radii.size() >= 2) {
                const Vec2 u{std::cos(c.azimuth), std::sin(c.azimuth)};
                inner.push_back(u * c.maxima_radii.front());
                outer.push_back(u * c.maxima_radii.back());
            }
        }
        if (inner.size() < 3) {
            o.check(false, tag + "only " + std::to_string(inner.size()) + " azimuths show two ridges");
            continue;
        }
        const CircleFit fi = fit_circle(inner);
        const CircleFit fo = fit_circle(outer);
        const double ai = dot(fi.center, geo.displacement);
        const double ao = dot(fo.center, geo.displacement);
        auto within = [](double got, double want) { return std::abs(got - want) <= 0.25 * std::abs(want); };
        o.check(within(fo.radius, geo.r_plus) && within(ao, geo.a_plus),
                tag + "outer R " + fmt("%.4f", fo.radius) + " vs " + fmt("%.4f", geo.r_plus) + ", A " +
                    fmt("%.4f", ao) + " vs " + fmt("%.4f", geo.a_plus) + " (" + std::to_string(outer.size()) + " pts)");
        o.check(within(fi.radius, geo.r_minus) && within(ai, geo.a_minus),
                tag + "inner R " + fmt("%.4f", fi.radius) + " vs " + fmt("%.4f", geo.r_minus) + ", A " +
                    fmt("%.4f", ai) + " vs " + fmt("%.4f", geo.a_minus));
        // midpoint of the closest approach of the two fitted circles
        Vec2 u = fi.center - fo.center;
        const double sep = norm(u);
        u = sep > 0.0 ? u * (1.0 / sep) : Vec2{0.0, 0.0} - geo.displacement;
        const Vec2 touch = ((fi.center + u * fi.radius) + (fo.center + u * fo.radius)) * 0.5;
        const Vec2 want{0.0, -geo.r_as + 0.5 * kappa};
        const double d = norm(touch - want);
        o.check(d <= 0.03, tag + "touch point " + vec(touch) + ", " + fmt("%.4f", d) + " from " + vec(want) +
                               ", want <= 0.03");
    }
    return o;
}

Outcome cross_oracle(Context& ctx)
{
    Outcome o;
    for (double kappa : {0.05, 0.09, 0.15}) {
        const std::string tag = "kappa " + fmt("%.2f", kappa) + ": ";
        const SpectrumGrid& n = ctx.as_numeric_map(kappa);
        const SpectrumGrid& a = ctx.as_analytic_map(kappa);
        const double rn = radial_moments(n, {}, 0.5).mean;
        const double ra = radial_moments(a, {}, 0.5).mean;
        const double rel = std::abs(ra - rn) / rn;
        o.check(rel <= 0.02, tag + "ridge radius " + fmt("%.4f", rn) + " vs " + fmt("%.4f", ra) + " (" +
                                 fmt("%.2f", 100.0 * rel) + "%)");
        const auto pn = find_max(n);
        const auto pa = find_max(a);
        const int cells = pn && pa ? std::max(std::abs(pn->row - pa->row), std::abs(pn->col - pa->col)) : 1 << 30;
        o.check(cells <= 2, tag + "peaks " + (pn ? vec(pn->k) : "none") + " vs " + (pa ? vec(pa->k) : "none") +
                                ", " + std::to_string(cells) + " cells apart");
    }
    return o;
}

Outcome cas_ring(Context& ctx)
{
    Outcome o;
    const RunConfig& cfg = ctx.cfg();
    const CasScalars s = ctx.cas_scalars(ctx.as_numeric_map(cfg.pump.cone_radius));
    const double w_eff = s.form.w_eff;
    const double w = cfg.pump.width;
    const double dc = norm(s.fit.center + s.idler);
    o.check(dc <= 2.0 * w_eff, "idler " + vec(s.idler) + ", ring centre " + fmt("%.2e", dc) + " from -k_i, want <= " +
                                   fmt("%.2e", 2.0 * w_eff));
    const double dr = std::abs(s.fit.radius - cfg.pump.cone_radius);
    o.check(dr <= 2.0 * w_eff, "ring radius " + fmt("%.5f", s.fit.radius) + ", want " +
                                   fmt("%.4f", cfg.pump.cone_radius) + " +- " + fmt("%.2e", 2.0 * w_eff));
    o.check(s.mean_hwhm >= 0.5 * w && s.mean_hwhm <= 2.0 * w,
            "ring half width " + fmt("%.2e", s.mean_hwhm) + ", want in [W/2, 2W] = [" + fmt("%.2e", 0.5 * w) + ", " +
                fmt("%.2e", 2.0 * w) + "]");

    CrystalConfig thin = cfg.crystal;
    thin.length_um = 1.0;
    const CasClosedForm f = cas_closed_form(s.idler, thin, cfg.pump, cfg.pm.gamma);
    const double ew = std::abs(f.w_eff - w) / w;
    const double ec = norm(f.center + s.idler) / norm(s.idler);
    const double er = std::abs(f.radius() - cfg.pump.cone_radius) / cfg.pump.cone_radius;
    o.check(std::max({ew, ec, er}) <= 1e-10, "L = 1 um relative deviations: W_eff " + fmt("%.2e", ew) + ", K0 " +
                                                 fmt("%.2e", ec) + ", R_k " + fmt("%.2e", er) + ", want <= 1e-10");
    return o;
}

Outcome ell_invariance(Context& ctx)
{
    Outcome o;
    const double kappa = ctx.cfg().pump.cone_radius;
    o.check(bit_identical(ctx.as_numeric_map(kappa, 0), ctx.as_numeric_map(kappa, 3)), "AS l_p = 0 vs 3");
    o.check(bit_identical(ctx.cas_map(0), ctx.cas_map(3)), "CAS l_p = 0 vs 3");
    return o;
}

Outcome tilted_reductions(Context& ctx)
{
    Outcome o;
    const DerivedIndices idx = derived_indices(ctx.cfg().crystal, ctx.cfg().pump.wavelength_nm);
    const double shell = idx.shell();
    std::mt19937_64 rng(20240917);
    std::uniform_real_distribution<double> angle(0.0, kTwoPi);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> ell(-10, 10);
    double ef = 0.0, ez = 0.0, ep = 0.0, ej = 0.0;
    int outside = 0;
    for (int n = 0; n < 1000; ++n) {
        const int l = ell(rng);
        const double phi = angle(rng);
        const double phi_frame = angle(rng);
        const double kperp = shell * (1e-4 + 0.9 * unit(rng));
        const double kz = std::sqrt(shell * shell - kperp * kperp);
        const std::complex<double> want = std::polar(1.0, l * (phi - phi_frame));
        ef = std::max(ef, std::abs(angular_factor(l, 0.0, phi_frame, phi, kz, kperp) - want));
        const TiltedDispersion t = tilted_dispersion(kperp, shell, phi, 0.0, phi_frame);
        outside += t.in_domain ? 0 : 1;
        ez = std::max(ez, std::abs(t.kz - kz) / shell);
        ep = std::max(ep, std::abs(t.kperp - kperp) / shell);
        ej = std::max(ej, std::abs(t.jacobian - 1.0));
    }
    o.check(ef <= 1e-12, "angular factor " + fmt("%.2e", ef));
    o.check(outside == 0 && std::max({ez, ep, ej}) <= 1e-12,
            "dispersion k_z " + fmt("%.2e", ez) + ", k_perp " + fmt("%.2e", ep) + ", Jacobian " + fmt("%.2e", ej) +
                ", out of domain " + std::to_string(outside));
    return o;
}

struct MatrixPeak {
    int ls = 0;
    int li = 0;
    double value = 0.0;
};

MatrixPeak matrix_peak(const AmplitudeMatrix& f)
{
    MatrixPeak p;
    for (int a = f.signal.min; a <= f.signal.max; ++a) {
        for (int b = f.idler.min; b <= f.idler.max; ++b) {
            const double v = std::abs(f.at(a, b));
            if (v > p.value) {
                p = {a, b, v};
            }
        }
    }
    return p;
}

Outcome oam_matrix(Context& ctx)
{
    Outcome o;
    const AmplitudeMatrix& f = ctx.oam_matrix(true, 5);
    const AmplitudeMatrix& g = ctx.oam_matrix(false, 5);
    o.check(f.converged && g.converged, "quadrature doubling change " + fmt("%.2e", f.change) + " and " +
                                            fmt("%.2e", g.change));
    const MatrixPeak p = matrix_peak(f);
    o.check(p.ls == 0 && p.li == 0, "argmax |F| at (" + std::to_string(p.ls) + ", " + std::to_string(p.li) + ")");
    double refl = 0.0;
    for (int a = -5; a <= 5; ++a) {
        for (int b = -5; b <= 5; ++b) {
            refl = std::max(refl, std::abs(std::abs(f.at(a, b)) - std::abs(f.at(-a, -b))));
        }
    }
    refl /= p.value;
    o.check(refl <= 0.02, "reflection asymmetry " + fmt("%.2e", refl) + " of max, want <= 0.02");
    const double ratio = matrix_peak(g).value / p.value;
    o.check(ratio >= 0.35 && ratio <= 0.65,
            "perpendicular/maximal orientation max " + fmt("%.3f", ratio) + ", want in [0.35, 0.65]");
    return o;
}

Outcome marginal_parity(Context& ctx)
{
    Outcome o;
    const AmplitudeMatrix& f = ctx.oam_matrix(true, 15);
    o.check(f.converged, "quadrature doubling change " + fmt("%.2e", f.change));
    const Marginals m = marginals(f);
    // probabilities below this are at the level of quadrature round-off
    constexpr double floor = 1e-12;
    const int wi = alternation_window(m.idler_probs, floor);
    const int ws = alternation_window(m.signal_probs, floor);
    o.check(wi >= 10, "idler alternation window " + std::to_string(wi) + " values, want >= 10");
    o.check(ws < wi, "signal alternation window " + std::to_string(ws) + ", want < idler");
    return o;
}

Outcome determinism(Context& ctx)
{
    Outcome o;
    const RunConfig& cfg = ctx.cfg();
    const unsigned n = std::max(4u, ctx.workers());
    AsOptions one = ctx.as_opts();
    one.workers = 1;
    AsOptions many = ctx.as_opts();
    many.workers = n;
    const PumpBeam pump = cfg.pump;
    const SpectrumGrid& base = ctx.as_numeric_map(pump.cone_radius);
    const SpectrumGrid other =
        as_numeric(cfg.grid, cfg.crystal, pump, ctx.workers() == 1 ? many : one);
    o.check(bit_identical(base, other), "AS 1 vs " + std::to_string(n) + " workers");
    const Vec2 idler = ctx.auto_idler();
    const GridSpec cg = ctx.cas_grid(idler);
    o.check(bit_identical(cas_numeric(cg, idler, cfg.crystal, pump, one), cas_numeric(cg, idler, cfg.crystal, pump, many)),
            "CAS 1 vs " + std::to_string(n) + " workers");
    o.check(bit_identical(as_analytic(cfg.grid, cfg.crystal, pump, one), as_analytic(cfg.grid, cfg.crystal, pump, many)),
            "analytic AS 1 vs " + std::to_string(n) + " workers");
    o.check(bit_identical(ctx.oam_matrix(true, 5, 1), ctx.oam_matrix(true, 5, n)),
            "OAM matrix 1 vs " + std::to_string(n) + " workers");

    AsOptions fine = ctx.as_opts();
    fine.quad = fine.quad.doubled();
    const SpectrumGrid doubled = as_numeric(cfg.grid, cfg.crystal, pump, fine);
    const AsScalars a = ctx.as_scalars(base);
    const AsScalars b = ctx.as_scalars(doubled);
    const double dp = norm(b.peak - a.peak) / norm(b.peak);
    const double dr = rel_change(b.ridge_radius, a.ridge_radius);
    const double dw = rel_change(b.mean_hwhm, a.mean_hwhm);
    o.check(std::max({dp, dr, dw}) < 0.01, "AS doubling: peak " + fmt("%.2e", dp) + ", ridge radius " +
                                               fmt("%.2e", dr) + ", half width " + fmt("%.2e", dw));
    const CasScalars ca = ctx.cas_scalars(base);
    const CasScalars cb = ctx.cas_scalars(doubled);
    const double dc = rel_change(cb.fit.radius, ca.fit.radius);
    const double dcw = rel_change(cb.mean_hwhm, ca.mean_hwhm);
    o.check(std::max(dc, dcw) < 0.01, "CAS after AS doubling: ring radius " + fmt("%.2e", dc) + ", half width " +
                                          fmt("%.2e", dcw));
    double oam = 0.0;
    for (bool maximal : {true, false}) {
        oam = std::max(oam, ctx.oam_matrix(maximal, 5).change);
    }
    oam = std::max(oam, ctx.oam_matrix(true, 15).change);
    o.check(oam < 0.01, "OAM doubling: max |F| change " + fmt("%.2e", oam));
    return o;
}

struct Criterion {
    int id;
    const char* name;
    double budget_s;
    Outcome (*run)(Context&);
};

const Criterion kCriteria[] = {
    {1, "cone radius", 1.0, cone_radius},
    {2, "walk-off", 1.0, walk_off},
    {3, "AS structure", 600.0, as_structure},
    {4, "double cone", 1200.0, double_cone},
    {5, "analytic vs numeric AS", 900.0, cross_oracle},
    {6, "CAS ring", 300.0, cas_ring},
    {7, "pump OAM invariance", 0.0, ell_invariance},
    {8, "tilted-mode reductions", 10.0, tilted_reductions},
    {9, "OAM matrix", 1800.0, oam_matrix},
    {10, "marginal parity", 2700.0, marginal_parity},
    {11, "determinism and doubling", 0.0, determinism},
};

}  // namespace

int alternation_window(const std::vector<double>& values, double floor)
{
    int best = 0;
    int run = 0;       // differences in the current run
    int last = 0;      // sign of the previous difference
    for (std::size_t i = 1; i < values.size(); ++i) {
        const bool usable = values[i] >= floor && values[i - 1] >= floor;
        const double d = values[i] - values[i - 1];
        const int sign = !usable || d == 0.0 ? 0 : (d > 0.0 ? 1 : -1);
        if (sign == 0) {
            run = 0;
        } else if (run > 0 && sign == -last) {
            ++run;
        } else {
            run = 1;
        }
        last = sign;
        best = std::max(best, run > 0 ? run + 1 : 0);
    }
    return best;
}

std::string format_result(const CriterionResult& r)
{
    return std::string(r.passed ? "PASS" : "FAIL") + " " + std::to_string(r.id) + " " + r.name + " (" +
           fmt("%.1f", r.seconds) + " s): " + r.detail;
}

std::vector<CriterionResult> run_acceptance(const ValidationOptions& opts)
{
    std::vector<int> wanted = opts.criteria;
    if (wanted.empty()) {
        for (int i = 1; i <= kCriterionCount; ++i) {
            wanted.push_back(i);
        }
    }
    for (int id : wanted) {
        if (id < 1 || id > kCriterionCount) {
            throw DomainError("no acceptance criterion " + std::to_string(id));
        }
    }
    std::sort(wanted.begin(), wanted.end());
    wanted.erase(std::unique(wanted.begin(), wanted.end()), wanted.end());

    Context ctx(opts);
    std::vector<CriterionResult> out;
    for (int id : wanted) {
        const Criterion& c = kCriteria[id - 1];
        CriterionResult r;
        r.id = id;
        r.name = c.name;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            Outcome o = c.run(ctx);
            r.passed = o.passed;
            r.detail = o.detail.str();
        } catch (const std::exception& e) {
            r.passed = false;
            r.detail = std::string("error: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.budget_s > 0.0 && r.seconds > c.budget_s) {
            r.passed = false;
            r.detail += "; over the " + fmt("%.0f", c.budget_s) + " s budget";
        }
        if (opts.on_result) {
            opts.on_result(r);
        }
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace spdc
