#include "spdc/oam.hpp"

#include <algorithm>
#include <cmath>

#include "spdc/errors.hpp"

namespace spdc {

TiltedFrame tilted_frame(double theta, double phi)
{
    if (!(theta >= 0.0 && theta < kPi / 2.0)) {
        throw DomainError("tilted_frame: theta must lie in [0, pi/2)");
    }
    const double ct = std::cos(theta), st = std::sin(theta);
    const double cp = std::cos(phi), sp = std::sin(phi);
    TiltedFrame f;
    f.theta = theta;
    f.phi = phi;
    f.p1 = {ct * cp, ct * sp, -st};
    f.p2 = {-sp, cp, 0.0};
    f.p3 = {st * cp, st * sp, ct};
    return f;
}

std::complex<double> angular_factor(int ell, double theta, double phi_frame, double phi, double kz, double kperp)
{
    if (ell == 0) {
        return 1.0;
    }
    const int n = std::abs(ell);
    const double sgn = ell > 0 ? 1.0 : -1.0;
    const double d = phi - phi_frame;
    const std::complex<double> base(std::cos(theta) * std::cos(d), sgn * std::sin(d));
    double tail = 0.0;
    if (std::sin(theta) != 0.0) {
        if (kperp == 0.0) {
            throw DomainError("angular_factor: k_perp = 0 with a tilted axis");
        }
        tail = -kz / kperp * std::sin(theta);
    }
    // sum_m C(n, n-m) base^m tail^(n-m)
    std::complex<double> sum = 0.0;
    std::complex<double> bpow = 1.0;
    double binom = 1.0;
    for (int m = 0; m <= n; ++m) {
        sum += binom * bpow * std::pow(tail, n - m);
        bpow *= base;
        binom = binom * (n - m) / (m + 1);
    }
    return sum;
}

TiltedDispersion tilted_dispersion(double kappa, double shell, double phi, double theta, double phi_frame,
                                   KzBranch branch)
{
    if (!(kappa >= 0.0) || !(kappa <= shell)) {
        throw DomainError("tilted_dispersion: kappa must lie in [0, shell]");
    }
    if (!(theta >= 0.0 && theta < kPi / 2.0)) {
        throw DomainError("tilted_dispersion: theta must lie in [0, pi/2)");
    }
    TiltedDispersion out;
    const double q = std::sqrt(shell * shell - kappa * kappa);
    const double ct = std::cos(theta);
    const double t = std::tan(theta);
    const double c = std::cos(phi_frame - phi);
    const double s = std::sin(phi_frame - phi);
    const double rad = kappa * kappa / (ct * ct) - shell * shell * t * t * s * s;
    if (rad < 0.0) {
        return out;
    }
    const double sign = branch == KzBranch::plus ? 1.0 : -1.0;
    out.kz = (q / ct + sign * std::abs(t * c) * std::sqrt(rad)) / (1.0 + t * t * c * c);
    // |k_perp| also solves a quadratic whose roots stay accurate when it is small
    const double st = std::sin(theta);
    const double naive = std::sqrt(std::max(0.0, shell * shell - out.kz * out.kz));
    const double den = st * st * c * c + ct * ct;
    const double r1 = std::abs(q * st * c + ct * ct * std::sqrt(rad)) / den;
    const double r2 = std::abs(q * st * c - ct * ct * std::sqrt(rad)) / den;
    out.kperp = std::abs(r1 - naive) <= std::abs(r2 - naive) ? r1 : r2;
    out.in_domain = true;
    out.jacobian = kappa > 0.0 ? std::abs(out.kperp - out.kz * c * st) / kappa : 0.0;
    out.on_mode = std::abs(out.kperp * st * c + out.kz * ct - q) <= 1e-9 * shell;
    return out;
}

double emission_cone_tilt(const DerivedIndices& idx)
{
    const double r2 = idx.cone_radius_squared();
    if (!(r2 > 0.0)) {
        throw DomainError("emission_cone_tilt: no real emission cone");
    }
    return std::asin(std::sqrt(r2) / idx.shell());
}

double AmplitudeMatrix::max_abs() const
{
    double m = 0.0;
    for (const auto& v : values) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

namespace {

// Mode nodes parametrized by the radius and azimuth about the mode axis.
// weights include the radial profile and the azimuthal step.
struct Ring {
    int nr = 0;
    int na = 0;
    std::vector<double> w;       // per radial node
    std::vector<Vec3> k;         // nr * na lab wave vectors
    std::vector<double> alpha;
};

Ring build_ring(const BesselMode& mode, double shell, int nr, int na)
{
    if (!(mode.kappa >= 0.0) || !(mode.width >= 0.0)) {
        throw DomainError("oam: mode radius and width must be non-negative");
    }
    if (mode.kappa == 0.0 && mode.width == 0.0) {
        throw DomainError("oam: an ideal ring needs a positive radius");
    }
    const TiltedFrame frame = tilted_frame(mode.theta, mode.phi);
    Ring ring;
    ring.na = na;
    std::vector<double> radii;
    const double h = kTwoPi / na;
    if (mode.width == 0.0) {
        radii.push_back(mode.kappa);
        ring.w.push_back(h);
    } else {
        const double lo = std::max(0.0, mode.kappa - 6.0 * mode.width);
        const GaussLegendreRule rule = gauss_legendre(nr, lo, mode.kappa + 6.0 * mode.width);
        const double scale = mode.kappa > 0.0 ? mode.kappa : mode.width;
        const double norm_w = 1.0 / (mode.width * std::sqrt(kTwoPi) * scale);
        for (int i = 0; i < nr; ++i) {
            const double u = (rule.nodes[i] - mode.kappa) / mode.width;
            radii.push_back(rule.nodes[i]);
            ring.w.push_back(h * rule.weights[i] * rule.nodes[i] * norm_w * std::exp(-0.5 * u * u));
        }
    }
    ring.nr = static_cast<int>(radii.size());
    for (int j = 0; j < na; ++j) {
        ring.alpha.push_back(h * j);
    }
    ring.k.reserve(static_cast<std::size_t>(ring.nr) * na);
    for (double r : radii) {
        if (r > shell) {
            throw DomainError("oam: mode radius exceeds the ordinary shell");
        }
        const double kz = std::sqrt(shell * shell - r * r);
        for (int j = 0; j < na; ++j) {
            ring.k.push_back(frame.to_lab({r * std::cos(ring.alpha[j]), r * std::sin(ring.alpha[j]), kz}));
        }
    }
    return ring;
}

// Pump amplitude times the phase-matching envelope for one signal/idler pair;
// zero once the pump annulus is eight widths away.
struct PairKernel {
    const DerivedIndices& idx;
    const PumpBeam& pump;
    double length;
    PhaseMatchSpec pm;
    bool entrance_phase = false;

    std::complex<double> operator()(const Vec3& ks, const Vec3& ki) const
    {
        const Vec2 kp = ks.perp() + ki.perp();
        if (std::abs(norm(kp) - pump.cone_radius) > 8.0 * pump.width) {
            return 0.0;
        }
        const double dk = extraordinary_kz(kp, idx) - ks.z - ki.z;
        if (entrance_phase) {
            return pump_spectrum(kp, pump) * pm_amplitude(dk, length, pm);
        }
        return pump_spectrum(kp, pump) * pm_envelope(dk, length, pm);
    }
};

// G(alpha_s, alpha_i), summed over the radial nodes of both modes.
std::vector<std::complex<double>> pair_grid(const Ring& s, const Ring& i, const PairKernel& kernel,
                                            unsigned workers)
{
    const auto rows = parallel_cell_map(static_cast<std::size_t>(s.na), workers, [&](std::size_t js) {
        std::vector<std::complex<double>> row(i.na, 0.0);
        for (int rs = 0; rs < s.nr; ++rs) {
            const Vec3& ks = s.k[static_cast<std::size_t>(rs) * s.na + js];
            for (int ri = 0; ri < i.nr; ++ri) {
                const double w = s.w[rs] * i.w[ri];
                const Vec3* ki = &i.k[static_cast<std::size_t>(ri) * i.na];
                for (int ji = 0; ji < i.na; ++ji) {
                    const std::complex<double> v = kernel(ks, ki[ji]);
                    if (v != 0.0) {
                        row[ji] += w * v;
                    }
                }
            }
        }
        return row;
    });
    std::vector<std::complex<double>> g(static_cast<std::size_t>(s.na) * i.na);
    for (int js = 0; js < s.na; ++js) {
        if (!rows[js].ok) {
            throw DomainError("oam: " + rows[js].error);
        }
        std::copy(rows[js].value.begin(), rows[js].value.end(), g.begin() + static_cast<std::ptrdiff_t>(js) * i.na);
    }
    return g;
}

// sum_jk ms_j(ls) g_jk mi_k(li)
std::vector<std::complex<double>> project(const std::vector<std::complex<double>>& g, int ns, int ni,
                                          IndexRange ls, IndexRange li,
                                          const std::vector<std::vector<std::complex<double>>>& ms,
                                          const std::vector<std::vector<std::complex<double>>>& mi)
{
    std::vector<std::complex<double>> half(static_cast<std::size_t>(ns) * li.size(), 0.0);
    for (int j = 0; j < ns; ++j) {
        for (int b = 0; b < li.size(); ++b) {
            std::complex<double> acc = 0.0;
            for (int k = 0; k < ni; ++k) {
                acc += g[static_cast<std::size_t>(j) * ni + k] * mi[b][k];
            }
            half[static_cast<std::size_t>(j) * li.size() + b] = acc;
        }
    }
    std::vector<std::complex<double>> f(static_cast<std::size_t>(ls.size()) * li.size(), 0.0);
    for (int a = 0; a < ls.size(); ++a) {
        for (int b = 0; b < li.size(); ++b) {
            std::complex<double> acc = 0.0;
            for (int j = 0; j < ns; ++j) {
                acc += ms[a][j] * half[static_cast<std::size_t>(j) * li.size() + b];
            }
            f[static_cast<std::size_t>(a) * li.size() + b] = acc;
        }
    }
    return f;
}

std::vector<std::vector<std::complex<double>>> ring_phases(const std::vector<double>& alpha, IndexRange r)
{
    std::vector<std::vector<std::complex<double>>> m(r.size());
    for (int a = 0; a < r.size(); ++a) {
        const int ell = r.min + a;
        m[a].reserve(alpha.size());
        for (double al : alpha) {
            m[a].push_back(std::polar(1.0, ell * al));
        }
    }
    return m;
}

std::vector<std::complex<double>> ring_amplitudes(const CrystalConfig& crystal, const PumpBeam& pump,
                                                  const BesselMode& signal, const BesselMode& idler, IndexRange ls,
                                                  IndexRange li, const OamOptions& opts, int nr, int na)
{
    const DerivedIndices idx = derived_indices(crystal, pump.wavelength_nm);
    const Ring s = build_ring(signal, idx.shell(), nr, na);
    const Ring i = build_ring(idler, idx.shell(), nr, na);
    const PairKernel kernel{idx, pump, crystal.length_um, opts.pm, opts.entrance_phase};
    const auto g = pair_grid(s, i, kernel, opts.workers);
    return project(g, s.na, i.na, ls, li, ring_phases(s.alpha, ls), ring_phases(i.alpha, li));
}

void check_ranges(IndexRange ls, IndexRange li)
{
    if (ls.size() < 1 || li.size() < 1) {
        throw DomainError("oam: empty angular momentum range");
    }
}

}  // namespace

AmplitudeMatrix amplitude_matrix(const CrystalConfig& crystal, const PumpBeam& pump, const BesselMode& signal,
                                 const BesselMode& idler, IndexRange ls, IndexRange li, const OamOptions& opts)
{
    check_ranges(ls, li);
    pump.validate();
    if (opts.quad.radial_points < 1 || opts.quad.azimuthal_points < 1) {
        throw DomainError("oam: quadrature point counts must be positive");
    }
    AmplitudeMatrix out;
    out.signal = ls;
    out.idler = li;
    const int nr = opts.quad.radial_points;
    const int na = opts.quad.azimuthal_points;
    out.values = ring_amplitudes(crystal, pump, signal, idler, ls, li, opts, nr, na);
    out.unconverged.assign(out.values.size(), 0);
    if (!opts.quad.check) {
        return out;
    }
    const auto coarse = std::move(out.values);
    out.values = ring_amplitudes(crystal, pump, signal, idler, ls, li, opts, 2 * nr, 2 * na);
    const double top = out.max_abs();
    double worst = 0.0;
    for (std::size_t k = 0; k < coarse.size(); ++k) {
        const double d = std::abs(out.values[k] - coarse[k]);
        worst = std::max(worst, d);
        out.unconverged[k] = d > opts.quad.rel_tol * top ? 1 : 0;
    }
    out.change = top > 0.0 ? worst / top : 0.0;
    out.converged = out.change <= opts.quad.rel_tol;
    return out;
}

std::complex<double> transition_amplitude(const CrystalConfig& crystal, const PumpBeam& pump,
                                          const BesselMode& signal, int ls, const BesselMode& idler, int li,
                                          const OamOptions& opts)
{
    const AmplitudeMatrix m = amplitude_matrix(crystal, pump, signal, idler, {ls, ls}, {li, li}, opts);
    return m.values.front();
}

namespace {

struct LabNode {
    Vec3 k;
    double w = 0.0;
    double phi = 0.0;
};

std::vector<LabNode> lab_nodes(const BesselMode& mode, double shell, int n)
{
    if (mode.width != 0.0 || !(mode.kappa > 0.0)) {
        throw DomainError("amplitude_matrix_lab: needs ideal rings with positive radius");
    }
    std::vector<LabNode> nodes;
    const double h = kTwoPi / n;
    for (int j = 0; j < n; ++j) {
        const double phi = h * j;
        const TiltedDispersion p = tilted_dispersion(mode.kappa, shell, phi, mode.theta, mode.phi, KzBranch::plus);
        const TiltedDispersion m = tilted_dispersion(mode.kappa, shell, phi, mode.theta, mode.phi, KzBranch::minus);
        for (const TiltedDispersion* t : {&p, &m}) {
            if (!t->in_domain || !t->on_mode || !(t->jacobian > 0.0)) {
                continue;
            }
            if (t == &m && p.on_mode && std::abs(p.kz - m.kz) <= 1e-12 * shell) {
                continue;
            }
            nodes.push_back({{t->kperp * std::cos(phi), t->kperp * std::sin(phi), t->kz},
                             h * t->kperp / (mode.kappa * t->jacobian), phi});
        }
    }
    return nodes;
}

std::vector<std::vector<std::complex<double>>> lab_phases(const std::vector<LabNode>& nodes, const BesselMode& mode,
                                                          IndexRange r)
{
    std::vector<std::vector<std::complex<double>>> m(r.size());
    for (int a = 0; a < r.size(); ++a) {
        const int ell = r.min + a;
        for (const LabNode& nd : nodes) {
            const double kperp = norm(nd.k.perp());
            const double radial = std::pow(kperp / mode.kappa, std::abs(ell));
            m[a].push_back(nd.w * radial * angular_factor(ell, mode.theta, mode.phi, nd.phi, nd.k.z, kperp));
        }
    }
    return m;
}

}  // namespace

AmplitudeMatrix amplitude_matrix_lab(const CrystalConfig& crystal, const PumpBeam& pump, const BesselMode& signal,
                                     const BesselMode& idler, IndexRange ls, IndexRange li, int azimuthal_points,
                                     const PhaseMatchSpec& pm)
{
    check_ranges(ls, li);
    pump.validate();
    const DerivedIndices idx = derived_indices(crystal, pump.wavelength_nm);
    const auto s = lab_nodes(signal, idx.shell(), azimuthal_points);
    const auto i = lab_nodes(idler, idx.shell(), azimuthal_points);
    const PairKernel kernel{idx, pump, crystal.length_um, pm};
    std::vector<std::complex<double>> g(s.size() * i.size());
    for (std::size_t a = 0; a < s.size(); ++a) {
        for (std::size_t b = 0; b < i.size(); ++b) {
            g[a * i.size() + b] = kernel(s[a].k, i[b].k);
        }
    }
    AmplitudeMatrix out;
    out.signal = ls;
    out.idler = li;
    out.values = project(g, static_cast<int>(s.size()), static_cast<int>(i.size()), ls, li, lab_phases(s, signal, ls),
                         lab_phases(i, idler, li));
    out.unconverged.assign(out.values.size(), 0);
    return out;
}

Marginals marginals(const AmplitudeMatrix& f)
{
    Marginals m;
    m.signal = f.signal;
    m.idler = f.idler;
    m.signal_probs.assign(f.signal.size(), 0.0);
    m.idler_probs.assign(f.idler.size(), 0.0);
    CompensatedSum total;
    for (int a = 0; a < f.signal.size(); ++a) {
        for (int b = 0; b < f.idler.size(); ++b) {
            const double p = std::norm(f.values[static_cast<std::size_t>(a) * f.idler.size() + b]);
            m.signal_probs[a] += p;
            m.idler_probs[b] += p;
            total.add(p);
        }
    }
    if (!(total.value() > 0.0)) {
        throw DomainError("marginals: all amplitudes vanish");
    }
    for (double& p : m.signal_probs) {
        p /= total.value();
    }
    for (double& p : m.idler_probs) {
        p /= total.value();
    }
    return m;
}

}  // namespace spdc
