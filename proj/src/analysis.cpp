#include "spdc/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "spdc/errors.hpp"

namespace spdc {

double sample(const SpectrumGrid& grid, Vec2 k)
{
    const GridSpec& g = grid.grid;
    const double fx = (k.x - g.kx_min) / g.dx() - 0.5;
    const double fy = (g.ky_max - k.y) / g.dy() - 0.5;
    if (fx < 0.0 || fy < 0.0 || fx > g.nx - 1 || fy > g.ny - 1) {
        return 0.0;
    }
    const int c0 = std::min(static_cast<int>(fx), std::max(g.nx - 2, 0));
    const int r0 = std::min(static_cast<int>(fy), std::max(g.ny - 2, 0));
    const int c1 = std::min(c0 + 1, g.nx - 1);
    const int r1 = std::min(r0 + 1, g.ny - 1);
    const double tx = fx - c0;
    const double ty = fy - r0;
    const double top = (1.0 - tx) * grid.at(r0, c0) + tx * grid.at(r0, c1);
    const double bottom = (1.0 - tx) * grid.at(r1, c0) + tx * grid.at(r1, c1);
    return (1.0 - ty) * top + ty * bottom;
}

std::vector<double> radial_profile(const SpectrumGrid& grid, Vec2 center, double azimuth, double r_min,
                                   double r_max, int samples)
{
    std::vector<double> out(samples);
    const Vec2 u{std::cos(azimuth), std::sin(azimuth)};
    for (int i = 0; i < samples; ++i) {
        const double r = r_min + (r_max - r_min) * i / (samples - 1);
        out[i] = sample(grid, center + u * r);
    }
    return out;
}

std::vector<RidgeCut> ridge_scan(const SpectrumGrid& grid, Vec2 center, int n_azimuth, double r_min, double r_max,
                                 int samples, double threshold)
{
    if (samples < 3 || n_azimuth < 1) {
        throw DomainError("ridge_scan: need at least three samples per cut");
    }
    const double floor = threshold * grid.max_value();
    const double dr = (r_max - r_min) / (samples - 1);
    std::vector<RidgeCut> cuts;
    cuts.reserve(n_azimuth);
    for (int a = 0; a < n_azimuth; ++a) {
        RidgeCut cut;
        cut.azimuth = kTwoPi * a / n_azimuth;
        const std::vector<double> p = radial_profile(grid, center, cut.azimuth, r_min, r_max, samples);
        const auto top = std::max_element(p.begin(), p.end());
        const int ip = static_cast<int>(top - p.begin());
        cut.peak_value = *top;
        cut.peak_radius = r_min + dr * ip;
        for (int i = 1; i + 1 < samples; ++i) {
            if (p[i] >= floor && p[i] > p[i - 1] && p[i] >= p[i + 1]) {
                cut.maxima_radii.push_back(r_min + dr * i);
            }
        }
        if (cut.peak_value > 0.0) {
            const double half = 0.5 * cut.peak_value;
            int lo = ip;
            while (lo > 0 && p[lo - 1] >= half) {
                --lo;
            }
            int hi = ip;
            while (hi + 1 < samples && p[hi + 1] >= half) {
                ++hi;
            }
            double r_lo = r_min + dr * lo;
            if (lo > 0) {
                r_lo -= dr * (p[lo] - half) / (p[lo] - p[lo - 1]);
            }
            double r_hi = r_min + dr * hi;
            if (hi + 1 < samples) {
                r_hi += dr * (p[hi] - half) / (p[hi] - p[hi + 1]);
            }
            cut.hwhm = 0.5 * (r_hi - r_lo);
            for (int i = 0; i < samples; ++i) {
                if ((i < lo || i > hi) && p[i] >= half) {
                    cut.single_interval = false;
                    break;
                }
            }
        }
        cuts.push_back(std::move(cut));
    }
    return cuts;
}

CircleFit fit_circle(const std::vector<Vec2>& points)
{
    const int n = static_cast<int>(points.size());
    if (n < 3) {
        throw DomainError("fit_circle: need at least three points");
    }
    // centred coordinates keep the normal equations well conditioned
    Vec2 mean;
    for (const Vec2& p : points) {
        mean = mean + p;
    }
    mean = mean * (1.0 / n);
    double suu = 0, svv = 0, suv = 0, suuu = 0, svvv = 0, suvv = 0, svuu = 0;
    for (const Vec2& p : points) {
        const double u = p.x - mean.x;
        const double v = p.y - mean.y;
        suu += u * u;
        svv += v * v;
        suv += u * v;
        suuu += u * u * u;
        svvv += v * v * v;
        suvv += u * v * v;
        svuu += v * u * u;
    }
    const double det = suu * svv - suv * suv;
    if (std::abs(det) < 1e-300) {
        throw DomainError("fit_circle: points are collinear");
    }
    const double b1 = 0.5 * (suuu + suvv);
    const double b2 = 0.5 * (svvv + svuu);
    const double uc = (b1 * svv - b2 * suv) / det;
    const double vc = (suu * b2 - suv * b1) / det;
    CircleFit fit;
    fit.center = {mean.x + uc, mean.y + vc};
    fit.radius = std::sqrt(uc * uc + vc * vc + (suu + svv) / n);
    double ss = 0.0;
    for (const Vec2& p : points) {
        const double e = norm(p - fit.center) - fit.radius;
        ss += e * e;
    }
    fit.rms = std::sqrt(ss / n);
    fit.points = n;
    return fit;
}

RadialMoments radial_moments(const SpectrumGrid& grid, Vec2 center, double fraction)
{
    const double floor = fraction * grid.max_value();
    CompensatedSum w, wr, wr2;
    for (int row = 0; row < grid.grid.ny; ++row) {
        for (int col = 0; col < grid.grid.nx; ++col) {
            const double v = grid.at(row, col);
            if (v < floor || !(v > 0.0)) {
                continue;
            }
            const double r = norm(grid.grid.k(row, col) - center);
            w.add(v);
            wr.add(v * r);
            wr2.add(v * r * r);
        }
    }
    if (!(w.value() > 0.0)) {
        throw DomainError("radial_moments: empty grid");
    }
    RadialMoments m;
    m.mean = wr.value() / w.value();
    m.spread = std::sqrt(std::max(0.0, wr2.value() / w.value() - m.mean * m.mean));
    return m;
}

}  // namespace spdc
