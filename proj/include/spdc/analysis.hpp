#pragma once

#include <vector>

#include "spdc/spectra.hpp"

namespace spdc {

// Bilinear interpolation between cell centres; zero outside the grid.
double sample(const SpectrumGrid& grid, Vec2 k);

std::vector<double> radial_profile(const SpectrumGrid& grid, Vec2 center, double azimuth, double r_min,
                                   double r_max, int samples);

struct RidgeCut {
    double azimuth = 0.0;
    double peak_radius = 0.0;              // radius of the highest sample
    double peak_value = 0.0;
    double hwhm = 0.0;                     // half the width of the half-maximum interval around the peak
    bool single_interval = true;           // the half-maximum set is connected
    std::vector<double> maxima_radii;      // local maxima above the threshold, ascending radius
};

// Radial cuts from center at n_azimuth equally spaced angles starting at 0.
// Local maxima below threshold * (global grid max) are ignored.
std::vector<RidgeCut> ridge_scan(const SpectrumGrid& grid, Vec2 center, int n_azimuth, double r_min, double r_max,
                                 int samples, double threshold);

struct CircleFit {
    Vec2 center;
    double radius = 0.0;
    double rms = 0.0;
    int points = 0;
};

// Algebraic least-squares circle; needs at least three non-collinear points.
CircleFit fit_circle(const std::vector<Vec2>& points);

// Value-weighted mean and standard deviation of |k - center| over cells whose
// value is at least fraction * max.
struct RadialMoments {
    double mean = 0.0;
    double spread = 0.0;
};

RadialMoments radial_moments(const SpectrumGrid& grid, Vec2 center, double fraction);

}  // namespace spdc
