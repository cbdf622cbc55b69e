#pragma once

#include <cmath>

#include "spdc/optics.hpp"

namespace testing {

inline spdc::CrystalConfig bbo()
{
    spdc::CrystalConfig c;
    c.ordinary = {2.7359, 0.01878, 0.01822, 0.01354};
    c.extraordinary = {2.3753, 0.01224, 0.01667, 0.01516};
    c.axis_polar = 29.3 * spdc::kPi / 180.0;
    c.axis_azimuth = -spdc::kPi / 2.0;
    c.length_um = 1000.0;
    return c;
}

inline spdc::PumpBeam pump(double kappa = 0.05, double width = 0.0007)
{
    spdc::PumpBeam p;
    p.cone_radius = kappa;
    p.width = width;
    return p;
}

inline double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace testing
