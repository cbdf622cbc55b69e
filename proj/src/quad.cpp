#include "spdc/quad.hpp"

#include <cstdlib>
#include <string>

namespace spdc {

void QuadratureSpec::validate() const
{
    if (radial_points < 8 || azimuthal_points < 8) {
        throw DomainError("quadrature: point counts must be at least 8");
    }
    if (!(rel_tol > 0.0)) {
        throw DomainError("quadrature: rel_tol must be positive");
    }
    if (max_doublings < 0) {
        throw DomainError("quadrature: max_doublings must be non-negative");
    }
}

QuadratureSpec QuadratureSpec::doubled() const
{
    QuadratureSpec s = *this;
    s.radial_points *= 2;
    s.azimuthal_points *= 2;
    return s;
}

GaussLegendreRule gauss_legendre(int n)
{
    if (n < 1) {
        throw DomainError("gauss_legendre: n must be positive");
    }
    GaussLegendreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) {
                break;
            }
        }
        // recompute the derivative at the converged root
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n == 1 ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) {
        rule.nodes[n / 2] = 0.0;
    }
    return rule;
}

GaussLegendreRule gauss_legendre(int n, double a, double b)
{
    GaussLegendreRule rule = gauss_legendre(n);
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (b + a);
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = mid + half * rule.nodes[i];
        rule.weights[i] *= half;
    }
    return rule;
}

unsigned worker_count()
{
    if (const char* env = std::getenv("SPDC_WORKERS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0 && v <= 1024) {
            return static_cast<unsigned>(v);
        }
        throw DomainError(std::string("SPDC_WORKERS must be a positive integer, got '") + env + "'");
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1u : hw;
}

}  // namespace spdc
