#include <doctest.h>

#include <random>

#include "spdc/quad.hpp"

using namespace spdc;

TEST_SUITE("quad") {

TEST_CASE("Gauss-Legendre integrates polynomials of degree 2n-1 exactly")
{
    for (int n : {1, 2, 5, 16, 64}) {
        const GaussLegendreRule r = gauss_legendre(n);
        for (int deg = 0; deg <= 2 * n - 1; ++deg) {
            double s = 0.0;
            for (int i = 0; i < n; ++i) {
                s += r.weights[i] * std::pow(r.nodes[i], deg);
            }
            const double want = deg % 2 ? 0.0 : 2.0 / (deg + 1);
            CHECK(std::abs(s - want) <= 1e-13);
        }
        CHECK(std::is_sorted(r.nodes.begin(), r.nodes.end()));
    }
    const GaussLegendreRule m = gauss_legendre(8, 1.0, 3.0);
    double s = 0.0;
    for (int i = 0; i < 8; ++i) {
        s += m.weights[i] * m.nodes[i] * m.nodes[i];
    }
    CHECK(s == doctest::Approx(26.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("periodic trapezoid")
{
    CHECK(periodic_trapezoid([](double) { return 3.0; }, 5) == doctest::Approx(6.0 * kPi).epsilon(1e-15));
    const double c2 = periodic_trapezoid([](double p) { return std::cos(p) * std::cos(p); }, 64);
    CHECK(std::abs(c2 - kPi) <= 1e-12);
    const QuadratureResult r = integrate_periodic([](double p) { return std::exp(std::cos(p)); }, 16);
    // 2 pi I0(1)
    CHECK(r.value == doctest::Approx(kTwoPi * 1.2660658777520082).epsilon(1e-14));
    CHECK(r.error < 1e-12);
    CHECK_THROWS_AS(periodic_trapezoid([](double p) { return p > 3.0 ? NAN : 1.0; }, 8), NonFiniteSample);
}

TEST_CASE("annulus area")
{
    const QuadratureSpec spec{8, 8, 1e-12, 1};
    const QuadratureResult r = integrate_annulus([](double, double) { return 1.0; }, 0.5, 2.0, spec);
    CHECK(r.value == doctest::Approx(kPi * (4.0 - 0.25)).epsilon(1e-10));
    CHECK(r.converged);
}

TEST_CASE("Gaussian annulus against its radial closed form")
{
    const double k = 0.05, w = 0.0007;
    auto f = [&](double r, double) {
        const double u = (r - k) / w;
        return std::exp(-u * u);
    };
    const QuadratureResult r = integrate_annulus(f, k - 6 * w, k + 6 * w, QuadratureSpec{16, 16, 1e-6, 3});
    // int r exp(-(r-k)^2/w^2) dr over the window = k w sqrt(pi) erf(6) (odd part cancels)
    const double want = kTwoPi * k * w * std::sqrt(kPi) * std::erf(6.0);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(want).epsilon(1e-6));
}

TEST_CASE("discontinuous integrand reports its doubling status")
{
    auto f = [](double r, double) { return r < 1.3 ? 1.0 : 0.0; };
    const QuadratureResult tight = integrate_annulus(f, 1.0, 2.0, QuadratureSpec{8, 8, 1e-9, 2});
    CHECK_FALSE(tight.converged);
    CHECK(tight.doublings == 2);
    CHECK(tight.error > 0.0);
    const QuadratureResult loose = integrate_annulus(f, 1.0, 2.0, QuadratureSpec{8, 8, 0.2, 2});
    CHECK(loose.converged);
}

TEST_CASE("specs need at least eight points")
{
    CHECK_THROWS_AS((QuadratureSpec{4, 16, 1e-2, 1}.validate()), DomainError);
    CHECK_THROWS_AS((QuadratureSpec{16, 16, 0.0, 1}.validate()), DomainError);
    CHECK_NOTHROW(QuadratureSpec{}.validate());
    CHECK(QuadratureSpec{}.doubled().radial_points == 256);
}

TEST_CASE("compensated summation")
{
    CompensatedSum s;
    s.add(1.0);
    for (int i = 0; i < 1000; ++i) {
        s.add(1e-16);
    }
    s.add(-1.0);
    CHECK(s.value() == doctest::Approx(1e-13).epsilon(1e-10));
}

TEST_CASE("parallel map is independent of the worker count")
{
    auto fn = [](std::size_t i) {
        CompensatedSum s;
        for (std::size_t k = 1; k <= 200 + i % 17; ++k) {
            s.add(std::sin(static_cast<double>(i * k)) / k);
        }
        return s.value();
    };
    const auto one = parallel_cell_map(1000, 1, fn);
    for (unsigned w : {2u, 3u, 8u}) {
        const auto many = parallel_cell_map(1000, w, fn);
        for (std::size_t i = 0; i < one.size(); ++i) {
            CHECK(one[i].value == many[i].value);
        }
    }
}

TEST_CASE("a failing cell does not stop the map")
{
    const auto out = parallel_cell_map(100, 4, [](std::size_t i) -> double {
        if (i == 42) {
            throw DomainError("bad cell");
        }
        return static_cast<double>(i);
    });
    for (std::size_t i = 0; i < out.size(); ++i) {
        CHECK(out[i].ok == (i != 42));
    }
    CHECK(out[42].error == "bad cell");
    CHECK(out[99].value == 99.0);
}

}
