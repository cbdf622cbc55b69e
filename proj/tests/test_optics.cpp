#include <doctest.h>

#include <random>

#include "spdc/errors.hpp"
#include "spdc/optics.hpp"
#include "support.hpp"

using namespace spdc;

TEST_SUITE("optics") {

TEST_CASE("BBO ordinary index at the pump and emitted wavelengths")
{
    const CrystalConfig c = testing::bbo();
    CHECK(sellmeier_index(c.ordinary, 0.4068) == doctest::Approx(1.693).epsilon(1e-3));
    CHECK(sellmeier_index(c.ordinary, 0.8136) == doctest::Approx(1.661).epsilon(1e-3));
    CHECK(sellmeier_index(c.extraordinary, 0.4068) < sellmeier_index(c.ordinary, 0.4068));
}

TEST_CASE("constant index set is dispersionless")
{
    const SellmeierCoefficients s = SellmeierCoefficients::from_list({2.25});
    for (double l : {0.3, 0.5, 1.2}) {
        CHECK(sellmeier_index(s, l) == 1.5);
    }
    CHECK(s.to_list().size() == 1);
    CHECK_THROWS_AS(SellmeierCoefficients::from_list({1.0, 2.0}), DomainError);
}

TEST_CASE("Sellmeier outside its window is a domain error")
{
    const CrystalConfig c = testing::bbo();
    CHECK_THROWS_AS(sellmeier_index(c.ordinary, 0.25), DomainError);
    CHECK_THROWS_AS(sellmeier_index(c.ordinary, 1.3), DomainError);
    // a 650 nm pump puts the emitted photons at 1.3 um
    CHECK_THROWS_AS(derived_indices(c, 650.0), DomainError);
}

TEST_CASE("derived indices follow their defining formulas")
{
    const CrystalConfig c = testing::bbo();
    const DerivedIndices idx = derived_indices(c, 406.8);
    const double no = std::sqrt(2.7359 + 0.01878 / (0.4068 * 0.4068 - 0.01822) - 0.01354 * 0.4068 * 0.4068);
    const double ne = std::sqrt(2.3753 + 0.01224 / (0.4068 * 0.4068 - 0.01667) - 0.01516 * 0.4068 * 0.4068);
    const double az = std::cos(29.3 * kPi / 180.0);
    const double ep = no * no, el = ne * ne, de = el - ep;
    CHECK(idx.n_o_pump == doctest::Approx(no).epsilon(1e-14));
    CHECK(idx.n_e_pump == doctest::Approx(ne).epsilon(1e-14));
    CHECK(idx.n_eff * idx.n_eff == doctest::Approx(ep * el / (ep + de * az * az)).epsilon(1e-12));
    CHECK(idx.beta == doctest::Approx(de * az / (ep + de * az * az)).epsilon(1e-12));
    CHECK(idx.eta == doctest::Approx(1.0 / (ep + de * az * az)).epsilon(1e-12));
    CHECK(idx.n_o == doctest::Approx(1.660154).epsilon(1e-6));
    CHECK(idx.k0 == doctest::Approx(2.0 * kPi / 0.4068).epsilon(1e-14));
    // negative uniaxial
    CHECK(idx.n_eff < idx.n_o_pump);
    CHECK(idx.beta < 0.0);
}

TEST_CASE("walk-off of the reference cut")
{
    const DerivedIndices idx = derived_indices(testing::bbo(), 406.8);
    CHECK(std::abs(idx.beta * idx.axis.y) == doctest::Approx(0.068).epsilon(0.005 / 0.068));
}

TEST_CASE("isotropic medium has no walk-off")
{
    CrystalConfig c = testing::bbo();
    c.extraordinary = c.ordinary;
    const DerivedIndices idx = derived_indices(c, 406.8);
    CHECK(idx.n_eff == doctest::Approx(idx.n_o_pump).epsilon(1e-14));
    CHECK(idx.beta == 0.0);
    CHECK(idx.eta == doctest::Approx(1.0 / idx.eps_perp).epsilon(1e-14));
}

TEST_CASE("axis along z gives n_eff = n_o of the pump")
{
    CrystalConfig c = testing::bbo();
    c.axis_polar = 0.0;
    const DerivedIndices idx = derived_indices(c, 406.8);
    CHECK(idx.beta * norm(idx.axis.perp()) == 0.0);
    CHECK(idx.n_eff == doctest::Approx(idx.n_o_pump).epsilon(1e-14));
}

TEST_CASE("optical axis is a unit vector in the y-z plane by default")
{
    CrystalConfig c = testing::bbo();
    c.axis_azimuth = kPi / 2.0;
    const Vec3 a = c.optical_axis();
    CHECK(norm(a) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(a.x) < 1e-15);
    CHECK(a.y == doctest::Approx(std::sin(c.axis_polar)));
}

TEST_CASE("ordinary dispersion")
{
    const DerivedIndices idx = derived_indices(testing::bbo(), 406.8);
    const double shell = idx.n_o * 2.0 * kPi / 0.4068 / 2.0;
    CHECK(ordinary_kz(0.0, idx) == doctest::Approx(shell).epsilon(1e-14));
    CHECK(ordinary_kz(0.49, idx) == doctest::Approx(std::sqrt(shell * shell - 0.49 * 0.49)).epsilon(1e-14));
    CHECK(ordinary_kz(idx.shell(), idx) == 0.0);
    CHECK_THROWS_AS(ordinary_kz(idx.shell() * 1.001, idx), DomainError);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const double kp = u(rng) * idx.shell();
        const double kz = ordinary_kz(kp, idx);
        CHECK(std::sqrt(kp * kp + kz * kz) / (0.5 * idx.k0) == doctest::Approx(idx.n_o).epsilon(1e-12));
    }
}

TEST_CASE("extraordinary dispersion")
{
    const DerivedIndices idx = derived_indices(testing::bbo(), 406.8);
    CHECK(extraordinary_kz({0.0, 0.0}, idx) == doctest::Approx(idx.n_eff * idx.k0).epsilon(1e-12));
    // along x there is no walk-off term
    const double kx = 0.3;
    CHECK(extraordinary_kz({kx, 0.0}, idx) ==
          doctest::Approx(idx.n_eff * idx.k0 * std::sqrt(1.0 - kx * kx * idx.eta / (idx.k0 * idx.k0))).epsilon(1e-14));
    const double ky = 0.05;
    const double want = -idx.beta * idx.axis.y * ky + idx.n_eff * idx.k0 * std::sqrt(1.0 - ky * ky * idx.eta / (idx.k0 * idx.k0));
    CHECK(extraordinary_kz({0.0, ky}, idx) == doctest::Approx(want).epsilon(1e-14));
    CHECK_THROWS_AS(extraordinary_kz({1e3, 0.0}, idx), DomainError);
}

TEST_CASE("isotropic limit of the extraordinary branch")
{
    CrystalConfig c = testing::bbo();
    c.extraordinary = c.ordinary;
    const DerivedIndices idx = derived_indices(c, 406.8);
    for (double k : {0.0, 0.1, 0.5, 2.0}) {
        const double want = std::sqrt(idx.eps_perp * idx.k0 * idx.k0 - k * k);
        CHECK(std::abs(extraordinary_kz({k * 0.6, k * 0.8}, idx) - want) <= 1e-10 * want);
    }
}

TEST_CASE("polarization vectors")
{
    const Vec3 z{0, 0, 1}, y{0, 1, 0};
    const auto o = polarization_vector(z, y, Polarization::ordinary, 2.8, 15.0);
    CHECK_FALSE(o.degenerate);
    CHECK(o.vector.x == doctest::Approx(1.0));
    CHECK(o.vector.y == 0.0);
    CHECK(polarization_vector(y * 3.0, y, Polarization::ordinary, 2.8, 15.0).degenerate);
    const auto e = polarization_vector({1, 0, 0}, y, Polarization::extraordinary, 2.8, 15.0);
    CHECK(e.vector == y);

    const DerivedIndices idx = derived_indices(testing::bbo(), 406.8);
    std::mt19937_64 rng(3);
    std::normal_distribution<double> n;
    for (int i = 0; i < 100; ++i) {
        const Vec3 k{n(rng), n(rng), 10.0 + n(rng)};
        const Vec3 v = polarization_vector(k, idx.axis, Polarization::ordinary, idx.eps_perp, idx.k0).vector;
        CHECK(std::abs(dot(v, idx.axis)) <= 1e-12 * norm(v));
        CHECK(std::abs(dot(v, k)) <= 1e-12 * norm(v) * norm(k));
    }
}

TEST_CASE("nonlinear contraction")
{
    const DerivedIndices idx = derived_indices(testing::bbo(), 406.8);
    const Vec3 kp{0.01, -0.02, idx.k0 * idx.n_eff};
    const Vec3 ks{0.3, -0.2, std::sqrt(idx.shell() * idx.shell() - 0.13)};
    const Vec3 ki{-0.29, 0.18, std::sqrt(idx.shell() * idx.shell() - 0.29 * 0.29 - 0.18 * 0.18)};
    CHECK(chi_contraction(kp, ks, ki, idx, ChiMode::effective) == 1.0);
    const double a = chi_contraction(kp, ks, ki, idx, ChiMode::vectorial);
    CHECK(a == chi_contraction(kp, ki, ks, idx, ChiMode::vectorial));
    const Vec3 kp0{0, 0, idx.k0 * idx.n_eff};
    const Vec3 k0{0, 0, idx.shell()};
    CHECK(chi_contraction(kp0, k0, k0, idx, ChiMode::vectorial) == doctest::Approx(1.0).epsilon(1e-14));
    // small transverse components move the value by O((k_perp/k_z)^2)
    const double q = 0.3 / idx.shell();
    CHECK(std::abs(a - 1.0) <= 10.0 * q);
}

}
