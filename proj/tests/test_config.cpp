#include <doctest.h>

#include <fstream>
#include <sstream>

#include "spdc/config.hpp"
#include "spdc/errors.hpp"

using namespace spdc;

namespace {

const char* kMinimal = R"(crystal.sellmeier_o = 2.7359, 0.01878, 0.01822, 0.01354
crystal.sellmeier_e = 2.3753, 0.01224, 0.01667, 0.01516
crystal.axis_polar = 29.3 deg
crystal.length = 2 mm
pump.wavelength = 406.8 nm
pump.cone_radius = 0.05 1/um
pump.width = 0.0007 1/um
)";

int error_line(const std::string& text)
{
    try {
        parse_config(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return -1;
}

std::string error_text(const std::string& text)
{
    try {
        parse_config(text);
    } catch (const ParseError& e) {
        return e.what();
    }
    return {};
}

}

TEST_SUITE("config") {

TEST_CASE("reference configuration")
{
    const RunConfig c = parse_config(reference_config_text());
    CHECK(c.crystal.axis_polar == doctest::Approx(29.3 * kPi / 180.0).epsilon(1e-15));
    CHECK(c.crystal.axis_azimuth == doctest::Approx(-kPi / 2).epsilon(1e-15));
    CHECK(c.crystal.length_um == 1000.0);
    CHECK(c.pump.wavelength_nm == doctest::Approx(406.8).epsilon(1e-15));
    CHECK(c.pump.cone_radius == 0.05);
    CHECK(c.pump.width == 0.0007);
    CHECK(c.pm.envelope == Envelope::sinc);
    CHECK(c.grid == GridSpec{256, 256, -0.7, 0.7, -0.7, 0.7});
    CHECK_FALSE(c.cas.idler);
    CHECK_FALSE(c.oam.theta);
    CHECK(c.oam.ell_min == -5);
    CHECK(c.oam.ell_max == 5);
    CHECK(c.sweep.empty());
}

TEST_CASE("shipped reference file matches the embedded text")
{
    std::ifstream in(std::string(SPDC_SOURCE_DIR) + "/data/bbo-reference.conf");
    REQUIRE(in);
    std::ostringstream s;
    s << in.rdbuf();
    CHECK(s.str() == reference_config_text());
    CHECK(load_config(std::string(SPDC_SOURCE_DIR) + "/data/bbo-reference.conf") ==
          parse_config(reference_config_text()));
    CHECK_THROWS_AS(load_config("/nonexistent/spdc.conf"), IoError);
}

TEST_CASE("units are converted")
{
    const RunConfig c = parse_config(kMinimal);
    CHECK(c.crystal.length_um == 2000.0);
    CHECK(parse_config_with(kMinimal, "crystal.length", "1500 um").crystal.length_um == 1500.0);
    CHECK(parse_config_with(kMinimal, "crystal.length", "1500 \xC2\xB5m").crystal.length_um == 1500.0);
    CHECK(parse_config_with(kMinimal, "pump.width", "0.7 1/mm").pump.width == doctest::Approx(0.0007));
    CHECK(parse_config_with(kMinimal, "pump.wavelength", "0.4068 um").pump.wavelength_nm ==
          doctest::Approx(406.8).epsilon(1e-14));
    CHECK(parse_config_with(kMinimal, "crystal.axis_polar", "0.5 rad").crystal.axis_polar == 0.5);
}

TEST_CASE("malformed input is reported with its line")
{
    const std::string base = kMinimal;
    CHECK(error_line(base + "crystal.d22 = 2 mm\n") == 8);
    CHECK(error_text(base + "crystal.d22 = 2 mm\n").find("unit mismatch") != std::string::npos);
    CHECK(error_text(base + "grid.kx_min = 0.1 furlong\n").find("unknown unit") != std::string::npos);
    CHECK(error_line(base + "\n# comment\npump.color = red\n") == 10);
    CHECK(error_text(base + "pump.color = red\n").find("unknown key") != std::string::npos);
    CHECK(error_line(base + "pump.width = 0.001 1/um\n") == 8);
    CHECK(error_text(base + "pump.width = 0.001 1/um\n").find("duplicate") != std::string::npos);
    CHECK(error_line(base + "just words\n") == 8);
    CHECK(error_line(base + "grid.nx = 12.5\n") == 8);
    CHECK(error_line(base + "grid.nx =\n") == 8);
    CHECK(error_line("pump.width = 0.0007 1/um\n") == 0);
    CHECK(error_text("pump.width = 0.0007 1/um\n").find("missing required key") != std::string::npos);
    CHECK(error_text(base + "cas.idler_kx = 0.1 1/um\n").find("together") != std::string::npos);
    CHECK(error_text(base + "quad.radial_points = 4\n") != "");
}

TEST_CASE("serialization round trip")
{
    RunConfig c = parse_config(reference_config_text());
    CHECK(parse_config(serialize_config(c)) == c);
    c = parse_config(std::string(kMinimal) + "cas.idler_kx = 0.027 1/um\ncas.idler_ky = -0.485 1/um\n");
    REQUIRE(c.cas.idler);
    c.oam.theta = 0.1;
    c.oam.entrance_phase = true;
    c.pm.envelope = Envelope::gaussian;
    c.crystal.length_um = 1234.5678901234567;
    CHECK(parse_config(serialize_config(c)) == c);
}

TEST_CASE("sweep axes")
{
    const RunConfig c = parse_config(std::string(kMinimal) +
                                     "sweep.command = as\n"
                                     "sweep.vary = pump.cone_radius: 0.05, 0.09, 0.15 1/um\n"
                                     "sweep.vary = crystal.length: 1, 2 mm\n");
    REQUIRE(c.sweep.size() == 2);
    CHECK(c.sweep[0].key == "pump.cone_radius");
    CHECK(c.sweep[0].values == std::vector<std::string>{"0.05 1/um", "0.09 1/um", "0.15 1/um"});
    CHECK(c.sweep[1].values == std::vector<std::string>{"1 mm", "2 mm"});
    CHECK(parse_config(serialize_config(c)) == c);
    CHECK(error_text(std::string(kMinimal) + "sweep.vary = pump.colour: 1, 2\n").find("unknown") !=
          std::string::npos);
    CHECK(error_line(std::string(kMinimal) + "sweep.command = dance\n") == 8);
}

}
