#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "spdc/errors.hpp"
#include "spdc/grid_io.hpp"

using namespace spdc;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / "spdc-test-io";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

SpectrumGrid ramp(int nx, int ny)
{
    SpectrumGrid g;
    g.grid = {nx, ny, -0.3, 0.5, -0.7, 0.1};
    for (std::size_t i = 0; i < g.grid.cells(); ++i) {
        g.values.push_back(std::sqrt(static_cast<double>(i)) / 3.0);
    }
    g.status.assign(g.grid.cells(), CellStatus::ok);
    return g;
}

// P5 payload after the three header lines
std::string pixels(const std::string& pgm)
{
    std::size_t pos = 0;
    for (int n = 0; n < 3; ++n) {
        pos = pgm.find('\n', pos) + 1;
    }
    return pgm.substr(pos);
}

}

TEST_SUITE("io") {

TEST_CASE("grid round trip is bitwise")
{
    const SpectrumGrid g = ramp(7, 5);
    write_grid(g, scratch("ramp.kgrid"));
    const SpectrumGrid r = read_grid(scratch("ramp.kgrid"));
    CHECK(r.grid == g.grid);
    REQUIRE(r.values.size() == g.values.size());
    CHECK(std::memcmp(r.values.data(), g.values.data(), g.values.size() * sizeof(double)) == 0);
    CHECK(slurp(scratch("ramp.kgrid")).rfind("KGRID1\n", 0) == 0);
}

TEST_CASE("damaged grid files are rejected")
{
    write_grid(ramp(4, 4), scratch("cut.kgrid"));
    std::string bytes = slurp(scratch("cut.kgrid"));
    {
        std::ofstream out(scratch("cut.kgrid"), std::ios::binary | std::ios::trunc);
        out << bytes.substr(0, bytes.size() - 12);
    }
    try {
        read_grid(scratch("cut.kgrid"));
        FAIL("truncated grid accepted");
    } catch (const IoError& e) {
        CHECK(std::string(e.what()).find("16") != std::string::npos);
    }
    {
        std::ofstream out(scratch("junk.kgrid"), std::ios::binary | std::ios::trunc);
        out << "KGRID2\n";
    }
    CHECK_THROWS_AS(read_grid(scratch("junk.kgrid")), IoError);
    CHECK_THROWS_AS(read_grid(scratch("missing.kgrid")), IoError);
}

TEST_CASE("matrix round trip is bitwise")
{
    AmplitudeMatrix f;
    f.signal = {-2, 1};
    f.idler = {-3, 3};
    for (int k = 0; k < f.signal.size() * f.idler.size(); ++k) {
        f.values.emplace_back(std::sin(k + 0.1), std::cos(3.0 * k) / 7.0);
    }
    write_matrix(f, scratch("f.koam"));
    const AmplitudeMatrix r = read_matrix(scratch("f.koam"));
    CHECK(r.signal.min == -2);
    CHECK(r.signal.max == 1);
    CHECK(r.idler.min == -3);
    CHECK(r.idler.max == 3);
    REQUIRE(r.values.size() == f.values.size());
    CHECK(std::memcmp(r.values.data(), f.values.data(), f.values.size() * sizeof(f.values[0])) == 0);
    CHECK(r.at(-2, 3) == f.at(-2, 3));
}

TEST_CASE("heatmaps")
{
    SpectrumGrid g = ramp(3, 2);
    std::fill(g.values.begin(), g.values.end(), 4.5);
    CHECK(write_heatmap(g, scratch("flat.pgm"), HeatmapScale::linear));
    const std::string flat = slurp(scratch("flat.pgm"));
    CHECK(flat.rfind("P5\n3 2\n255\n", 0) == 0);
    CHECK(pixels(flat) == std::string(6, '\xff'));

    std::fill(g.values.begin(), g.values.end(), 0.0);
    CHECK_FALSE(write_heatmap(g, scratch("zero.pgm"), HeatmapScale::log));
    CHECK(pixels(slurp(scratch("zero.pgm"))) == std::string(6, '\0'));

    g.values = {1.0, 1e-3, 1e-6, 1e-9, 0.5, 0.0};
    write_heatmap(g, scratch("log.pgm"), HeatmapScale::log);
    const std::string p = pixels(slurp(scratch("log.pgm")));
    CHECK(static_cast<unsigned char>(p[0]) == 255);
    CHECK(static_cast<unsigned char>(p[1]) == doctest::Approx(128).epsilon(0.01));
    CHECK(static_cast<unsigned char>(p[2]) == 0);
    CHECK(static_cast<unsigned char>(p[3]) == 0);
    CHECK(static_cast<unsigned char>(p[5]) == 0);

    g.values[4] = -1.0;
    CHECK_THROWS(write_heatmap(g, scratch("neg.pgm"), HeatmapScale::linear));
}

TEST_CASE("marginals table")
{
    Marginals m;
    m.signal = {-1, 0};
    m.idler = {2, 2};
    m.signal_probs = {0.25, 0.75};
    m.idler_probs = {1.0};
    write_marginals_csv(m, scratch("m.csv"));
    const std::string csv = slurp(scratch("m.csv"));
    CHECK(csv.rfind("side,ell,probability\n", 0) == 0);
    CHECK(csv.find("signal,-1,0.25") != std::string::npos);
    CHECK(csv.find("signal,0,0.75") != std::string::npos);
    CHECK(csv.find("idler,2,1") != std::string::npos);
}

}
