#include "spdc/grid_io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "spdc/errors.hpp"

namespace spdc {

static_assert(std::endian::native == std::endian::little, "binary formats assume a little-endian host");

namespace {

constexpr const char* kPayloadTag = "binary64-le row-major";
constexpr double kLogDecades = 6.0;

std::string fmt(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::ofstream open_out(const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write '" + path.string() + "'");
    }
    return out;
}

std::string read_all(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Header {
    std::vector<std::string> lines;
    std::size_t payload_offset = 0;
};

Header split_header(const std::string& data, int n, const std::filesystem::path& path)
{
    Header h;
    std::size_t pos = 0;
    for (int i = 0; i < n; ++i) {
        const auto nl = data.find('\n', pos);
        if (nl == std::string::npos) {
            throw IoError("'" + path.string() + "': truncated header");
        }
        h.lines.push_back(data.substr(pos, nl - pos));
        pos = nl + 1;
    }
    h.payload_offset = pos;
    return h;
}

template <class... T>
void parse_fields(const std::string& line, const std::filesystem::path& path, T&... out)
{
    std::istringstream in(line);
    ((in >> out), ...);
    std::string rest;
    if (in.fail() || (in >> rest)) {
        throw IoError("'" + path.string() + "': malformed header line '" + line + "'");
    }
}

void read_payload(const std::string& data, std::size_t offset, std::size_t count, double* dst,
                  const std::filesystem::path& path)
{
    const std::size_t have = data.size() - offset;
    if (have != count * sizeof(double)) {
        throw IoError("'" + path.string() + "': header declares " + std::to_string(count) + " doubles, payload holds " +
                      std::to_string(have / sizeof(double)) + (have % sizeof(double) ? " and a partial value" : ""));
    }
    std::memcpy(dst, data.data() + offset, count * sizeof(double));
}

}  // namespace

void write_grid(const SpectrumGrid& grid, const std::filesystem::path& path)
{
    const GridSpec& g = grid.grid;
    if (grid.values.size() != g.cells()) {
        throw DomainError("write_grid: value count does not match the grid");
    }
    auto out = open_out(path);
    out << "KGRID1\n" << g.nx << ' ' << g.ny << '\n';
    out << fmt(g.kx_min) << ' ' << fmt(g.kx_max) << ' ' << fmt(g.ky_min) << ' ' << fmt(g.ky_max) << '\n';
    out << kPayloadTag << '\n';
    out.write(reinterpret_cast<const char*>(grid.values.data()),
              static_cast<std::streamsize>(grid.values.size() * sizeof(double)));
    if (!out) {
        throw IoError("write failed for '" + path.string() + "'");
    }
}

SpectrumGrid read_grid(const std::filesystem::path& path)
{
    const std::string data = read_all(path);
    const Header h = split_header(data, 4, path);
    if (h.lines[0] != "KGRID1") {
        throw IoError("'" + path.string() + "': not a KGRID1 file");
    }
    SpectrumGrid out;
    GridSpec& g = out.grid;
    parse_fields(h.lines[1], path, g.nx, g.ny);
    parse_fields(h.lines[2], path, g.kx_min, g.kx_max, g.ky_min, g.ky_max);
    if (h.lines[3] != kPayloadTag) {
        throw IoError("'" + path.string() + "': unsupported payload '" + h.lines[3] + "'");
    }
    try {
        g.validate();
    } catch (const DomainError& e) {
        throw IoError("'" + path.string() + "': " + e.what());
    }
    out.values.resize(g.cells());
    read_payload(data, h.payload_offset, g.cells(), out.values.data(), path);
    out.status.assign(g.cells(), CellStatus::ok);
    return out;
}

void write_matrix(const AmplitudeMatrix& f, const std::filesystem::path& path)
{
    auto out = open_out(path);
    out << "KOAM1\n" << f.signal.min << ' ' << f.signal.max << '\n' << f.idler.min << ' ' << f.idler.max << '\n';
    out << kPayloadTag << '\n';
    out.write(reinterpret_cast<const char*>(f.values.data()),
              static_cast<std::streamsize>(f.values.size() * sizeof(std::complex<double>)));
    if (!out) {
        throw IoError("write failed for '" + path.string() + "'");
    }
}

AmplitudeMatrix read_matrix(const std::filesystem::path& path)
{
    const std::string data = read_all(path);
    const Header h = split_header(data, 4, path);
    if (h.lines[0] != "KOAM1") {
        throw IoError("'" + path.string() + "': not a KOAM1 file");
    }
    AmplitudeMatrix f;
    parse_fields(h.lines[1], path, f.signal.min, f.signal.max);
    parse_fields(h.lines[2], path, f.idler.min, f.idler.max);
    if (h.lines[3] != kPayloadTag) {
        throw IoError("'" + path.string() + "': unsupported payload '" + h.lines[3] + "'");
    }
    if (f.signal.size() < 1 || f.idler.size() < 1) {
        throw IoError("'" + path.string() + "': empty ell range");
    }
    const std::size_t n = static_cast<std::size_t>(f.signal.size()) * f.idler.size();
    f.values.resize(n);
    read_payload(data, h.payload_offset, 2 * n, reinterpret_cast<double*>(f.values.data()), path);
    f.unconverged.assign(n, 0);
    return f;
}

bool write_heatmap(const SpectrumGrid& grid, const std::filesystem::path& path, HeatmapScale scale)
{
    const GridSpec& g = grid.grid;
    double vmax = 0.0;
    for (double v : grid.values) {
        if (v < 0.0 || !std::isfinite(v)) {
            throw DomainError("write_heatmap: values must be finite and non-negative");
        }
        vmax = std::max(vmax, v);
    }
    std::vector<unsigned char> pixels(g.cells(), 0);
    if (vmax > 0.0) {
        for (std::size_t i = 0; i < pixels.size(); ++i) {
            double t = grid.values[i] / vmax;
            if (scale == HeatmapScale::log) {
                t = t > 0.0 ? std::max(0.0, 1.0 + std::log10(t) / kLogDecades) : 0.0;
            }
            pixels[i] = static_cast<unsigned char>(std::lround(255.0 * t));
        }
    }
    auto out = open_out(path);
    out << "P5\n" << g.nx << ' ' << g.ny << "\n255\n";
    out.write(reinterpret_cast<const char*>(pixels.data()), static_cast<std::streamsize>(pixels.size()));
    if (!out) {
        throw IoError("write failed for '" + path.string() + "'");
    }
    return vmax > 0.0;
}

void write_marginals_csv(const Marginals& m, const std::filesystem::path& path)
{
    auto out = open_out(path);
    out << "side,ell,probability\n";
    for (int l = m.signal.min; l <= m.signal.max; ++l) {
        out << "signal," << l << ',' << fmt(m.signal_probs[l - m.signal.min]) << '\n';
    }
    for (int l = m.idler.min; l <= m.idler.max; ++l) {
        out << "idler," << l << ',' << fmt(m.idler_probs[l - m.idler.min]) << '\n';
    }
}

}  // namespace spdc
