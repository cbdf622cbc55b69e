#include "spdc/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "spdc/errors.hpp"

namespace spdc {

bool OamSettings::operator==(const OamSettings& o) const
{
    return pump_kappa == o.pump_kappa && signal_kappa == o.signal_kappa && idler_kappa == o.idler_kappa && width == o.width && theta == o.theta &&
           signal_phi == o.signal_phi && idler_phi == o.idler_phi && ell_min == o.ell_min && ell_max == o.ell_max &&
           quad.radial_points == o.quad.radial_points && quad.azimuthal_points == o.quad.azimuthal_points &&
           quad.rel_tol == o.quad.rel_tol && quad.check == o.quad.check && entrance_phase == o.entrance_phase;
}

bool operator==(const RunConfig& a, const RunConfig& b)
{
    const auto& ca = a.crystal;
    const auto& cb = b.crystal;
    return a.name == b.name && ca.ordinary == cb.ordinary && ca.extraordinary == cb.extraordinary &&
           ca.axis_polar == cb.axis_polar && ca.axis_azimuth == cb.axis_azimuth && ca.length_um == cb.length_um &&
           ca.d22_pm_per_v == cb.d22_pm_per_v && a.pump.wavelength_nm == b.pump.wavelength_nm &&
           a.pump.cone_radius == b.pump.cone_radius && a.pump.width == b.pump.width &&
           a.pump.oam_index == b.pump.oam_index && a.pump.amplitude == b.pump.amplitude &&
           a.pm.envelope == b.pm.envelope && a.pm.gamma == b.pm.gamma && a.grid == b.grid && a.quad == b.quad &&
           a.cas == b.cas && a.oam == b.oam && a.sweep_command == b.sweep_command && a.sweep == b.sweep;
}

void RunConfig::validate() const
{
    crystal.validate();
    pump.validate();
    grid.validate();
    quad.validate();
    derived_indices(crystal, pump.wavelength_nm);
    if (!(pm.gamma > 0.0)) {
        throw DomainError("phase_match.gamma must be positive");
    }
    if (cas.cells < 1 || cas.half_extent < 0.0) {
        throw DomainError("cas: cells must be positive and half_extent non-negative");
    }
    if (oam.ell_min > oam.ell_max) {
        throw DomainError("oam: ell_min exceeds ell_max");
    }
    if (!(oam.pump_kappa >= 0.0) || !(oam.signal_kappa >= 0.0) || !(oam.idler_kappa >= 0.0) || !(oam.width >= 0.0)) {
        throw DomainError("oam: radii and width must be non-negative");
    }
    if (oam.quad.radial_points < 1 || oam.quad.azimuthal_points < 1 || !(oam.quad.rel_tol > 0.0)) {
        throw DomainError("oam: invalid quadrature settings");
    }
}

namespace {

enum class Dim { text, integer, number, list, length, wavenumber, angle, nonlinear, boolean };

const std::map<std::string, Dim>& key_table()
{
    static const std::map<std::string, Dim> table = {
        {"run.name", Dim::text},
        {"crystal.sellmeier_o", Dim::list},
        {"crystal.sellmeier_e", Dim::list},
        {"crystal.axis_polar", Dim::angle},
        {"crystal.axis_azimuth", Dim::angle},
        {"crystal.length", Dim::length},
        {"crystal.d22", Dim::nonlinear},
        {"pump.wavelength", Dim::length},
        {"pump.cone_radius", Dim::wavenumber},
        {"pump.width", Dim::wavenumber},
        {"pump.oam", Dim::integer},
        {"pump.amplitude", Dim::number},
        {"phase_match.envelope", Dim::text},
        {"phase_match.gamma", Dim::number},
        {"grid.nx", Dim::integer},
        {"grid.ny", Dim::integer},
        {"grid.kx_min", Dim::wavenumber},
        {"grid.kx_max", Dim::wavenumber},
        {"grid.ky_min", Dim::wavenumber},
        {"grid.ky_max", Dim::wavenumber},
        {"quad.radial_points", Dim::integer},
        {"quad.azimuthal_points", Dim::integer},
        {"quad.rel_tol", Dim::number},
        {"quad.max_doublings", Dim::integer},
        {"cas.idler_kx", Dim::wavenumber},
        {"cas.idler_ky", Dim::wavenumber},
        {"cas.cells", Dim::integer},
        {"cas.half_extent", Dim::wavenumber},
        {"oam.pump_kappa", Dim::wavenumber},
        {"oam.signal_kappa", Dim::wavenumber},
        {"oam.idler_kappa", Dim::wavenumber},
        {"oam.width", Dim::wavenumber},
        {"oam.theta", Dim::angle},
        {"oam.signal_phi", Dim::angle},
        {"oam.idler_phi", Dim::angle},
        {"oam.ell_min", Dim::integer},
        {"oam.ell_max", Dim::integer},
        {"oam.radial_points", Dim::integer},
        {"oam.azimuthal_points", Dim::integer},
        {"oam.rel_tol", Dim::number},
        {"oam.check", Dim::boolean},
        {"oam.entrance_phase", Dim::boolean},
        {"sweep.command", Dim::text},
        {"sweep.vary", Dim::text},
    };
    return table;
}

const std::set<std::string>& required_keys()
{
    static const std::set<std::string> keys = {"crystal.sellmeier_o", "crystal.sellmeier_e", "crystal.axis_polar",
                                               "crystal.length",      "pump.wavelength",     "pump.cone_radius",
                                               "pump.width"};
    return keys;
}

struct UnitInfo {
    Dim dim;
    double factor;   // to um, 1/um, rad or pm/V
};

const std::map<std::string, UnitInfo>& unit_table()
{
    static const std::map<std::string, UnitInfo> units = {
        {"nm", {Dim::length, 1e-3}},
        {"um", {Dim::length, 1.0}},
        {"\xC2\xB5m", {Dim::length, 1.0}},
        {"\xCE\xBCm", {Dim::length, 1.0}},
        {"mm", {Dim::length, 1e3}},
        {"1/um", {Dim::wavenumber, 1.0}},
        {"um^-1", {Dim::wavenumber, 1.0}},
        {"1/\xC2\xB5m", {Dim::wavenumber, 1.0}},
        {"\xC2\xB5m^-1", {Dim::wavenumber, 1.0}},
        {"\xC2\xB5m\xE2\x81\xBB\xC2\xB9", {Dim::wavenumber, 1.0}},
        {"1/\xCE\xBCm", {Dim::wavenumber, 1.0}},
        {"\xCE\xBCm\xE2\x81\xBB\xC2\xB9", {Dim::wavenumber, 1.0}},
        {"1/nm", {Dim::wavenumber, 1e3}},
        {"1/mm", {Dim::wavenumber, 1e-3}},
        {"rad", {Dim::angle, 1.0}},
        {"deg", {Dim::angle, kPi / 180.0}},
        {"pm/V", {Dim::nonlinear, 1.0}},
    };
    return units;
}

const char* dim_name(Dim d)
{
    switch (d) {
    case Dim::length: return "a length";
    case Dim::wavenumber: return "a wavenumber";
    case Dim::angle: return "an angle";
    case Dim::nonlinear: return "a nonlinear coefficient";
    default: return "dimensionless";
    }
}

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

struct Entry {
    std::string key;
    std::string rhs;
    int line = 0;
};

bool valid_key(const std::string& key)
{
    const auto dot = key.find('.');
    if (dot == std::string::npos || dot == 0 || dot + 1 == key.size() || key.find('.', dot + 1) != std::string::npos) {
        return false;
    }
    for (char c : key) {
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.')) {
            return false;
        }
    }
    return true;
}

// Key of a config line, or empty for blank and comment lines.
std::string line_key(const std::string& raw, int line, std::string* rhs)
{
    std::string s = raw;
    const auto hash = s.find('#');
    if (hash != std::string::npos) {
        s.erase(hash);
    }
    s = trim(s);
    if (s.empty()) {
        return {};
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) {
        throw ParseError(line, "expected 'section.key = value'");
    }
    const std::string key = trim(s.substr(0, eq));
    if (!valid_key(key)) {
        throw ParseError(line, "malformed key '" + key + "', expected exactly one dotted level");
    }
    if (rhs != nullptr) {
        *rhs = trim(s.substr(eq + 1));
        if (rhs->empty()) {
            throw ParseError(line, "missing value for '" + key + "'");
        }
    }
    return key;
}

std::vector<Entry> tokenize(const std::string& text)
{
    std::vector<Entry> out;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string rhs;
        const std::string key = line_key(raw, line, &rhs);
        if (!key.empty()) {
            out.push_back({key, rhs, line});
        }
    }
    return out;
}

double parse_number(const std::string& s, int line)
{
    double v = 0.0;
    const char* b = s.data();
    const char* e = s.data() + s.size();
    if (!s.empty() && *b == '+') {
        ++b;
    }
    const auto r = std::from_chars(b, e, v);
    if (r.ec != std::errc() || r.ptr != e || !std::isfinite(v)) {
        throw ParseError(line, "invalid number '" + s + "'");
    }
    return v;
}

long parse_integer(const std::string& s, int line)
{
    long v = 0;
    const char* b = s.data();
    const char* e = s.data() + s.size();
    if (!s.empty() && *b == '+') {
        ++b;
    }
    const auto r = std::from_chars(b, e, v);
    if (r.ec != std::errc() || r.ptr != e) {
        throw ParseError(line, "invalid integer '" + s + "'");
    }
    return v;
}

// Splits "value [unit]" and converts to the canonical unit of dim.
double parse_quantity(const std::string& rhs, Dim dim, int line)
{
    std::string value = rhs;
    const auto sp = rhs.find_last_of(" \t");
    if (sp != std::string::npos) {
        const std::string unit = rhs.substr(sp + 1);
        value = trim(rhs.substr(0, sp));
        const auto it = unit_table().find(unit);
        if (it == unit_table().end()) {
            throw ParseError(line, "unknown unit '" + unit + "'");
        }
        if (it->second.dim != dim) {
            throw ParseError(line, "unit mismatch: '" + unit + "' is not " + dim_name(dim));
        }
        return parse_number(value, line) * it->second.factor;
    }
    return parse_number(value, line);
}

std::vector<double> parse_list(const std::string& rhs, int line)
{
    std::vector<double> out;
    std::istringstream in(rhs);
    std::string item;
    while (std::getline(in, item, ',')) {
        out.push_back(parse_number(trim(item), line));
    }
    return out;
}

SweepAxis parse_sweep(const std::string& rhs, int line)
{
    const auto colon = rhs.find(':');
    if (colon == std::string::npos) {
        throw ParseError(line, "sweep.vary expects 'section.key: v1, v2, ... [unit]'");
    }
    SweepAxis axis;
    axis.key = trim(rhs.substr(0, colon));
    if (!key_table().count(axis.key) || axis.key.rfind("sweep.", 0) == 0) {
        throw ParseError(line, "cannot sweep unknown key '" + axis.key + "'");
    }
    std::string values = trim(rhs.substr(colon + 1));
    std::string unit;
    const auto sp = values.find_last_of(" \t");
    if (sp != std::string::npos && unit_table().count(values.substr(sp + 1))) {
        unit = values.substr(sp + 1);
        values = trim(values.substr(0, sp));
    }
    std::istringstream in(values);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (item.empty()) {
            throw ParseError(line, "empty sweep value");
        }
        axis.values.push_back(unit.empty() || item.find_first_of(" \t") != std::string::npos ? item : item + " " + unit);
    }
    if (axis.values.empty()) {
        throw ParseError(line, "sweep.vary lists no values");
    }
    return axis;
}

bool parse_bool(const std::string& s, int line)
{
    if (s == "true") return true;
    if (s == "false") return false;
    throw ParseError(line, "expected 'true' or 'false', got '" + s + "'");
}

void apply(RunConfig& cfg, const Entry& e)
{
    const Dim dim = key_table().at(e.key);
    const int ln = e.line;
    auto q = [&] { return parse_quantity(e.rhs, dim, ln); };
    auto i = [&] { return static_cast<int>(parse_integer(e.rhs, ln)); };
    auto num = [&] { return parse_number(e.rhs, ln); };
    const std::string& k = e.key;

    if (k == "run.name") cfg.name = e.rhs;
    else if (k == "crystal.sellmeier_o" || k == "crystal.sellmeier_e") {
        SellmeierCoefficients s;
        try {
            s = SellmeierCoefficients::from_list(parse_list(e.rhs, ln));
        } catch (const DomainError& err) {
            throw ParseError(ln, err.what());
        }
        (k == "crystal.sellmeier_o" ? cfg.crystal.ordinary : cfg.crystal.extraordinary) = s;
    }
    else if (k == "crystal.axis_polar") cfg.crystal.axis_polar = q();
    else if (k == "crystal.axis_azimuth") cfg.crystal.axis_azimuth = q();
    else if (k == "crystal.length") cfg.crystal.length_um = q();
    else if (k == "crystal.d22") cfg.crystal.d22_pm_per_v = q();
    else if (k == "pump.wavelength") cfg.pump.wavelength_nm = q() * 1e3;
    else if (k == "pump.cone_radius") cfg.pump.cone_radius = q();
    else if (k == "pump.width") cfg.pump.width = q();
    else if (k == "pump.oam") cfg.pump.oam_index = i();
    else if (k == "pump.amplitude") cfg.pump.amplitude = num();
    else if (k == "phase_match.envelope") {
        if (e.rhs == "sinc") cfg.pm.envelope = Envelope::sinc;
        else if (e.rhs == "gaussian") cfg.pm.envelope = Envelope::gaussian;
        else throw ParseError(ln, "envelope must be 'sinc' or 'gaussian'");
    }
    else if (k == "phase_match.gamma") cfg.pm.gamma = num();
    else if (k == "grid.nx") cfg.grid.nx = i();
    else if (k == "grid.ny") cfg.grid.ny = i();
    else if (k == "grid.kx_min") cfg.grid.kx_min = q();
    else if (k == "grid.kx_max") cfg.grid.kx_max = q();
    else if (k == "grid.ky_min") cfg.grid.ky_min = q();
    else if (k == "grid.ky_max") cfg.grid.ky_max = q();
    else if (k == "quad.radial_points") cfg.quad.radial_points = i();
    else if (k == "quad.azimuthal_points") cfg.quad.azimuthal_points = i();
    else if (k == "quad.rel_tol") cfg.quad.rel_tol = num();
    else if (k == "quad.max_doublings") cfg.quad.max_doublings = i();
    else if (k == "cas.idler_kx") cfg.cas.idler = Vec2{q(), cfg.cas.idler ? cfg.cas.idler->y : 0.0};
    else if (k == "cas.idler_ky") cfg.cas.idler = Vec2{cfg.cas.idler ? cfg.cas.idler->x : 0.0, q()};
    else if (k == "cas.cells") cfg.cas.cells = i();
    else if (k == "cas.half_extent") cfg.cas.half_extent = q();
    else if (k == "oam.pump_kappa") cfg.oam.pump_kappa = q();
    else if (k == "oam.signal_kappa") cfg.oam.signal_kappa = q();
    else if (k == "oam.idler_kappa") cfg.oam.idler_kappa = q();
    else if (k == "oam.width") cfg.oam.width = q();
    else if (k == "oam.theta") {
        if (e.rhs == "auto") cfg.oam.theta.reset();
        else cfg.oam.theta = q();
    }
    else if (k == "oam.signal_phi") cfg.oam.signal_phi = q();
    else if (k == "oam.idler_phi") cfg.oam.idler_phi = q();
    else if (k == "oam.ell_min") cfg.oam.ell_min = i();
    else if (k == "oam.ell_max") cfg.oam.ell_max = i();
    else if (k == "oam.radial_points") cfg.oam.quad.radial_points = i();
    else if (k == "oam.azimuthal_points") cfg.oam.quad.azimuthal_points = i();
    else if (k == "oam.rel_tol") cfg.oam.quad.rel_tol = num();
    else if (k == "oam.check") cfg.oam.quad.check = parse_bool(e.rhs, ln);
    else if (k == "oam.entrance_phase") cfg.oam.entrance_phase = parse_bool(e.rhs, ln);
    else if (k == "sweep.command") {
        if (e.rhs != "indices" && e.rhs != "as" && e.rhs != "cas" && e.rhs != "oam") {
            throw ParseError(ln, "sweep.command must be indices, as, cas or oam");
        }
        cfg.sweep_command = e.rhs;
    }
    else if (k == "sweep.vary") cfg.sweep.push_back(parse_sweep(e.rhs, ln));
}

std::string fmt_double(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_list(const std::vector<double>& v)
{
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out += (i ? ", " : "") + fmt_double(v[i]);
    }
    return out;
}

}  // namespace

RunConfig parse_config(const std::string& text)
{
    RunConfig cfg;
    std::set<std::string> seen;
    for (const Entry& e : tokenize(text)) {
        if (!key_table().count(e.key)) {
            throw ParseError(e.line, "unknown key '" + e.key + "'");
        }
        if (e.key != "sweep.vary" && !seen.insert(e.key).second) {
            throw ParseError(e.line, "duplicate key '" + e.key + "'");
        }
        apply(cfg, e);
    }
    for (const std::string& k : required_keys()) {
        if (!seen.count(k)) {
            throw ParseError(0, "missing required key '" + k + "'");
        }
    }
    if (cfg.cas.idler && !(seen.count("cas.idler_kx") && seen.count("cas.idler_ky"))) {
        throw ParseError(0, "cas.idler_kx and cas.idler_ky must be given together");
    }
    try {
        cfg.validate();
    } catch (const DomainError& err) {
        throw ParseError(0, err.what());
    }
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config '" + path.string() + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

RunConfig parse_config_with(const std::string& text, const std::string& key, const std::string& value)
{
    std::istringstream in(text);
    std::string raw;
    std::string out;
    bool replaced = false;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        if (!replaced && line_key(raw, line, nullptr) == key) {
            out += key + " = " + value + "\n";
            replaced = true;
            continue;
        }
        out += raw + "\n";
    }
    if (!replaced) {
        out += key + " = " + value + "\n";
    }
    return parse_config(out);
}

std::string serialize_config(const RunConfig& cfg)
{
    std::ostringstream o;
    const auto& c = cfg.crystal;
    o << "run.name = " << cfg.name << "\n";
    o << "crystal.sellmeier_o = " << fmt_list(c.ordinary.to_list()) << "\n";
    o << "crystal.sellmeier_e = " << fmt_list(c.extraordinary.to_list()) << "\n";
    o << "crystal.axis_polar = " << fmt_double(c.axis_polar) << " rad\n";
    o << "crystal.axis_azimuth = " << fmt_double(c.axis_azimuth) << " rad\n";
    o << "crystal.length = " << fmt_double(c.length_um) << " um\n";
    o << "crystal.d22 = " << fmt_double(c.d22_pm_per_v) << " pm/V\n";
    o << "pump.wavelength = " << fmt_double(cfg.pump.wavelength_nm) << " nm\n";
    o << "pump.cone_radius = " << fmt_double(cfg.pump.cone_radius) << " 1/um\n";
    o << "pump.width = " << fmt_double(cfg.pump.width) << " 1/um\n";
    o << "pump.oam = " << cfg.pump.oam_index << "\n";
    o << "pump.amplitude = " << fmt_double(cfg.pump.amplitude) << "\n";
    o << "phase_match.envelope = " << (cfg.pm.envelope == Envelope::sinc ? "sinc" : "gaussian") << "\n";
    o << "phase_match.gamma = " << fmt_double(cfg.pm.gamma) << "\n";
    o << "grid.nx = " << cfg.grid.nx << "\n";
    o << "grid.ny = " << cfg.grid.ny << "\n";
    o << "grid.kx_min = " << fmt_double(cfg.grid.kx_min) << " 1/um\n";
    o << "grid.kx_max = " << fmt_double(cfg.grid.kx_max) << " 1/um\n";
    o << "grid.ky_min = " << fmt_double(cfg.grid.ky_min) << " 1/um\n";
    o << "grid.ky_max = " << fmt_double(cfg.grid.ky_max) << " 1/um\n";
    o << "quad.radial_points = " << cfg.quad.radial_points << "\n";
    o << "quad.azimuthal_points = " << cfg.quad.azimuthal_points << "\n";
    o << "quad.rel_tol = " << fmt_double(cfg.quad.rel_tol) << "\n";
    o << "quad.max_doublings = " << cfg.quad.max_doublings << "\n";
    if (cfg.cas.idler) {
        o << "cas.idler_kx = " << fmt_double(cfg.cas.idler->x) << " 1/um\n";
        o << "cas.idler_ky = " << fmt_double(cfg.cas.idler->y) << " 1/um\n";
    }
    o << "cas.cells = " << cfg.cas.cells << "\n";
    o << "cas.half_extent = " << fmt_double(cfg.cas.half_extent) << " 1/um\n";
    o << "oam.pump_kappa = " << fmt_double(cfg.oam.pump_kappa) << " 1/um\n";
    o << "oam.signal_kappa = " << fmt_double(cfg.oam.signal_kappa) << " 1/um\n";
    o << "oam.idler_kappa = " << fmt_double(cfg.oam.idler_kappa) << " 1/um\n";
    o << "oam.width = " << fmt_double(cfg.oam.width) << " 1/um\n";
    o << "oam.theta = " << (cfg.oam.theta ? fmt_double(*cfg.oam.theta) + " rad" : std::string("auto")) << "\n";
    o << "oam.signal_phi = " << fmt_double(cfg.oam.signal_phi) << " rad\n";
    o << "oam.idler_phi = " << fmt_double(cfg.oam.idler_phi) << " rad\n";
    o << "oam.ell_min = " << cfg.oam.ell_min << "\n";
    o << "oam.ell_max = " << cfg.oam.ell_max << "\n";
    o << "oam.radial_points = " << cfg.oam.quad.radial_points << "\n";
    o << "oam.azimuthal_points = " << cfg.oam.quad.azimuthal_points << "\n";
    o << "oam.rel_tol = " << fmt_double(cfg.oam.quad.rel_tol) << "\n";
    o << "oam.check = " << (cfg.oam.quad.check ? "true" : "false") << "\n";
    o << "oam.entrance_phase = " << (cfg.oam.entrance_phase ? "true" : "false") << "\n";
    o << "sweep.command = " << cfg.sweep_command << "\n";
    for (const SweepAxis& axis : cfg.sweep) {
        o << "sweep.vary = " << axis.key << ": ";
        for (std::size_t i = 0; i < axis.values.size(); ++i) {
            o << (i ? ", " : "") << axis.values[i];
        }
        o << "\n";
    }
    return o.str();
}

std::string reference_config_text()
{
    return R"(# BBO cut for type-I degenerate SPDC, Bessel-Gauss pump
run.name = bbo-reference

crystal.sellmeier_o = 2.7359, 0.01878, 0.01822, 0.01354
crystal.sellmeier_e = 2.3753, 0.01224, 0.01667, 0.01516
crystal.axis_polar = 29.3 deg
crystal.axis_azimuth = -90 deg
crystal.length = 1 mm
crystal.d22 = 2.2 pm/V

pump.wavelength = 406.8 nm
pump.cone_radius = 0.05 1/um
pump.width = 0.0007 1/um
pump.oam = 0

phase_match.envelope = sinc
phase_match.gamma = 0.4393

grid.nx = 256
grid.ny = 256
grid.kx_min = -0.7 1/um
grid.kx_max = 0.7 1/um
grid.ky_min = -0.7 1/um
grid.ky_max = 0.7 1/um

quad.radial_points = 128
quad.azimuthal_points = 256
quad.rel_tol = 0.01
quad.max_doublings = 2

cas.cells = 256

oam.pump_kappa = 0.01 1/um
oam.signal_kappa = 0.0001 1/um
oam.idler_kappa = 0.01 1/um
oam.width = 0.0005 1/um
oam.theta = auto
oam.signal_phi = -90 deg
oam.idler_phi = 90 deg
oam.ell_min = -5
oam.ell_max = 5
)";
}

}  // namespace spdc
