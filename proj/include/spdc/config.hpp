#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "spdc/oam.hpp"
#include "spdc/spectra.hpp"

namespace spdc {

struct CasSettings {
    std::optional<Vec2> idler;   // unset: take the angular-spectrum maximum
    int cells = 256;
    double half_extent = 0.0;    // 0: cone radius plus ten widths
    bool operator==(const CasSettings&) const = default;
};

struct OamSettings {
    double pump_kappa = 0.01;   // pump annulus for the OAM runs; width is shared
    double signal_kappa = 1e-4;
    double idler_kappa = 0.01;
    double width = 0.0005;
    std::optional<double> theta;  // unset: emission cone tilt
    double signal_phi = -kPi / 2.0;
    double idler_phi = kPi / 2.0;
    int ell_min = -5;
    int ell_max = 5;
    OamQuadrature quad;
    bool entrance_phase = false;
    bool operator==(const OamSettings& o) const;
};

struct SweepAxis {
    std::string key;
    std::vector<std::string> values;   // each with its unit, ready to parse
    bool operator==(const SweepAxis&) const = default;
};

struct RunConfig {
    std::string name = "run";
    CrystalConfig crystal;
    PumpBeam pump;
    PhaseMatchSpec pm;
    GridSpec grid;
    QuadratureSpec quad;
    CasSettings cas;
    OamSettings oam;
    std::string sweep_command = "as";
    std::vector<SweepAxis> sweep;

    void validate() const;
};

bool operator==(const RunConfig& a, const RunConfig& b);

// Lines of the form "section.key = value [unit]"; '#' starts a comment.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);
std::string serialize_config(const RunConfig& cfg);

// Replaces or appends one key before parsing.
RunConfig parse_config_with(const std::string& text, const std::string& key, const std::string& value);

std::string reference_config_text();

}  // namespace spdc
