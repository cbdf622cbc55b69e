#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "spdc/commands.hpp"
#include "spdc/errors.hpp"

int main(int argc, char** argv)
{
    using namespace spdc;
    CLI::App app{"Type-I SPDC with Bessel-Gauss pumps: angular spectra and OAM amplitudes"};
    app.require_subcommand(1, 1);

    std::string config_path;
    std::string out_dir = ".";
    bool numeric = false, analytic = false, both = false;
    std::string scale = "linear";
    bool auto_idler = false;
    std::vector<int> criteria;
    bool print_reference = false;

    auto common = [&](CLI::App* sub, bool need_config) {
        auto* c = sub->add_option("--config", config_path, "configuration file")->check(CLI::ExistingFile);
        if (need_config) {
            c->required();
        }
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--scale", scale, "heatmap scale")->check(CLI::IsMember({"linear", "log"}));
    };
    auto maps = [&](CLI::App* sub) {
        auto* n = sub->add_flag("--numeric", numeric, "numeric maps only");
        auto* a = sub->add_flag("--analytic", analytic, "closed-form maps only");
        auto* b = sub->add_flag("--both", both, "numeric and closed-form maps (default)");
        n->excludes(a)->excludes(b);
        a->excludes(b);
    };

    auto* indices = app.add_subcommand("indices", "derived indices and cone geometry");
    common(indices, true);
    auto* as = app.add_subcommand("as", "angular spectrum");
    common(as, true);
    maps(as);
    auto* cas = app.add_subcommand("cas", "conditional angular spectrum");
    common(cas, true);
    maps(cas);
    cas->add_flag("--auto-idler", auto_idler, "condition on the angular-spectrum maximum");
    auto* oam = app.add_subcommand("oam", "OAM amplitude matrix and marginals");
    common(oam, true);
    auto* sweep = app.add_subcommand("sweep", "cartesian sweep over sweep.vary keys");
    common(sweep, true);
    maps(sweep);
    sweep->add_flag("--auto-idler", auto_idler, "for cas sweeps");
    auto* validate = app.add_subcommand("validate", "acceptance suite; reference config unless --config");
    common(validate, false);
    validate->add_option("--criteria", criteria, "criterion numbers, e.g. 1,2,8")->delimiter(',');
    auto* reference = app.add_subcommand("reference", "print the reference configuration");
    reference->callback([&] { print_reference = true; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }
    if (print_reference) {
        std::cout << reference_config_text();
        return kExitOk;
    }

    CommandOptions opts;
    opts.command = app.get_subcommands().front()->get_name();
    opts.out_dir = out_dir;
    opts.mode = numeric ? MapMode::numeric : analytic ? MapMode::analytic : MapMode::both;
    opts.scale = scale == "log" ? HeatmapScale::log : HeatmapScale::linear;
    opts.auto_idler = auto_idler;
    opts.criteria = criteria;
    if (const char* s = std::getenv("SPDC_SIMD"); s && std::string(s) == "scalar") {
        opts.simd = SimdLevel::scalar;
    }
    try {
        opts.config = config_path.empty() ? parse_config(reference_config_text()) : load_config(config_path);
        return run_command(opts, std::cerr);
    } catch (const ParseError& e) {
        std::cerr << "config error: " << (config_path.empty() ? "reference" : config_path) << ": " << e.what() << "\n";
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
    }
    return kExitFailure;
}
