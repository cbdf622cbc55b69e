#include "spdc/commands.hpp"

#include <chrono>
#include <fstream>
#include <ostream>

#include <json.hpp>

#include "spdc/analysis.hpp"
#include "spdc/errors.hpp"
#include "spdc/validation.hpp"

namespace spdc {

namespace {

using nlohmann::json;

json to_json(Vec2 v) { return json::array({v.x, v.y}); }

struct Run {
    const CommandOptions& opts;
    std::ostream& log;
    std::filesystem::path dir;
    RunConfig cfg;
    json summary;
    bool failed = false;

    unsigned workers() const { return opts.workers ? opts.workers : worker_count(); }

    AsOptions as_opts() const
    {
        AsOptions o;
        o.quad = cfg.quad;
        o.pm = cfg.pm;
        o.workers = workers();
        o.simd = opts.simd;
        return o;
    }

    void artifact(const std::string& name) { summary["artifacts"].push_back(name); }

    json grid_report(const SpectrumGrid& g, const std::string& stem)
    {
        write_grid(g, dir / (stem + ".kgrid"));
        artifact(stem + ".kgrid");
        if (!write_heatmap(g, dir / (stem + ".pgm"), opts.scale)) {
            log << "warning: " << stem << " is identically zero, heatmap is black\n";
        }
        artifact(stem + ".pgm");
        json r;
        r["cells_unconverged"] = g.count(CellStatus::not_converged);
        r["cells_failed"] = g.count(CellStatus::domain_error);
        r["converged"] = g.count(CellStatus::ok) == g.values.size();
        if (!g.first_error.empty()) {
            r["first_error"] = g.first_error;
        }
        r["max_value"] = g.max_value();
        if (const auto p = find_max(g)) {
            r["peak_k"] = to_json(p->k);
            r["peak_value"] = p->value;
        }
        return r;
    }

    void indices()
    {
        const DerivedIndices idx = derived_indices(cfg.crystal, cfg.pump.wavelength_nm);
        json d;
        d["k0_per_um"] = idx.k0;
        d["n_o_signal"] = idx.n_o;
        d["n_o_pump"] = idx.n_o_pump;
        d["n_e_pump"] = idx.n_e_pump;
        d["eps_perp"] = idx.eps_perp;
        d["eps_par"] = idx.eps_par;
        d["delta_eps"] = idx.delta_eps;
        d["n_eff"] = idx.n_eff;
        d["beta"] = idx.beta;
        d["eta"] = idx.eta;
        d["optical_axis"] = json::array({idx.axis.x, idx.axis.y, idx.axis.z});
        d["walkoff_beta_a_y"] = idx.beta * idx.axis.y;
        d["emission_cone_tilt_rad"] = emission_cone_tilt(idx);
        summary["indices"] = d;
        const ConeGeometry g = cone_geometry(cfg.crystal, cfg.pump, cfg.pm.gamma);
        json c;
        c["r_as"] = g.r_as;
        c["sigma_as"] = g.sigma_as;
        c["walkoff_b"] = g.walkoff_b;
        c["r_plus"] = g.r_plus;
        c["r_minus"] = g.r_minus;
        c["a_plus"] = g.a_plus;
        c["a_minus"] = g.a_minus;
        c["displacement"] = to_json(g.displacement);
        c["touch_point"] = to_json(g.touch_point);
        c["reliable"] = g.reliable;
        summary["cone_geometry"] = c;
        log << "r_AS = " << g.r_as << " 1/um, beta a_y = " << idx.beta * idx.axis.y << " rad\n";
    }

    void angular_spectrum()
    {
        const AsOptions o = as_opts();
        auto one = [&](const SpectrumGrid& g, const std::string& stem) {
            json r = grid_report(g, stem);
            r["ridge_radius"] = radial_moments(g, {}, 0.5).mean;
            summary[stem] = r;
            log << stem << ": peak " << r.value("peak_k", json()).dump() << ", ridge radius " << r["ridge_radius"]
                << " 1/um\n";
        };
        if (opts.mode != MapMode::analytic) {
            one(as_numeric(cfg.grid, cfg.crystal, cfg.pump, o), "as_numeric");
        }
        if (opts.mode != MapMode::numeric) {
            one(as_analytic(cfg.grid, cfg.crystal, cfg.pump, o), "as_analytic");
        }
    }

    void conditional()
    {
        const AsOptions o = as_opts();
        Vec2 idler;
        if (opts.auto_idler || !cfg.cas.idler) {
            const auto peak = find_max(as_numeric(cfg.grid, cfg.crystal, cfg.pump, o));
            if (!peak) {
                throw DomainError("cas: angular spectrum is identically zero, no idler to select");
            }
            idler = peak->k;
            summary["idler_source"] = "angular spectrum maximum";
        } else {
            idler = *cfg.cas.idler;
            summary["idler_source"] = "config";
        }
        summary["idler_k"] = to_json(idler);
        log << "idler k = (" << idler.x << ", " << idler.y << ") 1/um\n";
        const double half =
            cfg.cas.half_extent > 0.0 ? cfg.cas.half_extent : cfg.pump.cone_radius + 10.0 * cfg.pump.width;
        const GridSpec grid = GridSpec::square(cfg.cas.cells, -idler, half);
        if (opts.mode != MapMode::analytic) {
            summary["cas_numeric"] = grid_report(cas_numeric(grid, idler, cfg.crystal, cfg.pump, o), "cas_numeric");
        }
        const CasAnalytic a = cas_analytic(grid, idler, cfg.crystal, cfg.pump, o);
        if (opts.mode != MapMode::numeric) {
            summary["cas_analytic"] = grid_report(a.map, "cas_analytic");
        }
        json f;
        f["w_eff"] = a.form.w_eff;
        f["center"] = to_json(a.form.center);
        f["radius_squared"] = a.form.radius_squared;
        f["radius"] = a.form.radius();
        summary["closed_form"] = f;
    }

    void oam()
    {
        const OamSettings& s = cfg.oam;
        PumpBeam pump = cfg.pump;
        pump.cone_radius = s.pump_kappa;
        pump.width = s.width;
        const double theta = s.theta ? *s.theta : emission_cone_tilt(derived_indices(cfg.crystal, pump.wavelength_nm));
        const BesselMode signal{theta, s.signal_phi, s.signal_kappa, s.width};
        const BesselMode idler{theta, s.idler_phi, s.idler_kappa, s.width};
        OamOptions o;
        o.quad = s.quad;
        o.pm = cfg.pm;
        o.entrance_phase = s.entrance_phase;
        o.workers = workers();
        const IndexRange r{s.ell_min, s.ell_max};
        const AmplitudeMatrix f = amplitude_matrix(cfg.crystal, pump, signal, idler, r, r, o);
        write_matrix(f, dir / "oam.koam");
        artifact("oam.koam");
        json m;
        m["theta_rad"] = theta;
        m["converged"] = f.converged;
        m["doubling_change"] = f.change;
        m["max_abs"] = f.max_abs();
        int bs = r.min, bi = r.min;
        for (int a = r.min; a <= r.max; ++a) {
            for (int b = r.min; b <= r.max; ++b) {
                if (std::abs(f.at(a, b)) > std::abs(f.at(bs, bi))) {
                    bs = a;
                    bi = b;
                }
            }
        }
        m["argmax"] = json::array({bs, bi});
        if (f.max_abs() > 0.0) {
            const Marginals mg = marginals(f);
            write_marginals_csv(mg, dir / "marginals.csv");
            artifact("marginals.csv");
            m["signal_marginal"] = mg.signal_probs;
            m["idler_marginal"] = mg.idler_probs;
        } else {
            log << "warning: amplitude matrix is identically zero, no marginals\n";
        }
        summary["oam"] = m;
        log << "max |F| at (" << bs << ", " << bi << "), doubling change " << f.change << "\n";
    }

    void validate()
    {
        ValidationOptions v;
        v.base = cfg;
        v.criteria = opts.criteria;
        v.workers = opts.workers;
        v.simd = opts.simd;
        v.on_result = [&](const CriterionResult& r) { log << format_result(r) << std::endl; };
        json results = json::array();
        for (const CriterionResult& r : run_acceptance(v)) {
            failed = failed || !r.passed;
            results.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail},
                               {"seconds", r.seconds}});
        }
        summary["criteria"] = results;
    }

    void dispatch(const std::string& command)
    {
        if (command == "indices") {
            indices();
        } else if (command == "as") {
            angular_spectrum();
        } else if (command == "cas") {
            conditional();
        } else if (command == "oam") {
            oam();
        } else if (command == "validate") {
            validate();
        } else {
            throw DomainError("unknown command '" + command + "'");
        }
    }
};

void write_summary(const json& summary, const std::filesystem::path& dir)
{
    std::ofstream out(dir / "summary.json");
    out << summary.dump(2) << '\n';
    if (!out) {
        throw IoError("cannot write summary in '" + dir.string() + "'");
    }
}

json base_summary(const std::string& command, const RunConfig& cfg, const CommandOptions& opts)
{
    json s;
    s["command"] = command;
    s["config"] = serialize_config(cfg);
    s["mode"] = opts.mode == MapMode::numeric ? "numeric" : opts.mode == MapMode::analytic ? "analytic" : "both";
    s["scale"] = opts.scale == HeatmapScale::log ? "log" : "linear";
    s["simd"] = to_string(opts.simd);
    s["artifacts"] = json::array();
    return s;
}

int run_single(const CommandOptions& opts, const std::string& command, const RunConfig& cfg,
               const std::filesystem::path& dir, std::ostream& log, json* point)
{
    std::filesystem::create_directories(dir);
    Run run{opts, log, dir, cfg, base_summary(command, cfg, opts)};
    const auto t0 = std::chrono::steady_clock::now();
    try {
        run.dispatch(command);
    } catch (const std::exception& e) {
        run.failed = true;
        run.summary["error"] = e.what();
        log << "error: " << e.what() << "\n";
    }
    run.summary["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    run.summary["ok"] = !run.failed;
    write_summary(run.summary, dir);
    if (point) {
        *point = run.summary;
    }
    return run.failed ? kExitFailure : kExitOk;
}

int sweep(const CommandOptions& opts, std::ostream& log)
{
    const RunConfig& cfg = opts.config;
    if (cfg.sweep.empty()) {
        throw DomainError("sweep: the config lists no sweep.vary axes");
    }
    std::vector<std::size_t> pos(cfg.sweep.size(), 0);
    json summary = base_summary("sweep", cfg, opts);
    summary["points"] = json::array();
    int code = kExitOk;
    for (int n = 0;; ++n) {
        RunConfig point_cfg = cfg;
        json values;
        for (std::size_t a = 0; a < cfg.sweep.size(); ++a) {
            const SweepAxis& axis = cfg.sweep[a];
            point_cfg = parse_config_with(serialize_config(point_cfg), axis.key, axis.values[pos[a]]);
            values[axis.key] = axis.values[pos[a]];
        }
        point_cfg.sweep.clear();
        char name[32];
        std::snprintf(name, sizeof name, "point_%03d", n);
        log << name << ": " << values.dump() << "\n";
        json point;
        code = std::max(code, run_single(opts, cfg.sweep_command, point_cfg, opts.out_dir / name, log, &point));
        summary["points"].push_back({{"dir", name}, {"values", values}, {"ok", point["ok"]}});

        std::size_t a = 0;
        for (; a < pos.size(); ++a) {
            if (++pos[a] < cfg.sweep[a].values.size()) {
                break;
            }
            pos[a] = 0;
        }
        if (a == pos.size()) {
            break;
        }
    }
    summary["ok"] = code == kExitOk;
    write_summary(summary, opts.out_dir);
    return code;
}

}  // namespace

int run_command(const CommandOptions& opts, std::ostream& log)
{
    if (opts.command == "sweep") {
        std::filesystem::create_directories(opts.out_dir);
        return sweep(opts, log);
    }
    return run_single(opts, opts.command, opts.config, opts.out_dir, log, nullptr);
}

}  // namespace spdc
