// Command-line front end: `run` executes an experiment described by a JSON
// config, `diagnose` evaluates the monitored functionals on a stored
// snapshot, `sweep` repeats a run over a list of eps or delta values.

#include "muskat/diagnostics.hpp"
#include "muskat/experiment.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <iostream>

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

int cmd_run(const std::string& config, const std::string& out_override,
            int n, double dt, double t_end, double eps, double delta,
            const std::string& scheme) {
    muskat::ExperimentSpec spec = muskat::load_spec(config);
    json doc = muskat::to_json(spec);
    if (!out_override.empty()) doc["output"]["dir"] = out_override;
    if (n > 0) doc["sim"]["n"] = n;
    if (dt >= 0.0) doc["sim"]["dt"] = dt;
    if (t_end >= 0.0) doc["sim"]["t_end"] = t_end;
    if (eps >= 0.0) doc["sim"]["eps"] = eps;
    if (delta >= 0.0) doc["sim"]["delta"] = delta;
    if (!scheme.empty()) doc["sim"]["scheme"] = scheme;
    spec = muskat::parse_spec(doc); // re-validate with overrides applied

    const muskat::ExecResult res = muskat::execute(spec);
    if (res.status == 0) {
        std::cout << "run complete: " << res.dir.string();
        if (!res.message.empty()) std::cout << " (halted: " << res.message << ")";
        std::cout << "\n";
    } else {
        std::cerr << "run failed: " << res.message << "\n";
    }
    return res.status;
}

json record_to_json(const muskat::DiagnosticsRecord& r) {
    return json{{"t", r.t},
                {"sup_F", r.sup_F},
                {"arc_argmax", {{"alpha", r.arc_argmax_alpha}, {"beta", r.arc_argmax_beta}}},
                {"min_sigma", r.min_sigma},
                {"min_sigma_alpha", r.min_sigma_alpha},
                {"sigma_integral", r.sigma_integral},
                {"sobolev_norms",
                 {{"s0", r.sobolev_norms[0]},
                  {"s1", r.sobolev_norms[1]},
                  {"s2", r.sobolev_norms[2]},
                  {"s3", r.sobolev_norms[3]}}},
                {"tangent_dev", r.tangent_dev},
                {"pressure_jump_max", r.pressure_jump_max},
                {"velocity_jump_residual", r.velocity_jump_residual},
                {"velocity_avg_residual", r.velocity_avg_residual},
                {"lambda_inequality_min", r.lambda_inequality_min},
                {"sigma_weighted_k3_form", r.sigma_weighted_k3_form},
                {"b_t", r.b_t}};
}

int cmd_diagnose(const std::string& snapshot, const std::string& config,
                 const std::string& out, const std::string& profiles, double offset) {
    const muskat::ExperimentSpec spec = muskat::load_spec(config);
    const muskat::io::Snapshot snap = muskat::io::read_snapshot(snapshot);
    const muskat::VorticitySolve vs =
        muskat::solve_vorticity(snap.curve, spec.params, spec.sim.solver,
                                spec.sim.solver_tol);
    const muskat::DiagnosticsRecord rec =
        muskat::energy_report(snap.curve, vs.w, spec.params, snap.time, offset);

    json doc = record_to_json(rec);
    doc["solve"] = {{"residual", vs.residual},
                    {"iterations", vs.iterations},
                    {"method", vs.method == muskat::SolveMethod::dense ? "dense" : "neumann"}};
    const std::string text = doc.dump(2) + "\n";
    if (out.empty())
        std::cout << text;
    else
        muskat::io::write_file(out, text);

    if (!profiles.empty()) {
        fs::create_directories(profiles);
        const muskat::SpectralField sig =
            muskat::sigma_field(snap.curve, vs.w, spec.params);
        const muskat::ArcChordReport arc = muskat::arc_chord(snap.curve, snap.curve.size());
        std::string csv = "alpha,sigma,diag_F\n";
        for (int j = 0; j < snap.curve.size(); ++j)
            csv += muskat::io::fmt_double(snap.curve.node(j)) + "," +
                   muskat::io::fmt_double(sig[j]) + "," +
                   muskat::io::fmt_double(arc.diag_F[j]) + "\n";
        muskat::io::write_file(fs::path(profiles) / "profiles.csv", csv);
    }
    return 0;
}

int cmd_sweep(const std::string& config, const std::string& param,
              const std::vector<double>& values, const std::string& out_dir) {
    muskat::ExperimentSpec base = muskat::load_spec(config);
    if (!out_dir.empty()) base.output_dir = out_dir;
    const fs::path root = base.output_dir;
    fs::create_directories(root);

    // Baseline: the unregularized system (value 0).
    std::vector<double> vals = values;
    if (std::find(vals.begin(), vals.end(), 0.0) == vals.end())
        vals.insert(vals.begin(), 0.0);

    json rows = json::array();
    std::vector<double> base_z2;
    for (double v : vals) {
        json doc = muskat::to_json(base);
        doc["sim"][param] = v;
        char sub[64];
        std::snprintf(sub, sizeof sub, "%s_%g", param.c_str(), v);
        doc["output"]["dir"] = (root / sub).string();
        const muskat::ExperimentSpec spec = muskat::parse_spec(doc);
        const muskat::ExecResult res = muskat::execute(spec);
        if (res.status != 0) {
            std::cerr << "sweep member " << sub << " failed: " << res.message << "\n";
            return res.status;
        }
        const auto series = muskat::io::read_diagnostics_csv(res.dir / "diagnostics.csv");
        const auto snaps = muskat::io::read_snapshot(
            res.dir / "snapshots" /
            [&] {
                std::vector<fs::path> fl;
                for (const auto& e : fs::directory_iterator(res.dir / "snapshots"))
                    fl.push_back(e.path());
                std::sort(fl.begin(), fl.end());
                return fl.back().filename();
            }());
        std::vector<double> z2(snaps.curve.size());
        for (int j = 0; j < snaps.curve.size(); ++j) z2[j] = snaps.curve.z2(j);
        double dist = 0.0;
        if (v == 0.0) {
            base_z2 = z2;
        } else {
            for (std::size_t j = 0; j < z2.size(); ++j)
                dist = std::max(dist, std::abs(z2[j] - base_z2[j]));
        }
        rows.push_back({{param, v},
                        {"dir", doc["output"]["dir"]},
                        {"final_mode_amp", series.back().mode_amp},
                        {"final_sup_F", series.back().sup_F},
                        {"dist_to_baseline", dist}});
        std::cout << sub << ": dist_to_baseline=" << dist << "\n";
    }
    muskat::io::write_file(root / "sweep.json", json{{"rows", rows}}.dump(2) + "\n");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pseudospectral simulator for the periodic two-phase Muskat problem"};
    app.require_subcommand(1);

    std::string config, out, scheme, snapshot, profiles, param;
    int n = -1;
    double dt = -1.0, t_end = -1.0, eps = -1.0, delta = -1.0, offset = 1e-2;
    std::vector<double> values;

    CLI::App* runc = app.add_subcommand("run", "execute an experiment from a JSON config");
    runc->add_option("--config", config, "path to the experiment JSON")->required();
    runc->add_option("--out", out, "override output directory");
    runc->add_option("--n", n, "override grid size");
    runc->add_option("--dt", dt, "override time step (0 = auto)");
    runc->add_option("--t-end", t_end, "override end time");
    runc->add_option("--eps", eps, "override mollification parameter");
    runc->add_option("--delta", delta, "override kernel regularization");
    runc->add_option("--scheme", scheme, "override time scheme (rk4|euler)");

    CLI::App* diag = app.add_subcommand("diagnose", "evaluate diagnostics on a snapshot");
    diag->add_option("--snapshot", snapshot, "snapshot CSV path")->required();
    diag->add_option("--config", config, "experiment JSON supplying the fluid parameters")
        ->required();
    diag->add_option("--out", out, "write the record JSON here instead of stdout");
    diag->add_option("--profiles", profiles, "also write per-alpha sigma/F profiles here");
    diag->add_option("--offset", offset, "standoff for the boundary-limit residuals");

    CLI::App* sw = app.add_subcommand("sweep", "run a sequence of eps or delta values");
    sw->add_option("--config", config, "path to the experiment JSON")->required();
    sw->add_option("--param", param, "swept parameter (eps|delta)")
        ->required()
        ->check(CLI::IsMember({"eps", "delta"}));
    sw->add_option("--values", values, "list of parameter values")->required();
    sw->add_option("--out", out, "override output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (runc->parsed()) return cmd_run(config, out, n, dt, t_end, eps, delta, scheme);
        if (diag->parsed()) return cmd_diagnose(snapshot, config, out, profiles, offset);
        if (sw->parsed()) return cmd_sweep(config, param, values, out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
