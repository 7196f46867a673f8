#include "muskat/experiment.hpp"

#include "muskat/diagnostics.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

namespace muskat {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

[[noreturn]] void reject(const std::string& field, const std::string& why) {
    throw std::invalid_argument("config: \"" + field + "\" " + why);
}

void check_keys(const json& obj, const std::string& where,
                const std::set<std::string>& allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            reject(where.empty() ? it.key() : where + "." + it.key(), "is an unknown key");
}

double get_num(const json& obj, const std::string& where, const std::string& key,
               double fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj.at(key).is_number()) reject(where + "." + key, "must be a number");
    return obj.at(key).get<double>();
}

} // namespace

ExperimentSpec parse_spec(const json& doc) {
    if (!doc.is_object()) throw std::invalid_argument("config: document must be an object");
    check_keys(doc, "", {"sim", "initial", "params", "output", "seed"});

    ExperimentSpec spec;

    const json sim = doc.value("sim", json::object());
    check_keys(sim, "sim",
               {"n", "dt", "t_end", "scheme", "eps", "delta", "cadence", "solver_tol",
                "solver", "arc_chord_cap", "tracked_mode"});
    if (sim.contains("n")) {
        if (!sim.at("n").is_number_integer()) reject("sim.n", "must be an integer");
        spec.sim.n = sim.at("n").get<int>();
    }
    if (spec.sim.n < 16) reject("sim.n", "must be >= 16");
    if (spec.sim.n % 2 != 0) reject("sim.n", "must be even");
    spec.sim.dt = get_num(sim, "sim", "dt", spec.sim.dt);
    if (spec.sim.dt < 0.0) reject("sim.dt", "must be >= 0 (0 = auto)");
    spec.sim.t_end = get_num(sim, "sim", "t_end", spec.sim.t_end);
    if (spec.sim.t_end < 0.0) reject("sim.t_end", "must be >= 0");
    if (sim.contains("scheme")) {
        const std::string s = sim.at("scheme").get<std::string>();
        if (s == "rk4")
            spec.sim.scheme = TimeScheme::rk4;
        else if (s == "euler")
            spec.sim.scheme = TimeScheme::euler;
        else
            reject("sim.scheme", "must be \"rk4\" or \"euler\"");
    }
    spec.sim.eps = get_num(sim, "sim", "eps", 0.0);
    if (spec.sim.eps < 0.0) reject("sim.eps", "must be >= 0");
    spec.sim.delta = get_num(sim, "sim", "delta", 0.0);
    if (spec.sim.delta < 0.0) reject("sim.delta", "must be >= 0");
    if (sim.contains("cadence")) {
        if (!sim.at("cadence").is_number_integer()) reject("sim.cadence", "must be an integer");
        spec.sim.cadence = sim.at("cadence").get<int>();
    }
    if (spec.sim.cadence < 0) reject("sim.cadence", "must be >= 0");
    spec.sim.solver_tol = get_num(sim, "sim", "solver_tol", spec.sim.solver_tol);
    if (spec.sim.solver_tol <= 0.0) reject("sim.solver_tol", "must be > 0");
    if (sim.contains("solver")) {
        const std::string s = sim.at("solver").get<std::string>();
        if (s == "neumann")
            spec.sim.solver = SolveMethod::neumann;
        else if (s == "dense")
            spec.sim.solver = SolveMethod::dense;
        else
            reject("sim.solver", "must be \"neumann\" or \"dense\"");
    }
    spec.sim.arc_chord_cap = get_num(sim, "sim", "arc_chord_cap", spec.sim.arc_chord_cap);
    if (spec.sim.arc_chord_cap <= 1.0) reject("sim.arc_chord_cap", "must be > 1");
    if (sim.contains("tracked_mode")) {
        if (!sim.at("tracked_mode").is_number_integer())
            reject("sim.tracked_mode", "must be an integer");
        spec.sim.tracked_mode = sim.at("tracked_mode").get<int>();
    }
    if (spec.sim.tracked_mode < 0 || spec.sim.tracked_mode > spec.sim.n / 2)
        reject("sim.tracked_mode", "must lie in [0, n/2]");

    const json init = doc.value("initial", json{{"type", "flat"}});
    check_keys(init, "initial", {"type", "k", "amplitude", "phase", "modes", "path"});
    const std::string type = init.value("type", "flat");
    if (type == "flat") {
        spec.initial.kind = InitialSpec::Kind::flat;
    } else if (type == "single_mode") {
        spec.initial.kind = InitialSpec::Kind::single_mode;
        ModeSpec m;
        if (!init.contains("k")) reject("initial.k", "is required for single_mode");
        m.k = init.at("k").get<int>();
        m.amplitude = get_num(init, "initial", "amplitude", 0.0);
        m.phase = get_num(init, "initial", "phase", 0.0);
        if (m.k < 1 || m.k > spec.sim.n / 2) reject("initial.k", "must lie in [1, n/2]");
        spec.initial.modes = {m};
        spec.sim.tracked_mode = sim.contains("tracked_mode") ? spec.sim.tracked_mode : m.k;
    } else if (type == "sum_of_modes") {
        spec.initial.kind = InitialSpec::Kind::sum_of_modes;
        if (!init.contains("modes") || !init.at("modes").is_array() ||
            init.at("modes").empty())
            reject("initial.modes", "must be a non-empty array");
        double dominant = -1.0;
        for (const auto& jm : init.at("modes")) {
            check_keys(jm, "initial.modes[]", {"k", "amplitude", "phase"});
            ModeSpec m;
            m.k = jm.at("k").get<int>();
            m.amplitude = jm.value("amplitude", 0.0);
            m.phase = jm.value("phase", 0.0);
            if (m.k < 1 || m.k > spec.sim.n / 2)
                reject("initial.modes[].k", "must lie in [1, n/2]");
            spec.initial.modes.push_back(m);
            if (std::abs(m.amplitude) > dominant) {
                dominant = std::abs(m.amplitude);
                if (!sim.contains("tracked_mode")) spec.sim.tracked_mode = m.k;
            }
        }
    } else if (type == "from_file") {
        spec.initial.kind = InitialSpec::Kind::from_file;
        if (!init.contains("path")) reject("initial.path", "is required for from_file");
        spec.initial.path = init.at("path").get<std::string>();
    } else {
        reject("initial.type", "must be flat, single_mode, sum_of_modes or from_file");
    }

    const json par = doc.value("params", json::object());
    check_keys(par, "params", {"mu1", "mu2", "rho1", "rho2", "kappa", "g"});
    spec.params.mu1 = get_num(par, "params", "mu1", spec.params.mu1);
    spec.params.mu2 = get_num(par, "params", "mu2", spec.params.mu2);
    spec.params.rho1 = get_num(par, "params", "rho1", spec.params.rho1);
    spec.params.rho2 = get_num(par, "params", "rho2", spec.params.rho2);
    spec.params.kappa = get_num(par, "params", "kappa", spec.params.kappa);
    spec.params.g = get_num(par, "params", "g", spec.params.g);
    if (!(spec.params.mu1 > 0.0)) reject("params.mu1", "must be > 0");
    if (!(spec.params.mu2 > 0.0)) reject("params.mu2", "must be > 0");
    if (!(spec.params.kappa > 0.0)) reject("params.kappa", "must be > 0");
    if (!(spec.params.g > 0.0)) reject("params.g", "must be > 0");

    const json outp = doc.value("output", json::object());
    check_keys(outp, "output", {"dir"});
    spec.output_dir = outp.value("dir", spec.output_dir);
    if (spec.output_dir.empty()) reject("output.dir", "must not be empty");

    if (doc.contains("seed")) {
        if (!doc.at("seed").is_number_integer()) reject("seed", "must be an integer");
        spec.seed = doc.at("seed").get<std::uint64_t>();
    }

    // cadence must divide the step count so the last snapshot lands on t_end
    const int nsteps = spec.sim.step_count(spec.params);
    if (spec.sim.cadence > 0 && nsteps % spec.sim.cadence != 0)
        reject("sim.cadence", "must divide the step count " + std::to_string(nsteps));

    return spec;
}

ExperimentSpec load_spec(const fs::path& path) {
    if (!fs::exists(path))
        throw std::invalid_argument("config: file does not exist: " + path.string());
    json doc;
    try {
        doc = json::parse(io::read_file(path));
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("config: invalid JSON in " + path.string() + ": " +
                                    e.what());
    }
    return parse_spec(doc);
}

json to_json(const ExperimentSpec& spec) {
    json init;
    switch (spec.initial.kind) {
        case InitialSpec::Kind::flat:
            init = {{"type", "flat"}};
            break;
        case InitialSpec::Kind::single_mode:
            init = {{"type", "single_mode"},
                    {"k", spec.initial.modes[0].k},
                    {"amplitude", spec.initial.modes[0].amplitude},
                    {"phase", spec.initial.modes[0].phase}};
            break;
        case InitialSpec::Kind::sum_of_modes: {
            json modes = json::array();
            for (const auto& m : spec.initial.modes)
                modes.push_back({{"k", m.k}, {"amplitude", m.amplitude}, {"phase", m.phase}});
            init = {{"type", "sum_of_modes"}, {"modes", modes}};
            break;
        }
        case InitialSpec::Kind::from_file:
            init = {{"type", "from_file"}, {"path", spec.initial.path}};
            break;
    }
    return json{
        {"sim",
         {{"n", spec.sim.n},
          {"dt", spec.sim.dt},
          {"t_end", spec.sim.t_end},
          {"scheme", spec.sim.scheme == TimeScheme::rk4 ? "rk4" : "euler"},
          {"eps", spec.sim.eps},
          {"delta", spec.sim.delta},
          {"cadence", spec.sim.cadence},
          {"solver_tol", spec.sim.solver_tol},
          {"solver", spec.sim.solver == SolveMethod::neumann ? "neumann" : "dense"},
          {"arc_chord_cap", spec.sim.arc_chord_cap},
          {"tracked_mode", spec.sim.tracked_mode}}},
        {"initial", init},
        {"params",
         {{"mu1", spec.params.mu1},
          {"mu2", spec.params.mu2},
          {"rho1", spec.params.rho1},
          {"rho2", spec.params.rho2},
          {"kappa", spec.params.kappa},
          {"g", spec.params.g}}},
        {"output", {{"dir", spec.output_dir}}},
        {"seed", spec.seed}};
}

Curve build_initial(const InitialSpec& init, int n) {
    switch (init.kind) {
        case InitialSpec::Kind::flat:
            return Curve::flat(n);
        case InitialSpec::Kind::single_mode:
        case InitialSpec::Kind::sum_of_modes: {
            SpectralField q2 = SpectralField::from_function(n, [&](double a) {
                double v = 0.0;
                for (const auto& m : init.modes)
                    v += m.amplitude * std::cos(m.k * a + m.phase);
                return v;
            });
            return Curve(SpectralField::zeros(n), std::move(q2));
        }
        case InitialSpec::Kind::from_file: {
            io::Snapshot snap = io::read_snapshot(init.path);
            if (snap.curve.size() != n)
                throw std::invalid_argument("initial.path: snapshot N " +
                                            std::to_string(snap.curve.size()) +
                                            " does not match sim.n " + std::to_string(n));
            return snap.curve;
        }
    }
    throw std::logic_error("unreachable");
}

ExecResult execute(const ExperimentSpec& spec) {
    const fs::path dir = spec.output_dir;
    fs::create_directories(dir);
    fs::create_directories(dir / "snapshots");

    json summary;
    const auto t_start = std::chrono::steady_clock::now();
    auto wall_s = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
            .count();
    };

    try {
        io::write_file(dir / "resolved-config.json", to_json(spec).dump(2) + "\n");

        Curve initial = build_initial(spec.initial, spec.sim.n);
        const ArcChordReport arc0 = arc_chord(initial, initial.size());
        if (arc0.degenerate || !std::isfinite(arc0.sup_F))
            throw std::runtime_error("initial curve fails the arc-chord condition");

        RunResult rr = run(spec.sim, spec.params, initial);

        std::vector<fs::path> files = {dir / "resolved-config.json"};
        for (std::size_t i = 0; i < rr.snapshots.size(); ++i) {
            char name[48];
            std::snprintf(name, sizeof name, "snapshot_%04zu.csv", i);
            const fs::path p = dir / "snapshots" / name;
            io::write_snapshot(p, rr.snapshots[i].curve, rr.snapshots[i].t);
            files.push_back(p);
        }
        io::write_diagnostics_csv(dir / "diagnostics.csv", rr.series);
        files.push_back(dir / "diagnostics.csv");

        const StepDiagnostics& last = rr.series.back();
        summary = {
            {"status", rr.breakdown.empty() ? "ok" : "breakdown"},
            {"breakdown_reason", rr.breakdown},
            {"steps_taken", rr.steps_taken},
            {"rt_stable_t0", rr.stable_run},
            {"min_sigma_t0", rr.series.front().min_sigma},
            {"sup_F0", rr.sup_F0},
            {"max_displacement", rr.max_displacement},
            {"q1_mean_drift", rr.q1_mean_drift},
            {"lambda_min", rr.lambda_min_overall},
            {"final",
             {{"t", last.t},
              {"sup_F", last.sup_F},
              {"min_sigma", last.min_sigma},
              {"H3_norm", last.h3_norm},
              {"tangent_dev", last.tangent_dev},
              {"residual", last.residual},
              {"mode_amp", last.mode_amp}}},
            {"wall_time_s", wall_s()}};
        io::write_file(dir / "summary.json", summary.dump(2) + "\n");
        files.push_back(dir / "summary.json");

        json manifest = json::array();
        for (const auto& p : files)
            manifest.push_back({{"path", fs::relative(p, dir).string()},
                                {"fnv1a", io::hash_file(p)}});
        io::write_file(dir / "manifest.json", json{{"files", manifest}}.dump(2) + "\n");

        return {0, dir, rr.breakdown};
    } catch (const std::exception& e) {
        summary = {{"status", "error"}, {"error", e.what()}, {"wall_time_s", wall_s()}};
        io::write_file(dir / "summary.json", summary.dump(2) + "\n");
        return {1, dir, e.what()};
    }
}

void emit_plot_data(const fs::path& run_dir) {
    const fs::path diag = run_dir / "diagnostics.csv";
    if (!fs::exists(diag))
        throw std::runtime_error("emit_plot_data: missing input " + diag.string());
    const fs::path snaps = run_dir / "snapshots";
    if (!fs::exists(snaps))
        throw std::runtime_error("emit_plot_data: missing input " + snaps.string());

    const fs::path out = run_dir / "plot";
    fs::create_directories(out);
    const auto series = io::read_diagnostics_csv(diag);

    std::vector<fs::path> files;
    const auto& cols = io::diagnostics_columns();
    for (std::size_t ci = 1; ci < cols.size(); ++ci) { // skip t itself
        std::ostringstream ss;
        ss << "t," << cols[ci] << "\n";
        for (const auto& d : series) {
            const double vals[] = {d.t,           d.sup_F,    d.min_sigma, d.h3_norm,
                                   d.tangent_dev, d.residual, d.b_t,       d.mode_amp};
            ss << io::fmt_double(vals[0]) << ',' << io::fmt_double(vals[ci]) << "\n";
        }
        const fs::path p = out / ("diag_" + cols[ci] + ".csv");
        io::write_file(p, ss.str());
        files.push_back(p);
    }

    std::vector<fs::path> snap_files;
    for (const auto& e : fs::directory_iterator(snaps))
        if (e.path().extension() == ".csv") snap_files.push_back(e.path());
    std::sort(snap_files.begin(), snap_files.end());
    for (const auto& sf : snap_files) {
        const io::Snapshot snap = io::read_snapshot(sf);
        std::ostringstream ss;
        ss << "alpha,z2\n";
        for (int j = 0; j < snap.curve.size(); ++j)
            ss << io::fmt_double(snap.curve.node(j)) << ','
               << io::fmt_double(snap.curve.z2(j)) << "\n";
        const fs::path p = out / sf.filename();
        io::write_file(p, ss.str());
        files.push_back(p);
    }

    json manifest = json::array();
    for (const auto& p : files)
        manifest.push_back(
            {{"path", fs::relative(p, out).string()}, {"fnv1a", io::hash_file(p)}});
    io::write_file(out / "manifest.json", json{{"files", manifest}}.dump(2) + "\n");
}

} // namespace muskat
