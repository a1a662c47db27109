#include "epidyn/cli.hpp"

#include "epidyn/control.hpp"
#include "epidyn/equilibria.hpp"
#include "epidyn/errors.hpp"
#include "epidyn/integrate.hpp"
#include "epidyn/reproduction.hpp"
#include "epidyn/stability.hpp"
#include "epidyn/sweep.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace epidyn {

using nlohmann::json;

namespace {

double num_or(const json& obj, const char* key, double fallback)
{
    if (!obj.is_object() || !obj.contains(key)) return fallback;
    if (!obj[key].is_number()) throw ConfigError(std::string("option ") + key + " must be a number");
    return obj[key].get<double>();
}

std::string fmt3(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

json state_to_json(const State& x)
{
    static const char* names4[] = {"S", "E", "I", "R"};
    static const char* names5[] = {"S", "E", "I", "R", "V"};
    json out;
    const char** names = x.size() == 5 ? names5 : names4;
    for (size_t i = 0; i < x.size(); ++i) out[names[i]] = x[i];
    return out;
}

State state_from_json(const json& j, size_t dim)
{
    State x;
    if (j.is_array()) {
        x = j.get<State>();
    } else if (j.is_object()) {
        static const char* names5[] = {"S", "E", "I", "R", "V"};
        for (size_t i = 0; i < dim; ++i) {
            const char* key = names5[i];
            if (!j.contains(key)) throw ConfigError(std::string("x0 missing component ") + key);
            x.push_back(j[key].get<double>());
        }
    } else {
        throw ConfigError("x0 must be an array or an object of components");
    }
    if (x.size() != dim) throw ConfigError("x0 has the wrong number of components");
    return x;
}

json equilibrium_to_json(const Equilibrium& eq)
{
    return json{{"point", state_to_json(eq.point)},
                {"kind", to_string(eq.kind)},
                {"relevant", eq.relevant},
                {"residual", eq.residual}};
}

json eigs_to_json(const std::vector<std::complex<double>>& eigs)
{
    json arr = json::array();
    for (const auto& ev : eigs) arr.push_back(json{{"re", ev.real()}, {"im", ev.imag()}});
    return arr;
}

json matrix_to_json(const SquareMatrix& m)
{
    json rows = json::array();
    for (int i = 0; i < m.order; ++i) {
        json row = json::array();
        for (int j = 0; j < m.order; ++j) row.push_back(m.at(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

json stability_to_json(const StabilityReport& rep)
{
    json out{{"matrix", matrix_to_json(rep.matrix)},
             {"eigenvalues", eigs_to_json(rep.eigenvalues)},
             {"classification", to_string(rep.classification)}};
    if (rep.criteria) {
        out["fuller"] = json{{"det_m", rep.criteria->det_m},
                             {"trace", rep.criteria->trace_m},
                             {"det_g", rep.criteria->det_g},
                             {"stable", rep.criteria->stable}};
    }
    return out;
}

std::string point_summary(const State& x)
{
    std::string s = "(";
    for (size_t i = 0; i < x.size(); ++i) {
        if (i) s += ", ";
        s += fmt3(x[i]);
    }
    return s + ")";
}

// Refined SVE(R)IRS endemic point, seeded by endemic_sverirs_guess.
Equilibrium refined_sverirs_endemic(const SverirsParams& p)
{
    return endemic_sverirs_refine(p, endemic_sverirs_guess(p));
}

} // namespace

RunConfig config_from_json(const nlohmann::json& doc, const std::vector<std::string>& overrides)
{
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");
    RunConfig cfg;
    if (!doc.contains("model") || !doc["model"].is_string())
        throw ConfigError("config needs a \"model\" string (serirs or sverirs)");
    cfg.model = doc["model"].get<std::string>();
    if (cfg.model != "serirs" && cfg.model != "sverirs")
        throw ConfigError("unknown model: " + cfg.model);
    cfg.params = doc.value("params", json::object());
    if (!cfg.params.is_object()) throw ConfigError("\"params\" must be an object");
    if (doc.contains("command")) cfg.command = doc["command"].get<std::string>();
    cfg.options = doc.value("options", json::object());
    if (!cfg.options.is_object()) throw ConfigError("\"options\" must be an object");

    for (const std::string& ov : overrides) {
        const auto eq = ov.find('=');
        if (eq == std::string::npos)
            throw ConfigError("--set expects name=value, got: " + ov);
        const std::string name = ov.substr(0, eq);
        try {
            size_t used = 0;
            const double value = std::stod(ov.substr(eq + 1), &used);
            if (used != ov.size() - eq - 1) throw std::invalid_argument("trailing");
            cfg.params[name] = value;
        } catch (const std::exception&) {
            throw ConfigError("--set " + name + ": value is not a number");
        }
    }
    return cfg;
}

RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw ConfigError("config parse error in " + path + ": " + e.what());
    }
    return config_from_json(doc, overrides);
}

ModelParams params_from_config(const RunConfig& cfg)
{
    ModelParams p;
    if (cfg.model == "serirs") p = SerirsParams{};
    else p = SverirsParams{};

    for (const auto& [key, value] : cfg.params.items()) {
        if (!value.is_number()) throw ConfigError("parameter " + key + " must be a number");
        set_param(p, key, value.get<double>());
    }
    require_valid(p);
    return p;
}

json config_echo(const RunConfig& cfg, const std::string& command)
{
    return json{{"model", cfg.model},
                {"params", cfg.params},
                {"command", command},
                {"options", cfg.options}};
}

json run_r0(const RunConfig& cfg, std::ostream& summary)
{
    const ModelParams p = params_from_config(cfg);
    const double value = r0(p);

    json out{{"config", config_echo(cfg, "r0")}, {"r0", value}};
    switch (r0_side(value)) {
    case R0Side::subcritical: out["r0_side"] = "subcritical"; break;
    case R0Side::threshold: out["r0_side"] = "threshold"; break;
    case R0Side::supercritical: out["r0_side"] = "supercritical"; break;
    }

    std::string herd_text = "n/a";
    if (value > 0.0) {
        out["herd_threshold"] = herd_threshold(value);
        herd_text = fmt3(out["herd_threshold"].get<double>());
    } else {
        out["herd_threshold"] = nullptr;
    }
    summary << "r0=" << fmt3(value) << " herd_threshold=" << herd_text;

    if (const auto* v = std::get_if<SverirsParams>(&p)) {
        const CriticalPhi crit = critical_phi(*v);
        if (crit.phi) {
            out["critical_phi"] = *crit.phi;
            summary << " critical_phi=" << *crit.phi;
        } else {
            out["critical_phi"] = nullptr;
            out["critical_phi_note"] = crit.note;
            summary << " critical_phi=none (" << crit.note << ")";
        }
    }
    summary << "\n";
    return out;
}

json run_equilibria(const RunConfig& cfg, std::ostream& summary)
{
    const ModelParams p = params_from_config(cfg);
    json out{{"config", config_echo(cfg, "equilibria")}};

    if (const auto* s = std::get_if<SerirsParams>(&p)) {
        const Equilibrium dfe = dfe_serirs(*s);
        out["dfe"] = equilibrium_to_json(dfe);
        summary << "dfe " << point_summary(dfe.point) << "\n";
        try {
            const Equilibrium end = endemic_serirs(*s);
            out["endemic"] = equilibrium_to_json(end);
            summary << "endemic " << point_summary(end.point)
                    << (end.relevant ? " relevant" : " irrelevant") << "\n";
        } catch (const NumericError& e) {
            out["endemic"] = json{{"error", e.what()}};
            summary << "endemic unavailable: " << e.what() << "\n";
        }
        return out;
    }

    const auto& v = std::get<SverirsParams>(p);
    const Equilibrium dfe = dfe_sverirs(v);
    out["dfe"] = equilibrium_to_json(dfe);
    summary << "dfe " << point_summary(dfe.point) << "\n";

    try {
        const EndemicCandidates cand = endemic_sverirs_closed(v);
        out["closed_form"] = json{{"p2", equilibrium_to_json(cand.p2)},
                                  {"p3", equilibrium_to_json(cand.p3)},
                                  {"radicand", cand.radicand}};
        summary << "closed p3 " << point_summary(cand.p3.point)
                << (cand.p3.relevant ? " relevant" : " irrelevant") << ", p2 "
                << (cand.p2.relevant ? "relevant" : "irrelevant") << "\n";
    } catch (const NumericError& e) {
        out["closed_form"] = json{{"error", e.what()}};
        summary << "closed form unavailable: " << e.what() << "\n";
    }

    try {
        const Equilibrium refined = refined_sverirs_endemic(v);
        out["refined"] = equilibrium_to_json(refined);
        if (refined.kind == EquilibriumKind::endemic) {
            summary << "refined endemic " << point_summary(refined.point)
                    << (refined.relevant ? " relevant" : " irrelevant") << "\n";
        } else {
            summary << "refined search reached the disease-free point\n";
        }
    } catch (const NumericError& e) {
        out["refined"] = json{{"error", e.what()}};
        summary << "refinement failed: " << e.what() << "\n";
    }
    return out;
}

json run_stability(const RunConfig& cfg, std::ostream& summary)
{
    const ModelParams p = params_from_config(cfg);
    json out{{"config", config_echo(cfg, "stability")}};

    if (const auto* s = std::get_if<SerirsParams>(&p)) {
        const StabilityReport dfe_rep = stability_report(jacobian_serirs_dfe(*s));
        out["dfe"] = stability_to_json(dfe_rep);
        summary << "dfe: " << to_string(dfe_rep.classification) << "\n";
        try {
            const StabilityReport end_rep = stability_report(jacobian_serirs_endemic(*s));
            out["endemic"] = stability_to_json(end_rep);
            out["endemic"]["relevant"] = endemic_serirs(*s).relevant;
            summary << "endemic: " << to_string(end_rep.classification) << "\n";
        } catch (const NumericError& e) {
            out["endemic"] = json{{"error", e.what()}};
            summary << "endemic unavailable: " << e.what() << "\n";
        }
        return out;
    }

    const auto& v = std::get<SverirsParams>(p);
    const StabilityReport dfe_rep = stability_report(jacobian_sverirs_dfe(v));
    out["dfe"] = stability_to_json(dfe_rep);
    summary << "dfe: " << to_string(dfe_rep.classification) << "\n";

    try {
        const Equilibrium refined = refined_sverirs_endemic(v);
        if (refined.kind != EquilibriumKind::endemic)
            throw NumericError("no endemic point found (refinement reached the disease-free state)");
        const SverirsParams pc = v;
        auto rhs = [&pc](const ReducedState& x) { return sverirs_reduced_rhs(x, pc); };
        const StabilityReport end_rep =
            stability_report(jacobian_numeric(rhs, reduce(refined.point), 1e-5));
        out["endemic"] = stability_to_json(end_rep);
        out["endemic"]["point"] = state_to_json(refined.point);
        out["endemic"]["relevant"] = refined.relevant;
        summary << "endemic: " << to_string(end_rep.classification) << "\n";
    } catch (const NumericError& e) {
        out["endemic"] = json{{"error", e.what()}};
        summary << "endemic unavailable: " << e.what() << "\n";
    }
    return out;
}

SimulateOutput run_simulate(const RunConfig& cfg, std::ostream& summary)
{
    const ModelParams p = params_from_config(cfg);
    const double n = population(p);
    const size_t dim = cfg.model == "sverirs" ? 5 : 4;

    if (!cfg.options.contains("x0")) throw ConfigError("simulate needs options.x0");
    const State x0 = state_from_json(cfg.options["x0"], dim);
    for (double c : x0)
        if (!(c >= 0.0)) throw ConfigError("simulate: x0 components must be nonnegative");
    double sum = 0.0;
    for (double c : x0) sum += c;
    if (std::abs(sum - n) > 1e-6 * n)
        throw ConfigError("simulate: x0 must sum to the population size n");

    IntegrationOptions opts;
    opts.t_end = num_or(cfg.options, "t_end", 365.0);
    opts.stride = num_or(cfg.options, "stride", 1.0);
    opts.rel_tol = num_or(cfg.options, "rel_tol", opts.rel_tol);
    opts.abs_tol = num_or(cfg.options, "abs_tol", opts.abs_tol);
    opts.max_step = num_or(cfg.options, "max_step", 0.0);

    const Trajectory traj = integrate(p, x0, opts);

    SimulateOutput out;
    std::ostringstream csv;
    write_trajectory_csv(csv, traj);
    out.trajectory_csv = csv.str();

    // Companion distance series against a named or explicit target.
    State target;
    std::string target_label;
    if (cfg.options.contains("distance_target")) {
        const json& dt = cfg.options["distance_target"];
        if (dt.is_string()) {
            target_label = dt.get<std::string>();
            if (target_label == "dfe") {
                target = std::holds_alternative<SerirsParams>(p)
                             ? dfe_serirs(std::get<SerirsParams>(p)).point
                             : dfe_sverirs(std::get<SverirsParams>(p)).point;
            } else if (target_label == "endemic") {
                target = std::holds_alternative<SerirsParams>(p)
                             ? endemic_serirs(std::get<SerirsParams>(p)).point
                             : refined_sverirs_endemic(std::get<SverirsParams>(p)).point;
            } else {
                throw ConfigError("distance_target must be \"dfe\", \"endemic\", or a state");
            }
        } else {
            target = state_from_json(dt, dim);
            target_label = "custom";
        }
        const auto series = distance_series(traj, target);
        std::ostringstream dcsv;
        dcsv << "t,distance\n";
        char buf[32];
        for (const auto& [t, d] : series) {
            std::snprintf(buf, sizeof buf, "%.17g", t);
            dcsv << buf << ',';
            std::snprintf(buf, sizeof buf, "%.17g", d);
            dcsv << buf << '\n';
        }
        out.distance_csv = dcsv.str();
    }

    const double drift = conservation_drift(traj, n);
    out.report = json{{"config", config_echo(cfg, "simulate")},
                      {"samples", traj.times.size()},
                      {"t_end", opts.t_end},
                      {"conservation_drift", drift},
                      {"terminal", state_to_json(traj.states.back())},
                      {"trajectory", json{{"times", traj.times}, {"states", traj.states}}}};
    if (!target.empty()) out.report["distance_target"] = state_to_json(target);

    summary << "simulated " << traj.times.size() << " samples to t=" << opts.t_end
            << ", terminal " << point_summary(traj.states.back()) << "\n";
    return out;
}

SweepOutput run_sweep_cmd(const RunConfig& cfg, std::ostream& summary)
{
    const ModelParams p = params_from_config(cfg);

    SweepSpec spec;
    spec.base = p;
    if (!cfg.options.contains("param") || !cfg.options["param"].is_string())
        throw ConfigError("sweep needs options.param (the swept parameter name)");
    spec.param = cfg.options["param"].get<std::string>();

    if (!cfg.options.contains("grid")) throw ConfigError("sweep needs options.grid");
    const json& grid = cfg.options["grid"];
    if (grid.is_array()) {
        spec.grid = grid.get<std::vector<double>>();
    } else if (grid.is_object()) {
        const double lo = num_or(grid, "min", 0.0), hi = num_or(grid, "max", 0.0);
        const int count = static_cast<int>(num_or(grid, "count", 0.0));
        if (count < 1 || !(hi >= lo)) throw ConfigError("sweep grid needs min <= max and count >= 1");
        const bool log_spaced = grid.value("log", false);
        if (log_spaced && !(lo > 0.0)) throw ConfigError("log grid needs min > 0");
        for (int i = 0; i < count; ++i) {
            const double f = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
            spec.grid.push_back(log_spaced ? lo * std::pow(hi / lo, f) : lo + f * (hi - lo));
        }
    } else {
        throw ConfigError("sweep grid must be an array or {min,max,count}");
    }
    if (spec.grid.empty()) throw ConfigError("sweep: empty grid");

    const std::vector<SweepRow> rows = run_sweep(spec);

    SweepOutput out;
    std::ostringstream csv;
    write_sweep_csv(csv, rows, cfg.model == "sverirs");
    out.csv = csv.str();

    json jrows = json::array();
    for (const SweepRow& row : rows) {
        json jr{{"value", row.value}};
        if (row.r0) jr["r0"] = *row.r0;
        else jr["r0_error"] = row.r0_error;
        if (!row.dfe_class.empty()) jr["dfe_class"] = row.dfe_class;
        if (row.endemic_relevant) jr["endemic_relevant"] = *row.endemic_relevant;
        if (row.endemic_point) jr["endemic_point"] = state_to_json(*row.endemic_point);
        if (!row.endemic_class.empty()) jr["endemic_class"] = row.endemic_class;
        if (!row.endemic_error.empty()) jr["endemic_error"] = row.endemic_error;
        jrows.push_back(std::move(jr));
    }
    out.report = json{{"config", config_echo(cfg, "sweep")}, {"rows", jrows}};

    if (cfg.options.contains("threshold")) {
        const std::string which = cfg.options["threshold"].get<std::string>();
        std::function<bool(const SweepRow&)> pred;
        if (which == "r0_below_1") {
            pred = [](const SweepRow& r) { return r.r0 && *r.r0 < 1.0; };
        } else if (which == "endemic_relevant") {
            pred = [](const SweepRow& r) { return r.endemic_relevant && *r.endemic_relevant; };
        } else {
            throw ConfigError("unknown threshold predicate: " + which);
        }
        const auto found = find_threshold(spec, pred);
        if (found) {
            out.report["threshold"] = json{{"predicate", which},
                                           {"bracket_lo", found->lo},
                                           {"bracket_hi", found->hi},
                                           {"root", found->root}};
            summary << "threshold(" << which << ") at " << spec.param << "=" << found->root << "\n";
        } else {
            out.report["threshold"] = nullptr;
            summary << "threshold(" << which << "): no crossing on the grid\n";
        }
    }

    summary << "swept " << spec.param << " over " << spec.grid.size() << " values\n";
    return out;
}

OptimizeOutput run_optimize(const RunConfig& cfg, std::ostream& summary)
{
    if (cfg.model != "sverirs") throw ConfigError("optimize requires the sverirs model");
    RunConfig vcfg = cfg;
    if (!vcfg.params.contains("phi")) vcfg.params["phi"] = 1.0; // placeholder; u replaces phi
    const ModelParams p = params_from_config(vcfg);

    ControlProblem prob;
    prob.params = std::get<SverirsParams>(p);
    prob.horizon = num_or(cfg.options, "horizon", prob.horizon);
    prob.u_min = num_or(cfg.options, "u_min", prob.u_min);
    prob.u_max = num_or(cfg.options, "u_max", prob.u_max);
    prob.intervals = static_cast<int>(num_or(cfg.options, "intervals", prob.intervals));
    prob.max_iterations = static_cast<int>(num_or(cfg.options, "max_iterations", prob.max_iterations));
    prob.rel_tol = num_or(cfg.options, "rel_tol", prob.rel_tol);
    prob.abs_tol = num_or(cfg.options, "abs_tol", prob.abs_tol);
    prob.cost = cost_kind_from_string(cfg.options.value("cost", "J2"));

    if (!cfg.options.contains("x0")) throw ConfigError("optimize needs options.x0");
    prob.x0 = state_from_json(cfg.options["x0"], 5);

    const ControlSolution sol = optimize(prob);

    OptimizeOutput out;
    std::ostringstream csv;
    write_schedule_csv(csv, sol.schedule);
    out.schedule_csv = csv.str();

    out.report = json{{"config", config_echo(cfg, "optimize")},
                      {"problem",
                       json{{"cost", to_string(prob.cost)},
                            {"horizon", prob.horizon},
                            {"u_min", prob.u_min},
                            {"u_max", prob.u_max},
                            {"intervals", prob.intervals},
                            {"x0", state_to_json(prob.x0)}}},
                      {"cost", sol.cost},
                      {"converged", sol.converged},
                      {"iterations", sol.iterations},
                      {"cost_history", sol.cost_history},
                      {"schedule", json{{"breakpoints", sol.schedule.breakpoints},
                                        {"values", sol.schedule.values}}}};

    summary << "optimize " << to_string(prob.cost) << ": cost=" << sol.cost
            << (sol.converged ? " (converged)" : " (iteration limit or stall)") << "\n";
    return out;
}

namespace {

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream of(path);
    if (!of) throw ConfigError("cannot write output file: " + path);
    of << text;
}

struct CommonArgs {
    std::string config_path;
    std::vector<std::string> sets;
    std::string out_path;
    std::string format; // "json" or "csv"; empty means the command default
};

void add_common(CLI::App* sub, CommonArgs& args, bool config_required = true)
{
    auto* opt = sub->add_option("--config", args.config_path, "run configuration JSON");
    if (config_required) opt->required();
    sub->add_option("--set", args.sets, "override a parameter, name=value (repeatable)");
    sub->add_option("--out", args.out_path, "write the primary artifact here");
    sub->add_option("--format", args.format, "artifact format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"SE(R)IRS / SVE(R)IRS epidemic model analysis"};
    app.require_subcommand(1);

    CommonArgs r0_args, eq_args, st_args, sim_args, sweep_args, opt_args;
    std::string distance_out, schedule_out;

    auto* sub_r0 = app.add_subcommand("r0", "basic reproductive number and thresholds");
    add_common(sub_r0, r0_args);
    auto* sub_eq = app.add_subcommand("equilibria", "disease-free and endemic points");
    add_common(sub_eq, eq_args);
    auto* sub_st = app.add_subcommand("stability", "eigenvalues and classification per equilibrium");
    add_common(sub_st, st_args);
    auto* sub_sim = app.add_subcommand("simulate", "integrate the model and emit a trajectory CSV");
    add_common(sub_sim, sim_args);
    sub_sim->add_option("--distance-out", distance_out, "companion distance-to-target CSV");
    auto* sub_sweep = app.add_subcommand("sweep", "evaluate a parameter grid");
    add_common(sub_sweep, sweep_args);
    auto* sub_opt = app.add_subcommand("optimize", "optimize a vaccination schedule");
    add_common(sub_opt, opt_args);
    sub_opt->add_option("--schedule-out", schedule_out, "write the schedule CSV here");
    app.add_subcommand("reproduce", "re-run the bundled worked examples and diff them");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    try {
        const auto json_only = [](const CommonArgs& args, const char* cmd) {
            if (args.format == "csv")
                throw ConfigError(std::string(cmd) + " has no CSV artifact; use --format json");
        };
        if (app.got_subcommand("r0")) {
            json_only(r0_args, "r0");
            const RunConfig cfg = load_config(r0_args.config_path, r0_args.sets);
            const json report = run_r0(cfg, out);
            if (!r0_args.out_path.empty()) write_file(r0_args.out_path, report.dump(2) + "\n");
        } else if (app.got_subcommand("equilibria")) {
            json_only(eq_args, "equilibria");
            const RunConfig cfg = load_config(eq_args.config_path, eq_args.sets);
            const json report = run_equilibria(cfg, out);
            if (!eq_args.out_path.empty()) write_file(eq_args.out_path, report.dump(2) + "\n");
        } else if (app.got_subcommand("stability")) {
            json_only(st_args, "stability");
            const RunConfig cfg = load_config(st_args.config_path, st_args.sets);
            const json report = run_stability(cfg, out);
            if (!st_args.out_path.empty()) write_file(st_args.out_path, report.dump(2) + "\n");
        } else if (app.got_subcommand("simulate")) {
            const RunConfig cfg = load_config(sim_args.config_path, sim_args.sets);
            SimulateOutput res = run_simulate(cfg, out);
            if (!sim_args.out_path.empty()) {
                if (sim_args.format == "json") {
                    write_file(sim_args.out_path, res.report.dump(2) + "\n");
                } else {
                    write_file(sim_args.out_path, res.trajectory_csv);
                }
            }
            if (!distance_out.empty()) {
                if (res.distance_csv.empty())
                    throw ConfigError("--distance-out needs options.distance_target in the config");
                write_file(distance_out, res.distance_csv);
            }
        } else if (app.got_subcommand("sweep")) {
            const RunConfig cfg = load_config(sweep_args.config_path, sweep_args.sets);
            SweepOutput res = run_sweep_cmd(cfg, out);
            if (!sweep_args.out_path.empty()) {
                if (sweep_args.format == "json") {
                    write_file(sweep_args.out_path, res.report.dump(2) + "\n");
                } else {
                    write_file(sweep_args.out_path, res.csv);
                }
            }
        } else if (app.got_subcommand("optimize")) {
            const RunConfig cfg = load_config(opt_args.config_path, opt_args.sets);
            OptimizeOutput res = run_optimize(cfg, out);
            if (!opt_args.out_path.empty()) {
                if (opt_args.format == "csv") {
                    write_file(opt_args.out_path, res.schedule_csv);
                } else {
                    write_file(opt_args.out_path, res.report.dump(2) + "\n");
                }
            }
            if (!schedule_out.empty()) write_file(schedule_out, res.schedule_csv);
        } else if (app.got_subcommand("reproduce")) {
            const int failures = run_reproduce(out);
            return failures == 0 ? 0 : 3;
        }
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        // Wrong types or missing fields inside an otherwise-parsable config.
        err << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << "\n";
        return 3;
    }
    return 0;
}

int run_cli(int argc, const char* const* argv)
{
    return run_cli(argc, argv, std::cout, std::cerr);
}

} // namespace epidyn
