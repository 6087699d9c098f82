#include "substefan/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "substefan/analytic.hpp"
#include "substefan/errors.hpp"
#include "substefan/model.hpp"
#include "substefan/p_iter.hpp"
#include "substefan/phi_net.hpp"
#include "substefan/scheme.hpp"
#include "substefan/special.hpp"

namespace substefan::cli {

namespace {

using nlohmann::ordered_json;

constexpr double kLambdas[] = {1.0 / 3.0, 2.0 / 3.0, 1.0};
constexpr double kAlphas[] = {0.25, 0.5, 0.75, 1.0};

std::string csv_line(const std::vector<std::string>& cells) {
    std::string line;
    for (size_t i = 0; i < cells.size(); ++i) {
        if (i) line += ',';
        line += cells[i];
    }
    line += '\n';
    return line;
}

struct PhiResolution {
    double value;
    std::string source;  // "network", "fixed", "calibrated"
};

PhiResolution resolve_phi(const RunConfig& cfg, const ModelParams& params, const MeshSpec& mesh,
                          double p_exact) {
    switch (cfg.phi.kind) {
        case PhiModeSpec::Kind::network:
            return {predict_phi(1.0 / cfg.m, params.lambda, params.alpha), "network"};
        case PhiModeSpec::Kind::fixed:
            return {cfg.phi.value, "fixed"};
        case PhiModeSpec::Kind::calibrate:
            return {calibrate_phi(params, mesh, p_exact), "calibrated"};
    }
    throw std::logic_error("unreachable phi mode");
}

PhiChoice to_phi_choice(const PhiModeSpec& spec) {
    if (spec.kind == PhiModeSpec::Kind::network) return PhiChoice::network();
    if (spec.kind == PhiModeSpec::Kind::fixed) return PhiChoice::fixed(spec.value);
    throw std::invalid_argument("this command supports --phi network or a fixed value only");
}

// ---------------------------------------------------------------------------
// table commands

struct TableCell {
    double lambda = 0.0;
    double alpha = 0.0;
    bool ok = false;
    double p = 0.0;
    double phi = 0.0;
    double residual = 0.0;
    int iterations = 0;
    std::string error;
};

CommandResult render_table(const RunConfig& cfg, const std::string& command,
                           const std::vector<TableCell>& cells, bool with_phi) {
    CommandResult out;
    for (const auto& cell : cells) {
        if (!cell.ok) out.ok = false;
    }
    if (cfg.format == OutputFormat::csv) {
        std::vector<std::string> header = {"lambda", "alpha", "p"};
        if (with_phi) header.push_back("phi");
        header.insert(header.end(), {"residual", "iterations", "status"});
        std::string text = csv_line(header);
        for (const auto& cell : cells) {
            std::vector<std::string> row = {format_sig9(cell.lambda), format_sig9(cell.alpha)};
            if (cell.ok) {
                row.push_back(format_sig9(cell.p));
                if (with_phi) row.push_back(format_sig9(cell.phi));
                row.push_back(format_sig9(cell.residual));
                row.push_back(std::to_string(cell.iterations));
                row.push_back("ok");
            } else {
                row.push_back("");
                if (with_phi) row.push_back("");
                row.push_back("");
                row.push_back("");
                row.push_back("failed");
            }
            text += csv_line(row);
        }
        out.payload = std::move(text);
    } else {
        ordered_json doc;
        doc["command"] = command;
        ordered_json rows = ordered_json::array();
        for (const auto& cell : cells) {
            ordered_json row;
            row["lambda"] = cell.lambda;
            row["alpha"] = cell.alpha;
            if (cell.ok) {
                row["p"] = cell.p;
                if (with_phi) row["phi"] = cell.phi;
                row["residual"] = cell.residual;
                row["iterations"] = cell.iterations;
                row["status"] = "ok";
            } else {
                row["status"] = "failed";
                row["error"] = cell.error;
            }
            rows.push_back(std::move(row));
        }
        doc["cells"] = std::move(rows);
        out.payload = doc.dump(2) + "\n";
    }
    return out;
}

CommandResult run_table1(const RunConfig& cfg) {
    std::vector<TableCell> cells;
    for (double lambda : kLambdas) {
        for (double alpha : kAlphas) {
            TableCell cell;
            cell.lambda = lambda;
            cell.alpha = alpha;
            try {
                const FrontResult fr = solve_p_transcendental({alpha, lambda, {}}, cfg.tol);
                cell.ok = true;
                cell.p = fr.p;
                cell.residual = fr.residual;
                cell.iterations = fr.iterations;
            } catch (const std::exception& e) {
                cell.error = e.what();
            }
            cells.push_back(cell);
        }
    }
    return render_table(cfg, "table1", cells, /*with_phi=*/false);
}

CommandResult run_tables23(const RunConfig& cfg, PhiChoice choice, const std::string& command) {
    PIterConfig iter_cfg;
    iter_cfg.epsilon = cfg.epsilon;
    std::vector<TableCell> cells;
    for (double lambda : kLambdas) {
        for (double alpha : kAlphas) {
            TableCell cell;
            cell.lambda = lambda;
            cell.alpha = alpha;
            try {
                const ModelParams params{alpha, lambda, {}};
                cell.phi = choice.kind == PhiChoice::Kind::network
                               ? predict_phi(1.0 / cfg.m, lambda, alpha)
                               : choice.value;
                const FrontResult fr = find_p(params, cfg.m, cfg.n, choice, iter_cfg, cfg.tau0_factor);
                cell.ok = true;
                cell.p = fr.p;
                cell.residual = fr.residual;
                cell.iterations = fr.iterations;
            } catch (const std::exception& e) {
                cell.error = e.what();
            }
            cells.push_back(cell);
        }
    }
    return render_table(cfg, command, cells, /*with_phi=*/true);
}

// ---------------------------------------------------------------------------
// grid-valued commands

CommandResult run_error_grid(const RunConfig& cfg) {
    const ModelParams params{cfg.alpha, cfg.lambda, {}};
    const FrontResult fr = solve_p_transcendental(params, cfg.tol);
    const MeshSpec mesh = build_mesh(cfg.m, cfg.n, fr.p, cfg.alpha, cfg.tau0_factor);
    const PhiResolution phi = resolve_phi(cfg, params, mesh, fr.p);
    const SolutionGrid grid = march(params, mesh, fr.p, phi.value);

    std::vector<double> profile(cfg.m + 1);
    for (int i = 0; i <= cfg.m; ++i) {
        profile[i] = exact_concentration(i * mesh.delta_u * fr.p, 1.0, fr.p, cfg.alpha);
    }

    double max_err = 0.0;
    double sum_err = 0.0;
    const long node_count = static_cast<long>(cfg.m + 1) * (cfg.n + 1);

    CommandResult out;
    if (cfg.format == OutputFormat::csv) {
        std::string text = csv_line({"kind", "u", "tau", "x", "c_num", "c_exact", "abs_err"});
        text.reserve(static_cast<size_t>(node_count) * 64);
        for (int j = 0; j <= cfg.n; ++j) {
            const double tau = mesh.tau(j);
            const double tau_alpha = std::pow(tau, cfg.alpha);
            const double front = fr.p * std::pow(tau, cfg.alpha / 2.0);
            for (int i = 0; i <= cfg.m; ++i) {
                const double u = i * mesh.delta_u;
                const double c_num = grid.cbar(i, j) * tau_alpha;
                const double err = std::abs(c_num - profile[i]);
                max_err = std::max(max_err, err);
                sum_err += err;
                text += csv_line({"node", format_sig9(u), format_sig9(tau), format_sig9(u * front),
                                  format_sig9(c_num), format_sig9(profile[i]), format_sig9(err)});
            }
        }
        text += csv_line({"max_abs_err", "", "", "", "", "", format_sig9(max_err)});
        text += csv_line({"mean_abs_err", "", "", "", "", "", format_sig9(sum_err / node_count)});
        out.payload = std::move(text);
    } else {
        ordered_json doc;
        doc["command"] = "error-grid";
        doc["lambda"] = cfg.lambda;
        doc["alpha"] = cfg.alpha;
        doc["m"] = cfg.m;
        doc["n"] = cfg.n;
        doc["phi"] = phi.value;
        doc["phi_source"] = phi.source;
        doc["p"] = fr.p;
        ordered_json rows = ordered_json::array();
        for (int j = 0; j <= cfg.n; ++j) {
            const double tau = mesh.tau(j);
            const double tau_alpha = std::pow(tau, cfg.alpha);
            const double front = fr.p * std::pow(tau, cfg.alpha / 2.0);
            for (int i = 0; i <= cfg.m; ++i) {
                const double u = i * mesh.delta_u;
                const double c_num = grid.cbar(i, j) * tau_alpha;
                const double err = std::abs(c_num - profile[i]);
                max_err = std::max(max_err, err);
                sum_err += err;
                rows.push_back({{"u", u},
                                {"tau", tau},
                                {"x", u * front},
                                {"c_num", c_num},
                                {"c_exact", profile[i]},
                                {"abs_err", err}});
            }
        }
        doc["rows"] = std::move(rows);
        doc["summary"] = {{"max_abs_err", max_err}, {"mean_abs_err", sum_err / node_count}};
        out.payload = doc.dump(2) + "\n";
    }
    return out;
}

CommandResult run_profile(const RunConfig& cfg) {
    const ModelParams params{cfg.alpha, cfg.lambda, {}};
    const FrontResult fr = solve_p_transcendental(params, cfg.tol);
    const MeshSpec mesh = build_mesh(cfg.m, cfg.n, fr.p, cfg.alpha, cfg.tau0_factor);
    if (cfg.tau_query > mesh.tau_star * (1.0 + 1e-12)) {
        throw std::invalid_argument("profile: requested tau exceeds the end time");
    }
    const PhiResolution phi = resolve_phi(cfg, params, mesh, fr.p);
    const SolutionGrid grid = march(params, mesh, fr.p, phi.value);

    int layer = cfg.n;
    if (cfg.tau_query >= 0.0) {
        double best = std::abs(mesh.tau(0) - cfg.tau_query);
        layer = 0;
        for (int j = 1; j <= cfg.n; ++j) {
            const double dist = std::abs(mesh.tau(j) - cfg.tau_query);
            if (dist < best) {
                best = dist;
                layer = j;
            }
        }
    }
    const double tau = mesh.tau(layer);
    const double tau_alpha = std::pow(tau, cfg.alpha);
    const double front = fr.p * std::pow(tau, cfg.alpha / 2.0);

    CommandResult out;
    if (cfg.format == OutputFormat::csv) {
        std::string text = csv_line({"tau", "x", "c_num", "c_exact"});
        for (int i = 0; i <= cfg.m; ++i) {
            const double u = i * mesh.delta_u;
            const double c_exact = exact_concentration(u * fr.p, 1.0, fr.p, cfg.alpha);
            text += csv_line({format_sig9(tau), format_sig9(u * front),
                              format_sig9(grid.cbar(i, layer) * tau_alpha), format_sig9(c_exact)});
        }
        out.payload = std::move(text);
    } else {
        ordered_json doc;
        doc["command"] = "profile";
        doc["lambda"] = cfg.lambda;
        doc["alpha"] = cfg.alpha;
        doc["tau"] = tau;
        doc["phi"] = phi.value;
        doc["p"] = fr.p;
        ordered_json rows = ordered_json::array();
        for (int i = 0; i <= cfg.m; ++i) {
            const double u = i * mesh.delta_u;
            rows.push_back({{"x", u * front},
                            {"c_num", grid.cbar(i, layer) * tau_alpha},
                            {"c_exact", exact_concentration(u * fr.p, 1.0, fr.p, cfg.alpha)}});
        }
        doc["rows"] = std::move(rows);
        out.payload = doc.dump(2) + "\n";
    }
    return out;
}

CommandResult run_front(const RunConfig& cfg) {
    const ModelParams params{cfg.alpha, cfg.lambda, {}};
    const FrontResult exact = solve_p_transcendental(params, cfg.tol);
    PIterConfig iter_cfg;
    iter_cfg.epsilon = cfg.epsilon;
    const FrontResult found =
        find_p(params, cfg.m, cfg.n, to_phi_choice(cfg.phi), iter_cfg, cfg.tau0_factor);
    const MeshSpec mesh = build_mesh(cfg.m, cfg.n, exact.p, cfg.alpha, cfg.tau0_factor);

    CommandResult out;
    if (cfg.format == OutputFormat::csv) {
        std::string text = csv_line({"tau", "s_num", "s_exact"});
        for (int j = 0; j <= cfg.n; ++j) {
            const double tau = j * mesh.delta_tau;  // front positions start from s(0) = 0
            const double power = std::pow(tau, cfg.alpha / 2.0);
            text += csv_line({format_sig9(tau), format_sig9(found.p * power),
                              format_sig9(exact.p * power)});
        }
        out.payload = std::move(text);
    } else {
        ordered_json doc;
        doc["command"] = "front";
        doc["lambda"] = cfg.lambda;
        doc["alpha"] = cfg.alpha;
        doc["p_num"] = found.p;
        doc["p_exact"] = exact.p;
        ordered_json rows = ordered_json::array();
        for (int j = 0; j <= cfg.n; ++j) {
            const double tau = j * mesh.delta_tau;
            const double power = std::pow(tau, cfg.alpha / 2.0);
            rows.push_back(
                {{"tau", tau}, {"s_num", found.p * power}, {"s_exact", exact.p * power}});
        }
        doc["rows"] = std::move(rows);
        out.payload = doc.dump(2) + "\n";
    }
    return out;
}

// ---------------------------------------------------------------------------
// single-value commands

CommandResult run_find_p(const RunConfig& cfg) {
    const ModelParams params{cfg.alpha, cfg.lambda, {}};
    PIterConfig iter_cfg;
    iter_cfg.epsilon = cfg.epsilon;
    const PhiChoice choice = to_phi_choice(cfg.phi);
    const double phi = choice.kind == PhiChoice::Kind::network
                           ? predict_phi(1.0 / cfg.m, cfg.lambda, cfg.alpha)
                           : choice.value;
    const FrontResult fr = find_p(params, cfg.m, cfg.n, choice, iter_cfg, cfg.tau0_factor);

    CommandResult out;
    if (cfg.verbose) {
        // Estimator sensitivity to the regularized initial layer: the layer-0
        // term of the average contributes zero, so dropping it rescales the
        // mean by (n+1)/n.
        const MeshSpec mesh = build_mesh(cfg.m, cfg.n, fr.p, cfg.alpha, cfg.tau0_factor);
        const SolutionGrid grid = march(params, mesh, fr.p, phi);
        const double excl = estimate_p_from_grid(grid, cfg.lambda) * (cfg.n + 1.0) / cfg.n;
        out.log = "estimate at p* excluding the initial layer: " + format_sig9(excl) + "\n";
    }
    if (cfg.format == OutputFormat::csv) {
        std::string text = csv_line({"lambda", "alpha", "phi", "p", "residual", "iterations", "status"});
        text += csv_line({format_sig9(cfg.lambda), format_sig9(cfg.alpha), format_sig9(phi),
                          format_sig9(fr.p), format_sig9(fr.residual), std::to_string(fr.iterations),
                          "ok"});
        out.payload = std::move(text);
    } else {
        ordered_json doc;
        doc["command"] = "find-p";
        doc["lambda"] = cfg.lambda;
        doc["alpha"] = cfg.alpha;
        doc["phi"] = phi;
        doc["p"] = fr.p;
        doc["residual"] = fr.residual;
        doc["iterations"] = fr.iterations;
        ordered_json trace = ordered_json::array();
        for (const auto& entry : fr.trace) {
            trace.push_back(
                {{"p", entry.p}, {"phi_of_p", entry.phi_of_p}, {"residual", entry.residual}});
        }
        doc["trace"] = std::move(trace);
        out.payload = doc.dump(2) + "\n";
    }
    return out;
}

CommandResult run_solve_p(const RunConfig& cfg) {
    const FrontResult fr = solve_p_transcendental({cfg.alpha, cfg.lambda, {}}, cfg.tol);
    CommandResult out;
    if (cfg.format == OutputFormat::csv) {
        std::string text = csv_line({"lambda", "alpha", "p", "residual", "iterations", "status"});
        text += csv_line({format_sig9(cfg.lambda), format_sig9(cfg.alpha), format_sig9(fr.p),
                          format_sig9(fr.residual), std::to_string(fr.iterations), "ok"});
        out.payload = std::move(text);
    } else {
        ordered_json doc;
        doc["command"] = "solve-p";
        doc["lambda"] = cfg.lambda;
        doc["alpha"] = cfg.alpha;
        doc["p"] = fr.p;
        doc["residual"] = fr.residual;
        doc["iterations"] = fr.iterations;
        out.payload = doc.dump(2) + "\n";
    }
    return out;
}

CommandResult run_predict_phi(const RunConfig& cfg) {
    const double du = cfg.delta_u > 0.0 ? cfg.delta_u : 1.0 / cfg.m;
    const double phi = predict_phi(du, cfg.lambda, cfg.alpha);
    CommandResult out;
    if (cfg.format == OutputFormat::csv) {
        std::string text = csv_line({"delta_u", "lambda", "alpha", "phi"});
        text += csv_line(
            {format_sig9(du), format_sig9(cfg.lambda), format_sig9(cfg.alpha), format_sig9(phi)});
        out.payload = std::move(text);
    } else {
        ordered_json doc;
        doc["command"] = "predict-phi";
        doc["delta_u"] = du;
        doc["lambda"] = cfg.lambda;
        doc["alpha"] = cfg.alpha;
        doc["phi"] = phi;
        out.payload = doc.dump(2) + "\n";
    }
    return out;
}

CommandResult run_calibrate_phi(const RunConfig& cfg) {
    const ModelParams params{cfg.alpha, cfg.lambda, {}};
    const FrontResult fr = solve_p_transcendental(params, cfg.tol);
    const MeshSpec mesh = build_mesh(cfg.m, cfg.n, fr.p, cfg.alpha, cfg.tau0_factor);
    const double phi_star = calibrate_phi(params, mesh, fr.p);
    const double f_star = calibration_objective(params, mesh, fr.p, phi_star);

    CommandResult out;
    if (cfg.format == OutputFormat::csv) {
        std::string text =
            csv_line({"lambda", "alpha", "m", "n", "p_exact", "phi_star", "objective"});
        text += csv_line({format_sig9(cfg.lambda), format_sig9(cfg.alpha), std::to_string(cfg.m),
                          std::to_string(cfg.n), format_sig9(fr.p), format_sig9(phi_star),
                          format_sig9(f_star)});
        out.payload = std::move(text);
    } else {
        ordered_json doc;
        doc["command"] = "calibrate-phi";
        doc["lambda"] = cfg.lambda;
        doc["alpha"] = cfg.alpha;
        doc["m"] = cfg.m;
        doc["n"] = cfg.n;
        doc["p_exact"] = fr.p;
        doc["phi_star"] = phi_star;
        doc["objective"] = f_star;
        out.payload = doc.dump(2) + "\n";
    }
    return out;
}

CommandResult run_wright(const RunConfig& cfg) {
    const double value = wright(cfg.z, cfg.gamma, cfg.delta);
    CommandResult out;
    if (cfg.format == OutputFormat::csv) {
        std::string text = csv_line({"z", "gamma", "delta", "value"});
        text += csv_line({format_sig9(cfg.z), format_sig9(cfg.gamma), format_sig9(cfg.delta),
                          format_sig9(value)});
        out.payload = std::move(text);
    } else {
        ordered_json doc;
        doc["command"] = "wright";
        doc["z"] = cfg.z;
        doc["gamma"] = cfg.gamma;
        doc["delta"] = cfg.delta;
        doc["value"] = value;
        out.payload = doc.dump(2) + "\n";
    }
    return out;
}

CommandResult run_export_weights(const RunConfig&) {
    CommandResult out;
    out.payload = weights_json();
    return out;
}

}  // namespace

PhiModeSpec parse_phi_mode(const std::string& text) {
    if (text == "network") return {PhiModeSpec::Kind::network, 0.0};
    if (text == "calibrate") return {PhiModeSpec::Kind::calibrate, 0.0};
    size_t consumed = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &consumed);
    } catch (const std::exception&) {
        throw std::invalid_argument("--phi expects 'network', 'calibrate', or a number");
    }
    if (consumed != text.size() || !(value >= 0.0 && value <= 1.0)) {
        throw std::invalid_argument("--phi numeric value must lie in [0, 1]");
    }
    return {PhiModeSpec::Kind::fixed, value};
}

std::string format_sig9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

CommandResult run_command(const RunConfig& cfg) {
    if (cfg.command == "table1") return run_table1(cfg);
    if (cfg.command == "table2") return run_tables23(cfg, PhiChoice::fixed(1.0), "table2");
    if (cfg.command == "table3") return run_tables23(cfg, PhiChoice::network(), "table3");
    if (cfg.command == "error-grid") return run_error_grid(cfg);
    if (cfg.command == "profile") return run_profile(cfg);
    if (cfg.command == "front") return run_front(cfg);
    if (cfg.command == "find-p") return run_find_p(cfg);
    if (cfg.command == "solve-p") return run_solve_p(cfg);
    if (cfg.command == "predict-phi") return run_predict_phi(cfg);
    if (cfg.command == "calibrate-phi") return run_calibrate_phi(cfg);
    if (cfg.command == "wright") return run_wright(cfg);
    if (cfg.command == "export-weights") return run_export_weights(cfg);
    throw std::invalid_argument("unknown command: " + cfg.command);
}

namespace {

struct CliState {
    RunConfig cfg;
    std::string phi_text = "network";
    std::string format_text = "csv";
    std::string config_path;
};

void add_common_options(CLI::App* sub, CliState& state) {
    sub->add_option("--alpha", state.cfg.alpha, "order of the time derivative, in (0, 1]");
    sub->add_option("--lambda", state.cfg.lambda, "fractional Stefan number");
    sub->add_option("--m", state.cfg.m, "spatial intervals");
    sub->add_option("--n", state.cfg.n, "time intervals");
    sub->add_option("--tau0-factor", state.cfg.tau0_factor,
                    "regularized initial time as a fraction of the time step");
    sub->add_option("--phi", state.phi_text, "blend parameter: network, calibrate, or a value");
    sub->add_option("--epsilon", state.cfg.epsilon, "iterative front solver criterion");
    sub->add_option("--tol", state.cfg.tol, "transcendental solver residual tolerance");
    sub->add_option("--out", state.cfg.out, "output path (default: stdout)");
    sub->add_option("--format", state.format_text, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--config", state.config_path, "JSON file with defaults; flags override");
    sub->add_flag("--verbose", state.cfg.verbose, "extra diagnostics on stderr");
}

void merge_config_file(CLI::App* sub, CliState& state) {
    if (state.config_path.empty()) return;
    std::ifstream in(state.config_path);
    if (!in) throw std::runtime_error("cannot open config file: " + state.config_path);
    nlohmann::json doc;
    in >> doc;

    const auto absent = [&](const std::string& flag) { return sub->count(flag) == 0; };
    if (doc.contains("alpha") && absent("--alpha")) state.cfg.alpha = doc["alpha"].get<double>();
    if (doc.contains("lambda") && absent("--lambda")) state.cfg.lambda = doc["lambda"].get<double>();
    if (doc.contains("m") && absent("--m")) state.cfg.m = doc["m"].get<int>();
    if (doc.contains("n") && absent("--n")) state.cfg.n = doc["n"].get<int>();
    if (doc.contains("tau0_factor") && absent("--tau0-factor")) {
        state.cfg.tau0_factor = doc["tau0_factor"].get<double>();
    }
    if (doc.contains("phi") && absent("--phi")) {
        state.phi_text = doc["phi"].is_number() ? format_sig9(doc["phi"].get<double>())
                                                : doc["phi"].get<std::string>();
    }
    if (doc.contains("epsilon") && absent("--epsilon")) state.cfg.epsilon = doc["epsilon"].get<double>();
    if (doc.contains("tol") && absent("--tol")) state.cfg.tol = doc["tol"].get<double>();
    if (doc.contains("out") && absent("--out")) state.cfg.out = doc["out"].get<std::string>();
    if (doc.contains("format") && absent("--format")) {
        state.format_text = doc["format"].get<std::string>();
    }
    if (doc.contains("z") && absent("--z")) state.cfg.z = doc["z"].get<double>();
    if (doc.contains("gamma") && absent("--gamma")) state.cfg.gamma = doc["gamma"].get<double>();
    if (doc.contains("delta") && absent("--delta")) state.cfg.delta = doc["delta"].get<double>();
    if (doc.contains("tau") && absent("--tau")) state.cfg.tau_query = doc["tau"].get<double>();
    if (doc.contains("delta_u") && absent("--delta-u")) state.cfg.delta_u = doc["delta_u"].get<double>();
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CliState state;
    CLI::App app{"fractional Stefan problem toolkit: closed-form solution, front-fixing scheme, "
                 "blend-parameter network, iterative front recovery"};
    app.require_subcommand(1);

    const struct {
        const char* name;
        const char* help;
    } kCommands[] = {
        {"table1", "front coefficients from the transcendental equation (3x4 parameter grid)"},
        {"table2", "front coefficients from the scheme with phi = 1 (3x4 parameter grid)"},
        {"table3", "front coefficients from the scheme with network phi (3x4 parameter grid)"},
        {"error-grid", "node-wise numerical vs closed-form concentration error"},
        {"profile", "concentration profile along one time layer"},
        {"front", "numerical and closed-form front trajectories"},
        {"find-p", "iterative front coefficient for one parameter set"},
        {"solve-p", "transcendental front coefficient for one parameter set"},
        {"predict-phi", "network blend-parameter prediction"},
        {"calibrate-phi", "blend parameter minimizing the deviation from the closed form"},
        {"wright", "evaluate the two-parameter Wright function"},
        {"export-weights", "network weight matrices as JSON"},
    };
    for (const auto& command : kCommands) {
        CLI::App* sub = app.add_subcommand(command.name, command.help);
        add_common_options(sub, state);
        if (std::string(command.name) == "wright") {
            sub->add_option("--z", state.cfg.z, "series argument");
            sub->add_option("--gamma", state.cfg.gamma, "first parameter, > -1");
            sub->add_option("--delta", state.cfg.delta, "second parameter");
        }
        if (std::string(command.name) == "profile") {
            sub->add_option("--tau", state.cfg.tau_query, "layer time (default: end time)");
        }
        if (std::string(command.name) == "predict-phi") {
            sub->add_option("--delta-u", state.cfg.delta_u, "spatial step (default: 1/m)");
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    CLI::App* sub = app.get_subcommands().front();
    try {
        merge_config_file(sub, state);
        state.cfg.command = sub->get_name();
        state.cfg.phi = parse_phi_mode(state.phi_text);
        state.cfg.format = state.format_text == "json" ? OutputFormat::json : OutputFormat::csv;

        const CommandResult result = run_command(state.cfg);
        if (!result.log.empty()) std::cerr << result.log;
        if (state.cfg.out.empty()) {
            std::cout << result.payload;
        } else {
            std::ofstream file(state.cfg.out, std::ios::binary);
            if (!file) throw std::runtime_error("cannot open output file: " + state.cfg.out);
            file << result.payload;
        }
        return result.ok ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace substefan::cli
