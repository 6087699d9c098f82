#pragma once

#include <string>

namespace substefan::cli {

enum class OutputFormat { csv, json };

/// Blend-parameter policy requested on the command line: the network
/// prediction, a fixed value, or on-the-fly calibration.
struct PhiModeSpec {
    enum class Kind { network, fixed, calibrate };
    Kind kind = Kind::network;
    double value = 1.0;
};

/// Parse "network", "calibrate", or a numeric literal in [0, 1].
PhiModeSpec parse_phi_mode(const std::string& text);

/// Fully resolved invocation of one subcommand.
struct RunConfig {
    std::string command;
    double alpha = 0.5;
    double lambda = 1.0 / 3.0;
    int m = 80;
    int n = 240;
    double tau0_factor = 1e-3;
    PhiModeSpec phi;
    double epsilon = 1e-3;
    double tol = 1e-10;
    std::string out;  ///< output path; empty writes to stdout
    OutputFormat format = OutputFormat::csv;
    // command-specific inputs
    double z = 0.0;
    double gamma = 0.0;
    double delta = 1.0;
    double tau_query = -1.0;  ///< profile layer time; negative selects the end time
    double delta_u = 0.0;     ///< overrides 1/m for predict-phi when positive
    bool verbose = false;
};

struct CommandResult {
    bool ok = true;         ///< false when any requested cell or row failed
    std::string payload;    ///< rendered CSV or JSON document
    std::string log;        ///< human-readable notes (verbose diagnostics)
};

/// Execute one subcommand. Deterministic: equal configs yield byte-identical
/// payloads.
CommandResult run_command(const RunConfig& cfg);

/// Number formatting used for all CSV payloads: 9 significant digits,
/// locale-independent.
std::string format_sig9(double v);

/// Full command-line entry point: parses flags (optionally merged over a JSON
/// config file; explicit flags win), runs the subcommand, writes the payload.
int run_cli(int argc, const char* const* argv);

}  // namespace substefan::cli
