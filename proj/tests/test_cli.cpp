#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <vector>

#include "substefan/analytic.hpp"
#include "substefan/cli.hpp"

using namespace substefan;
using namespace substefan::cli;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

}  // namespace

TEST_CASE("phi mode parsing") {
    CHECK(parse_phi_mode("network").kind == PhiModeSpec::Kind::network);
    CHECK(parse_phi_mode("calibrate").kind == PhiModeSpec::Kind::calibrate);
    const PhiModeSpec fixed = parse_phi_mode("0.5");
    CHECK(fixed.kind == PhiModeSpec::Kind::fixed);
    CHECK(fixed.value == 0.5);
    CHECK_THROWS_AS(parse_phi_mode("1.5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_phi_mode("nets"), std::invalid_argument);
    CHECK_THROWS_AS(parse_phi_mode("0.5x"), std::invalid_argument);
}

TEST_CASE("nine significant digits, locale independent") {
    CHECK(format_sig9(1.0 / 3.0) == "0.333333333");
    CHECK(format_sig9(0.25) == "0.25");
    CHECK(format_sig9(123456789.0) == "123456789");
    CHECK(format_sig9(0.0) == "0");
}

TEST_CASE("commands are deterministic") {
    RunConfig cfg;
    cfg.command = "wright";
    cfg.z = -0.5;
    cfg.gamma = -0.25;
    cfg.delta = 1.0;
    CHECK(run_command(cfg).payload == run_command(cfg).payload);

    RunConfig table;
    table.command = "table1";
    const auto first = run_command(table);
    const auto second = run_command(table);
    CHECK(first.ok);
    CHECK(first.payload == second.payload);
}

TEST_CASE("reference front-coefficient table layout") {
    RunConfig cfg;
    cfg.command = "table1";
    const auto result = run_command(cfg);
    const auto rows = lines_of(result.payload);
    REQUIRE(rows.size() == 13);
    CHECK(rows[0] == "lambda,alpha,p,residual,iterations,status");
    const auto first = split_csv(rows[1]);
    CHECK(first[0] == "0.333333333");
    CHECK(first[1] == "0.25");
    CHECK(std::abs(std::stod(first[2]) - 0.546438) < 5e-6);
    for (size_t i = 1; i < rows.size(); ++i) CHECK(split_csv(rows[i]).back() == "ok");
}

TEST_CASE("error grid boundaries and summary rows") {
    RunConfig cfg;
    cfg.command = "error-grid";
    cfg.alpha = 1.0;
    cfg.lambda = 1.0;
    cfg.m = 4;
    cfg.n = 8;
    cfg.phi = parse_phi_mode("1");
    const auto result = run_command(cfg);
    REQUIRE(result.ok);
    const auto rows = lines_of(result.payload);
    REQUIRE(rows.size() == 1 + 5 * 9 + 2);
    CHECK(rows[0] == "kind,u,tau,x,c_num,c_exact,abs_err");

    double max_err = 0.0;
    for (size_t i = 1; i + 2 < rows.size(); ++i) {
        const auto cells = split_csv(rows[i]);
        REQUIRE(cells.size() == 7);
        CHECK(cells[0] == "node");
        const double u = std::stod(cells[1]);
        const double tau = std::stod(cells[2]);
        const double err = std::stod(cells[6]);
        max_err = std::max(max_err, err);
        const bool initial_layer = i <= 5;  // first block is the regularized layer
        if (u == 0.0 && !initial_layer) CHECK(err == 0.0);
        if (u == 1.0 && tau > 0.01) CHECK(err < 1e-12);
    }
    const auto max_row = split_csv(rows[rows.size() - 2]);
    const auto mean_row = split_csv(rows[rows.size() - 1]);
    CHECK(max_row[0] == "max_abs_err");
    CHECK(mean_row[0] == "mean_abs_err");
    CHECK(std::stod(max_row.back()) == doctest::Approx(max_err).epsilon(1e-9));
    CHECK(std::stod(mean_row.back()) <= max_err);
}

TEST_CASE("profile endpoints") {
    RunConfig cfg;
    cfg.command = "profile";
    cfg.alpha = 0.5;
    cfg.lambda = 1.0 / 3.0;
    cfg.m = 10;
    cfg.n = 30;
    cfg.phi = parse_phi_mode("1");
    const auto result = run_command(cfg);
    const auto rows = lines_of(result.payload);
    REQUIRE(rows.size() == 12);
    CHECK(rows[0] == "tau,x,c_num,c_exact");
    const auto origin = split_csv(rows[1]);
    CHECK(std::stod(origin[1]) == 0.0);
    CHECK(std::stod(origin[2]) == 0.0);
    CHECK(std::stod(origin[3]) == 0.0);
    const auto edge = split_csv(rows.back());
    CHECK(std::stod(edge[2]) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::stod(edge[3]) == doctest::Approx(1.0).epsilon(1e-12));

    // interior reference column matches the closed-form solution
    const double p = solve_p_transcendental({cfg.alpha, cfg.lambda, {}}).p;
    const auto mid = split_csv(rows[6]);
    CHECK(std::stod(mid[3]) ==
          doctest::Approx(exact_concentration(0.5 * p, 1.0, p, cfg.alpha)).epsilon(1e-9));
}

TEST_CASE("front trajectories") {
    RunConfig cfg;
    cfg.command = "front";
    cfg.alpha = 1.0;
    cfg.lambda = 1.0 / 3.0;
    cfg.m = 10;
    cfg.n = 30;
    cfg.phi = parse_phi_mode("1");
    const auto result = run_command(cfg);
    const auto rows = lines_of(result.payload);
    REQUIRE(rows.size() == 32);
    CHECK(rows[0] == "tau,s_num,s_exact");
    const auto start = split_csv(rows[1]);
    CHECK(std::stod(start[0]) == 0.0);
    CHECK(std::stod(start[1]) == 0.0);
    CHECK(std::stod(start[2]) == 0.0);
    const auto end = split_csv(rows.back());
    CHECK(std::stod(end[2]) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("json output round-trips") {
    RunConfig cfg;
    cfg.command = "table1";
    cfg.format = OutputFormat::json;
    const auto result = run_command(cfg);
    const auto doc = nlohmann::ordered_json::parse(result.payload);
    CHECK(doc["command"] == "table1");
    CHECK(doc["cells"].size() == 12);
    CHECK(doc.dump(2) + "\n" == result.payload);

    RunConfig wright_cfg;
    wright_cfg.command = "wright";
    wright_cfg.z = 1.0;
    wright_cfg.format = OutputFormat::json;
    const auto wr = nlohmann::ordered_json::parse(run_command(wright_cfg).payload);
    CHECK(wr["value"].get<double>() == doctest::Approx(std::exp(1.0)).epsilon(1e-12));
}

TEST_CASE("config file fills unset flags only") {
    const std::string config_path = "test_cli_config.json";
    const std::string out_path = "test_cli_out.csv";
    {
        std::ofstream f(config_path);
        f << R"({"alpha": 0.75, "lambda": 0.25})";
    }
    const char* argv[] = {"substefan", "solve-p", "--config", config_path.c_str(),
                          "--lambda", "1.0",      "--out",    out_path.c_str()};
    CHECK(run_cli(8, argv) == 0);
    std::ifstream in(out_path);
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    const auto cells = split_csv(row);
    CHECK(cells[0] == "1");     // flag wins over the config file
    CHECK(cells[1] == "0.75");  // config fills the unset flag
    std::remove(config_path.c_str());
    std::remove(out_path.c_str());
}

TEST_CASE("unknown command is rejected") {
    RunConfig cfg;
    cfg.command = "nope";
    CHECK_THROWS_AS(run_command(cfg), std::invalid_argument);
}
