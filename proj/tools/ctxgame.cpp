// ctxgame: bounds, feasibility verdicts and game reports for qubit
// contextuality scenarios. See README.md for the exit-code table.

#include <iostream>

#include <CLI11.hpp>

#include "ctx/errors.hpp"
#include "ctx/report.hpp"

namespace {

void add_common(CLI::App* cmd, ctx::RunConfig& cfg, std::string& format) {
    cmd->add_option("--scenario", cfg.scenario, "catalog id (33, nn:<n>, 43, 34, 44) or scenario JSON path");
    cmd->add_option("--n", cfg.n, "odd n for --scenario nn");
    cmd->add_option("--restarts", cfg.restarts, "seesaw restarts")->check(CLI::NonNegativeNumber);
    cmd->add_option("--seed", cfg.seed, "seed for the seesaw generator");
    cmd->add_option("--tol", cfg.tol, "tolerance for floating-point checks")->check(CLI::PositiveNumber);
    cmd->add_option("--format", format, "json, csv or table")->check(CLI::IsMember({"json", "csv", "table"}));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bounds and feasibility checks for qubit contextuality games"};
    app.require_subcommand(1);

    ctx::RunConfig cfg;
    std::string format = "json";
    std::string side = "preparation";
    std::string mode = "indeterministic";

    auto* bounds = app.add_subcommand("bounds", "local, constrained and quantum bounds of a scenario");
    add_common(bounds, cfg, format);

    auto* logic = app.add_subcommand("logic", "exact feasibility of noncontextual models (exit 1 = infeasible)");
    add_common(logic, cfg, format);
    logic->add_option("--side", side, "preparation or measurement")
        ->check(CLI::IsMember({"preparation", "measurement"}));
    logic->add_option("--mode", mode, "deterministic or indeterministic")
        ->check(CLI::IsMember({"deterministic", "indeterministic"}));

    auto* game = app.add_subcommand("game", "success probabilities and the non-classicality window");
    add_common(game, cfg, format);

    auto* report = app.add_subcommand("report", "run the whole catalog against its expected values");
    add_common(report, cfg, format);

    auto* scenario = app.add_subcommand("scenario", "list or dump catalog scenarios");
    scenario->add_flag("--list", cfg.list, "list catalog ids");
    scenario->add_option("--dump", cfg.dump, "print a scenario as JSON");
    scenario->add_option("--n", cfg.n, "odd n for --dump nn");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    cfg.command = app.get_subcommands().front()->get_name();
    cfg.format = ctx::parse_output_format(format);
    cfg.side = side == "measurement" ? ctx::Side::measurement : ctx::Side::preparation;
    cfg.mode = ctx::parse_response_mode(mode);
    if (cfg.command != "scenario" && cfg.command != "report" && cfg.scenario.empty()) {
        std::cerr << "error: --scenario is required\n";
        return 2;
    }
    if (cfg.command == "scenario" && cfg.dump == "nn" && cfg.n) cfg.dump = "nn:" + std::to_string(*cfg.n);
    return ctx::run_command(cfg, std::cout, std::cerr);
}
