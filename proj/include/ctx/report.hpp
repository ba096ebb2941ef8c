#pragma once

// Command implementations behind the ctxgame executable. Each command writes
// its result to `out`, diagnostics to `err`, and returns the process exit code.
//
//   bounds   0 ok, 2 bad arguments, 3 scenario fails validation
//   logic    0 feasible, 1 infeasible, 2 bad arguments, 3 scenario problems
//   game     as bounds
//   report   0 all checks pass, 4 some expected value missed
//   scenario 0 ok, 2 bad arguments

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ctx/bounds.hpp"
#include "ctx/catalog.hpp"
#include "ctx/game.hpp"
#include "ctx/ontology.hpp"

namespace ctx {

enum class OutputFormat { json, csv, table };
OutputFormat parse_output_format(std::string_view name);

struct RunConfig {
    std::string command;
    std::string scenario;
    std::optional<int> n;
    Side side = Side::preparation;
    ResponseMode mode = ResponseMode::indeterministic;
    std::size_t restarts = 20;
    std::uint64_t seed = 0;
    double tol = 1e-9;
    OutputFormat format = OutputFormat::json;
    bool list = false;
    std::string dump;
};

/// Everything computed about one scenario's Bell expression and Delta.
struct BoundReport {
    std::string id;
    OperationalScenario scenario;
    GameSpec game;
    BellExpression expr;
    LocalBound local;
    ConstrainedBound unc;
    std::string unc_label = "unc";
    /// Reference strategy (catalog) or the best seesaw strategy (custom files).
    QuantumStrategy strategy;
    double quantum = 0.0;
    std::optional<SeesawResult> seesaw;
    double delta_quantum = 0.0;
    std::optional<DeltaUncBound> delta_unc;
    GameReport game_report;
    std::optional<std::string> note;
};

struct Check {
    std::string name;
    std::string expected;
    std::string actual;
    bool pass = false;
};

/// Bounds for a catalog entry; the seesaw runs when restarts > 0.
BoundReport compute_bounds(const CatalogEntry& entry, std::size_t restarts, std::uint64_t seed);
/// Bounds for a scenario without a reference strategy: the seesaw supplies it.
BoundReport compute_bounds(const OperationalScenario& s, std::size_t restarts, std::uint64_t seed);

std::vector<Check> check_expected(const BoundReport& r, const Expected& e, double tol);

std::string bound_report_json(const BoundReport& r);
std::string game_report_json(const GameReport& g);
/// Shortest decimal that reads back to the same double.
std::string format_double(double v);

/// "33", "nn:5", "nn" with cfg.n, or a path to a scenario JSON file.
/// Throws UnknownKind / InvalidN for bad ids, ParseError / ValidationError for bad files.
struct ResolvedScenario {
    std::optional<CatalogEntry> entry;
    OperationalScenario scenario;
};
ResolvedScenario resolve_scenario(const RunConfig& cfg);

int cmd_bounds(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_logic(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_game(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_report(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_scenario(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace ctx
