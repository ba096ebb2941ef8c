#include "ctx/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "ctx/errors.hpp"

namespace ctx {

using ojson = nlohmann::ordered_json;

OutputFormat parse_output_format(std::string_view name) {
    if (name == "json") return OutputFormat::json;
    if (name == "csv") return OutputFormat::csv;
    if (name == "table") return OutputFormat::table;
    throw UnknownKind("unknown output format '" + std::string(name) + "'");
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

// ------------------------------------------------------------- computing

namespace {

BoundReport assemble(std::string id, const OperationalScenario& s, QuantumStrategy strategy,
                     std::optional<SeesawResult> seesaw) {
    const GameSpec game = game_of(s);
    BellExpression expr = bell_of_game(game, "beta_" + id);
    LocalBound local = local_bound(expr);
    ConstrainedBound unc = constrained_bound(expr, alice_polytope(s), bob_polytope(s));
    const double quantum = quantum_value_at(expr, strategy.alice, strategy.bob, strategy.state);
    const double p_quantum = success_probability(game, strategy);
    GameReport gr = game_report(id, game, p_quantum, to_double(local.value), to_double(unc.value));

    BoundReport r{std::move(id), s,       game,     std::move(expr), std::move(local), std::move(unc), "unc",
                  std::move(strategy), quantum, std::move(seesaw), 0.0, std::nullopt, std::move(gr), std::nullopt};
    r.delta_quantum = delta_quantum(s);
    if (!s.equivalences_for(Side::measurement).empty()) r.delta_unc = delta_unc_bound(s);
    return r;
}

}  // namespace

BoundReport compute_bounds(const CatalogEntry& entry, std::size_t restarts, std::uint64_t seed) {
    std::optional<SeesawResult> seesaw;
    if (restarts > 0) seesaw = quantum_seesaw(bell_of_game(game_of(entry.scenario)), restarts, seed);
    BoundReport r = assemble(entry.id, entry.scenario, entry.strategy, std::move(seesaw));
    r.unc_label = entry.unc_label;
    r.note = entry.note;
    return r;
}

BoundReport compute_bounds(const OperationalScenario& s, std::size_t restarts, std::uint64_t seed) {
    SeesawResult ss = quantum_seesaw(bell_of_game(game_of(s)), std::max<std::size_t>(restarts, 1), seed);
    QuantumStrategy strategy{ss.alice, ss.bob, TwoQubitState::pure(ss.state), std::nullopt};
    return assemble(s.name, s, std::move(strategy), std::move(ss));
}

std::vector<Check> check_expected(const BoundReport& r, const Expected& e, double tol) {
    std::vector<Check> out;
    auto exact = [&](const char* name, const std::optional<Rational>& want, const Rational& got) {
        if (want) out.push_back({name, to_string(*want), to_string(got), *want == got});
    };
    auto approx = [&](const char* name, const std::optional<double>& want, double got, double t) {
        if (want) out.push_back({name, format_double(*want), format_double(got), std::abs(*want - got) <= t});
    };
    exact("local", e.local, r.local.value);
    exact(r.unc_label.c_str(), e.unc, r.unc.value);
    approx("quantum", e.quantum, r.quantum, tol);
    approx("p_quantum", e.p_quantum, r.game_report.p_quantum, tol);
    approx("p_local", e.p_local, r.game_report.p_local, tol);
    approx("p_unc", e.p_unc, r.game_report.p_unc, tol);
    if (e.delta_unc && r.delta_unc) exact("delta_unc", e.delta_unc, r.delta_unc->value);
    else if (e.delta_unc) out.push_back({"delta_unc", to_string(*e.delta_unc), "missing", false});
    approx("delta_quantum", 1.0, r.delta_quantum, 1e-12);
    if (e.window)
        out.push_back({"window", std::string(to_string(*e.window)), r.game_report.window.label(),
                       *e.window == r.game_report.window.tier});
    if (r.seesaw) {
        if (e.quantum)
            out.push_back({"seesaw", ">= " + format_double(*e.quantum - 1e-6), format_double(r.seesaw->value),
                           r.seesaw->value >= *e.quantum - 1e-6});
        if (e.seesaw_at_most)
            out.push_back({"seesaw", "<= " + format_double(*e.seesaw_at_most + 1e-8), format_double(r.seesaw->value),
                           r.seesaw->value <= *e.seesaw_at_most + 1e-8});
        out.push_back({"seesaw_monotone", "true", r.seesaw->monotone ? "true" : "false", r.seesaw->monotone});
    }
    out.push_back({"unc<=local", "true", r.unc.value <= r.local.value ? "true" : "false", r.unc.value <= r.local.value});
    return out;
}

// ------------------------------------------------------------- JSON

namespace {

ojson rationals(const std::vector<Rational>& v) {
    ojson a = ojson::array();
    for (const auto& x : v) a.push_back(to_string(x));
    return a;
}

ojson settings(const std::vector<QubitObservable>& obs) {
    ojson a = ojson::array();
    for (const auto& o : obs) a.push_back({o.bloch().x, o.bloch().y, o.bloch().z});
    return a;
}

ojson state_json(const QuantumStrategy& s, const std::optional<SeesawResult>& seesaw, bool from_seesaw) {
    if (s.bell) return std::string(to_string(*s.bell));
    ojson a = ojson::array();
    if (from_seesaw && seesaw) {
        for (const auto& c : seesaw->state) a.push_back({c.real(), c.imag()});
        return {{"vector", a}};
    }
    for (std::size_t i = 0; i < 4; ++i) {
        ojson row = ojson::array();
        for (std::size_t j = 0; j < 4; ++j) row.push_back({s.state.matrix()(i, j).real(), s.state.matrix()(i, j).imag()});
        a.push_back(row);
    }
    return {{"matrix", a}};
}

ojson game_json(const GameReport& g) {
    ojson j;
    j["game"] = g.game;
    j["p_quantum"] = g.p_quantum;
    j["p_local"] = g.p_local;
    j["p_unc"] = g.p_unc;
    j["window"] = g.window.label();
    j["margin"] = g.window.margin;
    return j;
}

ojson bounds_json(const BoundReport& r) {
    ojson j;
    j["expr"] = r.expr.name();
    j["local"] = to_string(r.local.value);
    j["unc"] = to_string(r.unc.value);
    j["unc_label"] = r.unc_label;
    j["quantum"] = r.quantum;
    j["maximizers"] = {{"local", {{"a", r.local.a}, {"b", r.local.b}}},
                       {"unc", {{"a", rationals(r.unc.a)}, {"b", rationals(r.unc.b)}}}};
    j["settings"] = {{"alice", settings(r.strategy.alice)}, {"bob", settings(r.strategy.bob)}};
    j["state"] = state_json(r.strategy, r.seesaw, !r.strategy.bell);
    if (r.seesaw) {
        j["seesaw"] = {{"value", r.seesaw->value},
                       {"restarts", r.seesaw->restarts},
                       {"iterations", r.seesaw->trace.size()},
                       {"monotone", r.seesaw->monotone}};
    }
    j["delta_quantum"] = r.delta_quantum;
    if (r.delta_unc)
        j["delta_unc"] = {{"value", to_string(r.delta_unc->value)},
                          {"xi", rationals(r.delta_unc->certificate.xi)},
                          {"eta", rationals(r.delta_unc->certificate.eta)}};
    j["game"] = game_json(r.game_report);
    if (r.note) j["note"] = *r.note;
    return j;
}

ojson checks_json(const std::vector<Check>& checks) {
    ojson a = ojson::array();
    for (const auto& c : checks)
        a.push_back({{"name", c.name}, {"expected", c.expected}, {"actual", c.actual}, {"pass", c.pass}});
    return a;
}

std::string csv_row(const BoundReport& r) {
    return r.id + "," + to_string(r.local.value) + "," + to_string(r.unc.value) + "," + format_double(r.quantum) + "," +
           format_double(r.game_report.p_local) + "," + format_double(r.game_report.p_unc) + "," +
           format_double(r.game_report.p_quantum) + "," + r.game_report.window.label();
}

constexpr const char* kCsvHeader = "scenario,local,unc,quantum,p_local,p_unc,p_quantum,window";

}  // namespace

std::string bound_report_json(const BoundReport& r) { return bounds_json(r).dump(2); }
std::string game_report_json(const GameReport& g) { return game_json(g).dump(2); }

// ------------------------------------------------------------- commands

ResolvedScenario resolve_scenario(const RunConfig& cfg) {
    std::string id = cfg.scenario;
    if (id == "nn") {
        if (!cfg.n) throw InvalidN("scenario 'nn' needs --n <odd n>");
        id = "nn:" + std::to_string(*cfg.n);
    }
    if (is_catalog_id(id)) {
        auto entry = catalog_entry(id);
        auto s = entry.scenario;
        return {std::move(entry), std::move(s)};
    }
    std::ifstream in(id);
    if (!in) throw UnknownKind("'" + id + "' is neither a catalog scenario nor a readable file");
    std::stringstream buf;
    buf << in.rdbuf();
    return {std::nullopt, scenario_from_json(buf.str())};
}

namespace {

/// Maps library exceptions onto the documented exit codes.
template <class Fn>
int guarded(std::ostream& err, Fn&& fn) {
    try {
        return fn();
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    } catch (const NonUnitBloch& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    } catch (const NoEquivalences& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

BoundReport bounds_for(const ResolvedScenario& rs, const RunConfig& cfg) {
    if (rs.entry) return compute_bounds(*rs.entry, cfg.restarts, cfg.seed);
    return compute_bounds(rs.scenario, cfg.restarts, cfg.seed);
}

void print_table(std::ostream& out, const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width;
    for (const auto& row : rows)
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (width.size() <= i) width.push_back(0);
            width[i] = std::max(width[i], row[i].size());
        }
    for (const auto& row : rows) {
        std::string line;
        for (std::size_t i = 0; i < row.size(); ++i) {
            line += row[i];
            if (i + 1 < row.size()) line += std::string(width[i] - row[i].size() + 2, ' ');
        }
        out << line << '\n';
    }
}

std::vector<std::string> table_header() {
    return {"scenario", "local", "unc", "quantum", "seesaw", "p_local", "p_unc", "p_quantum", "window"};
}

std::vector<std::string> table_row(const BoundReport& r) {
    return {r.id,
            to_string(r.local.value),
            to_string(r.unc.value) + (r.unc_label == "unc" ? "" : " (" + r.unc_label + ")"),
            format_double(r.quantum),
            r.seesaw ? format_double(r.seesaw->value) : "-",
            format_double(r.game_report.p_local),
            format_double(r.game_report.p_unc),
            format_double(r.game_report.p_quantum),
            r.game_report.window.label()};
}

}  // namespace

int cmd_bounds(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto rs = resolve_scenario(cfg);
        const auto r = bounds_for(rs, cfg);
        switch (cfg.format) {
            case OutputFormat::json: out << bound_report_json(r) << '\n'; break;
            case OutputFormat::csv: out << kCsvHeader << '\n' << csv_row(r) << '\n'; break;
            case OutputFormat::table: print_table(out, {table_header(), table_row(r)}); break;
        }
        return 0;
    });
}

int cmd_logic(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto rs = resolve_scenario(cfg);
        const auto problem = cfg.side == Side::preparation ? compile_preparation(rs.scenario)
                                                           : compile_measurement(rs.scenario, cfg.mode);
        const auto verdict = decide(problem);
        if (cfg.format == OutputFormat::json) {
            out << verdict_to_json(problem, verdict) << '\n';
        } else {
            out << rs.scenario.name << ' ' << to_string(problem.side) << ' ' << to_string(problem.party);
            if (problem.side == Side::measurement) out << ' ' << to_string(problem.mode);
            out << ": " << to_string(verdict.status) << (verdict.verify(problem) ? " (verified)" : " (UNVERIFIED)")
                << '\n';
        }
        return verdict.status == Verdict::feasible ? 0 : 1;
    });
}

int cmd_game(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        RunConfig quiet = cfg;
        const auto rs = resolve_scenario(cfg);
        if (rs.entry) quiet.restarts = 0;  // the reference strategy decides the game value
        const auto r = bounds_for(rs, quiet);
        const auto& g = r.game_report;
        switch (cfg.format) {
            case OutputFormat::json: out << game_report_json(g) << '\n'; break;
            case OutputFormat::csv:
                out << "game,p_quantum,p_local,p_unc,window\n"
                    << g.game << ',' << format_double(g.p_quantum) << ',' << format_double(g.p_local) << ','
                    << format_double(g.p_unc) << ',' << g.window.label() << '\n';
                break;
            case OutputFormat::table:
                print_table(out, {{"game", "p_quantum", "p_local", "p_unc", "window"},
                                  {g.game, format_double(g.p_quantum), format_double(g.p_local),
                                   format_double(g.p_unc), g.window.label()}});
                break;
        }
        return 0;
    });
}

int cmd_report(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        bool all_pass = true;
        std::vector<BoundReport> rows;
        std::vector<std::vector<Check>> checks;
        for (const auto& id : catalog_ids()) {
            const auto entry = catalog_entry(id);
            rows.push_back(compute_bounds(entry, cfg.restarts, cfg.seed));
            checks.push_back(check_expected(rows.back(), entry.expected, cfg.tol));
            for (const auto& c : checks.back()) all_pass = all_pass && c.pass;
        }
        switch (cfg.format) {
            case OutputFormat::json: {
                ojson j;
                j["seed"] = cfg.seed;
                j["restarts"] = cfg.restarts;
                j["tol"] = cfg.tol;
                ojson arr = ojson::array();
                for (std::size_t i = 0; i < rows.size(); ++i) {
                    ojson row = bounds_json(rows[i]);
                    row["checks"] = checks_json(checks[i]);
                    arr.push_back({{"scenario", rows[i].id}, {"bounds", row}});
                }
                j["rows"] = arr;
                j["all_pass"] = all_pass;
                out << j.dump(2) << '\n';
                break;
            }
            case OutputFormat::csv:
                out << kCsvHeader << '\n';
                for (const auto& r : rows) out << csv_row(r) << '\n';
                break;
            case OutputFormat::table: {
                std::vector<std::vector<std::string>> t{table_header()};
                t.front().push_back("checks");
                for (std::size_t i = 0; i < rows.size(); ++i) {
                    auto line = table_row(rows[i]);
                    std::size_t passed = 0;
                    for (const auto& c : checks[i]) passed += c.pass;
                    line.push_back(passed == checks[i].size() ? "pass" : "FAIL");
                    t.push_back(std::move(line));
                }
                print_table(out, t);
                for (std::size_t i = 0; i < rows.size(); ++i) {
                    for (const auto& c : checks[i])
                        if (!c.pass)
                            out << "FAIL " << rows[i].id << ' ' << c.name << ": expected " << c.expected << ", got "
                                << c.actual << '\n';
                    if (rows[i].note) out << "note " << rows[i].id << ": " << *rows[i].note << '\n';
                }
                break;
            }
        }
        if (!all_pass) err << "report: some expected values were not reproduced\n";
        return all_pass ? 0 : 4;
    });
}

int cmd_scenario(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (cfg.list == !cfg.dump.empty()) {
            err << "error: scenario needs exactly one of --list or --dump <id>\n";
            return 2;
        }
        if (cfg.list) {
            for (const auto& id : catalog_ids()) out << id << '\n';
            return 0;
        }
        RunConfig c = cfg;
        c.scenario = cfg.dump;
        out << scenario_to_json(resolve_scenario(c).scenario) << '\n';
        return 0;
    });
}

int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.command == "bounds") return cmd_bounds(cfg, out, err);
    if (cfg.command == "logic") return cmd_logic(cfg, out, err);
    if (cfg.command == "game") return cmd_game(cfg, out, err);
    if (cfg.command == "report") return cmd_report(cfg, out, err);
    if (cfg.command == "scenario") return cmd_scenario(cfg, out, err);
    err << "error: unknown command '" << cfg.command << "'\n";
    return 2;
}

}  // namespace ctx
