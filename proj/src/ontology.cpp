#include "ctx/ontology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "ctx/errors.hpp"

namespace ctx {

namespace {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

std::size_t prep_slot(std::size_t t, int alpha) { return 2 * t + (alpha < 0 ? 1 : 0); }

std::vector<OperationalEquivalence> checked_equivalences(const OperationalScenario& s, Side side, Party party) {
    auto eqs = s.equivalences_for(side, party);
    if (eqs.empty())
        throw NoEquivalences("scenario '" + s.name + "' has no " + std::string(to_string(side)) +
                             " equivalences for " + std::string(to_string(party)));
    return eqs;
}

Party party_for(const OperationalScenario& s, Side side) {
    if (!s.equivalences_for(side, Party::alice).empty()) return Party::alice;
    if (!s.equivalences_for(side, Party::bob).empty()) return Party::bob;
    throw NoEquivalences("scenario '" + s.name + "' has no " + std::string(to_string(side)) + " equivalences");
}

}  // namespace

// ------------------------------------------------------------- ontic space

OnticSpace OnticSpace::build(std::size_t n) {
    if (n == 0) throw TooLarge("ontic space needs at least one measurement");
    if (n > 12) throw TooLarge("ontic space limited to 12 measurements (4096 cells)");
    return OnticSpace(n);
}

std::string OnticSpace::label(std::size_t cell) const {
    std::string s;
    for (std::size_t t = 0; t < n_; ++t) s += sign(cell, t) > 0 ? '+' : '-';
    return s;
}

std::vector<std::size_t> OnticSpace::support(std::size_t t, int alpha) const {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < size(); ++c)
        if (sign(c, t) == alpha) out.push_back(c);
    return out;
}

bool EpistemicState::is_distribution() const {
    Rational total = 0;
    for (const auto& w : weights) {
        if (w < 0) return false;
        total += w;
    }
    return total == 1;
}

std::string_view to_string(ResponseMode mode) {
    return mode == ResponseMode::deterministic ? "deterministic" : "indeterministic";
}

ResponseMode parse_response_mode(std::string_view name) {
    if (name == "deterministic") return ResponseMode::deterministic;
    if (name == "indeterministic") return ResponseMode::indeterministic;
    throw UnknownKind("unknown response mode '" + std::string(name) + "'");
}

Rational ResponseTable::response(std::size_t t, int alpha, std::size_t cell) const {
    const Rational& p = plus[t * cells + cell];
    return alpha > 0 ? p : 1 - p;
}

bool ResponseTable::is_valid() const {
    if (plus.size() != measurements * cells) return false;
    return std::all_of(plus.begin(), plus.end(), [this](const Rational& v) {
        if (v < 0 || v > 1) return false;
        return mode == ResponseMode::indeterministic || v == 0 || v == 1;
    });
}

ResponseTable ResponseTable::uniform(const std::vector<Rational>& xi, std::size_t cells, ResponseMode mode) {
    ResponseTable r{xi.size(), cells, mode, {}};
    for (const auto& v : xi)
        for (std::size_t c = 0; c < cells; ++c) r.plus.push_back(v);
    return r;
}

std::string_view to_string(Verdict v) { return v == Verdict::feasible ? "feasible" : "infeasible"; }

Party preparation_party(const OperationalScenario& s) { return party_for(s, Side::preparation); }
Party measurement_party(const OperationalScenario& s) { return party_for(s, Side::measurement); }

// ------------------------------------------------------------- compilation

FeasibilityProblem compile_preparation(const OperationalScenario& s, std::optional<Party> party) {
    const Party p = party ? *party : preparation_party(s);
    const auto eqs = checked_equivalences(s, Side::preparation, p);
    const std::size_t n = s.family(p).size();
    const OnticSpace space = OnticSpace::build(n);
    const std::size_t cells = space.size();

    FeasibilityProblem prob;
    prob.scenario = s.name;
    prob.side = Side::preparation;
    prob.party = p;
    prob.measurements = n;
    prob.mu_index.assign(2 * n * cells, npos);
    prob.nu_index.assign(cells, npos);
    auto& sys = prob.system;

    for (std::size_t t = 0; t < n; ++t) {
        for (int alpha : {1, -1}) {
            // support: only cells with lambda_t = alpha carry a variable
            for (std::size_t c : space.support(t, alpha)) {
                prob.mu_index[prep_slot(t, alpha) * cells + c] = sys.add_variable(
                    "mu[" + space.label(c) + "|rho" + std::to_string(t + 1) + (alpha > 0 ? "+" : "-") + "]");
            }
        }
    }
    for (std::size_t c = 0; c < cells; ++c) prob.nu_index[c] = sys.add_variable("nu[" + space.label(c) + "]");

    for (std::size_t t = 0; t < n; ++t) {
        for (int alpha : {1, -1}) {
            std::vector<std::pair<std::size_t, Rational>> terms;
            for (std::size_t c : space.support(t, alpha)) terms.emplace_back(prob.mu_index[prep_slot(t, alpha) * cells + c], 1);
            sys.add(std::move(terms), Relation::equal, 1,
                    "normalization rho" + std::to_string(t + 1) + (alpha > 0 ? "+" : "-"));
        }
    }
    for (std::size_t e = 0; e < eqs.size(); ++e) {
        for (std::size_t c = 0; c < cells; ++c) {
            std::vector<std::pair<std::size_t, Rational>> terms;
            for (const auto& term : eqs[e].terms) {
                const std::size_t v = prob.mu_index[prep_slot(term.index, term.sign) * cells + c];
                if (v != npos) terms.emplace_back(v, term.coeff);
            }
            terms.emplace_back(prob.nu_index[c], -1);
            sys.add(std::move(terms), Relation::equal, 0,
                    "equivalence " + std::to_string(e) + " at " + space.label(c));
        }
    }
    return prob;
}

FeasibilityProblem compile_measurement(const OperationalScenario& s, ResponseMode mode, std::optional<Party> party) {
    const Party p = party ? *party : measurement_party(s);
    const auto eqs = checked_equivalences(s, Side::measurement, p);
    const std::size_t n = s.family(p).size();
    OnticSpace::build(n);  // size check

    FeasibilityProblem prob;
    prob.scenario = s.name;
    prob.side = Side::measurement;
    prob.mode = mode;
    prob.party = p;
    prob.measurements = n;
    auto& sys = prob.system;
    for (std::size_t t = 0; t < n; ++t) sys.add_variable("xi" + std::to_string(t + 1));
    for (std::size_t t = 0; t < n; ++t)
        sys.add({{t, Rational(1)}}, Relation::less_equal, 1, "xi" + std::to_string(t + 1) + " <= 1");
    // sum_k c_k xi_k(alpha_k) = 1/2 with xi(-) = 1 - xi(+)
    for (std::size_t e = 0; e < eqs.size(); ++e) {
        std::vector<Rational> coeff(n, Rational(0));
        Rational rhs(1, 2);
        for (const auto& term : eqs[e].terms) {
            if (term.sign > 0) {
                coeff[term.index] += term.coeff;
            } else {
                coeff[term.index] -= term.coeff;
                rhs -= term.coeff;
            }
        }
        std::vector<std::pair<std::size_t, Rational>> terms;
        for (std::size_t t = 0; t < n; ++t)
            if (coeff[t] != 0) terms.emplace_back(t, coeff[t]);
        sys.add(std::move(terms), Relation::equal, rhs, "equivalence " + std::to_string(e));
    }
    return prob;
}

// ------------------------------------------------------------- deciding

namespace {

std::vector<Rational> assignment(std::size_t code, std::size_t n) {
    std::vector<Rational> x(n);
    for (std::size_t t = 0; t < n; ++t) x[t] = (code >> (n - 1 - t)) & 1;
    return x;
}

std::optional<std::size_t> first_violated(const LinearSystem& sys, const std::vector<Rational>& x) {
    for (std::size_t i = 0; i < sys.rows().size(); ++i) {
        const Rational lhs = sys.evaluate(i, x);
        const auto& row = sys.rows()[i];
        const bool ok = row.relation == Relation::equal        ? lhs == row.rhs
                        : row.relation == Relation::less_equal ? lhs <= row.rhs
                                                               : lhs >= row.rhs;
        if (!ok) return i;
    }
    return std::nullopt;
}

}  // namespace

FeasibilityVerdict decide(const FeasibilityProblem& problem, LpMethod method) {
    FeasibilityVerdict v;
    if (problem.side == Side::measurement && problem.mode == ResponseMode::deterministic) {
        const std::size_t n = problem.system.num_vars();
        EnumerationRefutation ref;
        for (std::size_t code = 0; code < (std::size_t{1} << n); ++code) {
            auto x = assignment(code, n);
            const auto bad = first_violated(problem.system, x);
            if (!bad) {
                v.status = Verdict::feasible;
                v.witness = std::move(x);
                return v;
            }
            ref.violated_row.push_back(*bad);
        }
        v.status = Verdict::infeasible;
        v.refutation = std::move(ref);
        return v;
    }
    const auto res = solve_feasibility(problem.system, method);
    v.method = res.method;
    if (res.status == LpStatus::feasible) {
        v.status = Verdict::feasible;
        v.witness = res.x;
    } else {
        v.status = Verdict::infeasible;
        v.certificate = res.certificate;
    }
    return v;
}

bool FeasibilityVerdict::verify(const FeasibilityProblem& problem) const {
    const auto& sys = problem.system;
    const bool deterministic = problem.side == Side::measurement && problem.mode == ResponseMode::deterministic;
    if (status == Verdict::feasible) {
        if (!sys.satisfied_by(witness)) return false;
        if (deterministic)
            return std::all_of(witness.begin(), witness.end(), [](const Rational& x) { return x == 0 || x == 1; });
        return true;
    }
    if (deterministic) {
        if (!refutation) return false;
        const std::size_t n = sys.num_vars();
        if (refutation->violated_row.size() != (std::size_t{1} << n)) return false;
        for (std::size_t code = 0; code < refutation->violated_row.size(); ++code) {
            const std::size_t row = refutation->violated_row[code];
            if (row >= sys.rows().size()) return false;
            LinearSystem single(n);
            single.add(sys.rows()[row]);
            if (single.satisfied_by(assignment(code, n))) return false;
        }
        return true;
    }
    return certificate && verify_certificate(sys, *certificate);
}

FeasibilityVerdict preparation_feasibility(const OperationalScenario& s, ResponseMode mode, std::optional<Party> party) {
    auto prob = compile_preparation(s, party);
    prob.mode = mode;
    return decide(prob);
}

FeasibilityVerdict measurement_feasibility(const OperationalScenario& s, ResponseMode mode, std::optional<Party> party) {
    return decide(compile_measurement(s, mode, party));
}

std::string verdict_to_json(const FeasibilityProblem& problem, const FeasibilityVerdict& verdict) {
    nlohmann::ordered_json j;
    j["scenario"] = problem.scenario;
    j["side"] = to_string(problem.side);
    j["party"] = to_string(problem.party);
    if (problem.side == Side::measurement) j["mode"] = to_string(problem.mode);
    j["status"] = to_string(verdict.status);
    if (verdict.status == Verdict::feasible) {
        nlohmann::ordered_json w = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < verdict.witness.size(); ++i)
            if (problem.side == Side::measurement || verdict.witness[i] != 0)
                w[problem.system.names()[i]] = to_string(verdict.witness[i]);
        j["witness"] = w;
    } else if (verdict.certificate) {
        nlohmann::ordered_json c = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < verdict.certificate->multipliers.size(); ++i) {
            const auto& m = verdict.certificate->multipliers[i];
            if (m != 0) c.push_back({{"row", problem.system.rows()[i].label}, {"multiplier", to_string(m)}});
        }
        j["certificate"] = c;
    } else if (verdict.refutation) {
        nlohmann::ordered_json c = nlohmann::ordered_json::array();
        const std::size_t n = problem.system.num_vars();
        for (std::size_t code = 0; code < verdict.refutation->violated_row.size(); ++code) {
            std::string bits;
            for (std::size_t t = 0; t < n; ++t) bits += ((code >> (n - 1 - t)) & 1) ? '1' : '0';
            c.push_back({{"assignment", bits}, {"violates", problem.system.rows()[verdict.refutation->violated_row[code]].label}});
        }
        j["certificate"] = c;
    }
    j["verified"] = verdict.verify(problem);
    return j.dump(2);
}

// ------------------------------------------------------------- models

std::vector<EpistemicState> epistemic_states(const FeasibilityProblem& problem, const FeasibilityVerdict& verdict) {
    if (problem.side != Side::preparation || verdict.status != Verdict::feasible)
        throw ValidationError("epistemic states need a feasible preparation verdict");
    const std::size_t cells = problem.nu_index.size();
    std::vector<EpistemicState> out(2 * problem.measurements);
    for (std::size_t slot = 0; slot < out.size(); ++slot) {
        out[slot].weights.assign(cells, Rational(0));
        for (std::size_t c = 0; c < cells; ++c) {
            const std::size_t v = problem.mu_index[slot * cells + c];
            if (v != npos) out[slot].weights[c] = verdict.witness[v];
        }
    }
    return out;
}

double born_rule_residual(const OntologicalModel& model, const OperationalScenario& s, ResidualScope scope) {
    const auto& fam = s.family(model.party);
    const std::size_t n = fam.size();
    if (model.measurements != n || model.preparations.size() != 2 * n || model.responses.measurements != n)
        throw DimensionMismatch("model size does not match the scenario's observables");
    const std::size_t cells = model.responses.cells;
    for (const auto& st : model.preparations)
        if (st.weights.size() != cells) throw DimensionMismatch("epistemic state size differs from response table");
    if (model.responses.plus.size() != n * cells) throw DimensionMismatch("response table is malformed");

    double worst = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        for (int alpha : {1, -1}) {
            const auto& mu = model.preparations[prep_slot(t, alpha)].weights;
            for (std::size_t u = 0; u < n; ++u) {
                if (scope == ResidualScope::cross_pairs && u == t) continue;
                if (scope == ResidualScope::perfect_predictability && u != t) continue;
                for (int beta : {1, -1}) {
                    if (scope == ResidualScope::perfect_predictability && beta != alpha) continue;
                    Rational predicted = 0;
                    for (std::size_t c = 0; c < cells; ++c)
                        if (mu[c] != 0) predicted += mu[c] * model.responses.response(u, beta, c);
                    const double born = expectation(projector_of(fam.observables[t], alpha),
                                                    projector_of(fam.observables[u], beta));
                    worst = std::max(worst, std::abs(to_double(predicted) - born));
                }
            }
        }
    }
    return worst;
}

}  // namespace ctx
