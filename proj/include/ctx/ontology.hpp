#pragma once

// Noncontextual ontological models over the canonical sign-cell ontic space.
//
// A cell lambda in {+,-}^n fixes, for each of the n dichotomic measurements,
// the outcome region it belongs to. Orthogonal preparations rho_t^+ and
// rho_t^- have disjoint supports, so mu(lambda | rho_t^a) = 0 unless
// lambda_t = a. Any model that separates those supports coarse-grains onto
// these cells; this is a modeling assumption, not a theorem, for
// indeterministic response functions.

#include <optional>
#include <string>
#include <vector>

#include "ctx/lp.hpp"
#include "ctx/rational.hpp"
#include "ctx/scenario.hpp"

namespace ctx {

class OnticSpace {
public:
    /// 1 <= n <= 12, else TooLarge.
    static OnticSpace build(std::size_t n);

    std::size_t measurements() const { return n_; }
    std::size_t size() const { return std::size_t{1} << n_; }
    /// Outcome region of measurement t in cell; cells in binary order with
    /// measurement 0 most significant and + encoded as 0.
    int sign(std::size_t cell, std::size_t t) const { return (cell >> (n_ - 1 - t)) & 1 ? -1 : 1; }
    std::string label(std::size_t cell) const;
    /// Cells where measurement t has outcome region alpha.
    std::vector<std::size_t> support(std::size_t t, int alpha) const;

private:
    explicit OnticSpace(std::size_t n) : n_(n) {}
    std::size_t n_;
};

inline OnticSpace build_assignment_space(std::size_t n) { return OnticSpace::build(n); }

struct EpistemicState {
    std::vector<Rational> weights;  // one per cell
    bool is_distribution() const;
};

enum class ResponseMode { deterministic, indeterministic };
std::string_view to_string(ResponseMode mode);
ResponseMode parse_response_mode(std::string_view name);

/// xi_t(+ | lambda) per measurement and cell; xi_t(-) = 1 - xi_t(+).
struct ResponseTable {
    std::size_t measurements = 0;
    std::size_t cells = 0;
    ResponseMode mode = ResponseMode::indeterministic;
    std::vector<Rational> plus;  // [t * cells + cell]

    Rational response(std::size_t t, int alpha, std::size_t cell) const;
    bool is_valid() const;
    /// The same response vector in every cell.
    static ResponseTable uniform(const std::vector<Rational>& xi, std::size_t cells, ResponseMode mode);
};

struct FeasibilityProblem {
    std::string scenario;
    Side side = Side::preparation;
    ResponseMode mode = ResponseMode::indeterministic;
    Party party = Party::alice;
    std::size_t measurements = 0;
    LinearSystem system;
    /// Preparation side: variable index of mu(lambda | rho_t^alpha), or npos
    /// where the support constraint fixes it to zero; and of nu(lambda).
    std::vector<std::size_t> mu_index;  // [(2t + (alpha<0)) * cells + cell]
    std::vector<std::size_t> nu_index;  // [cell]
};

enum class Verdict { feasible, infeasible };
std::string_view to_string(Verdict v);

/// Exhaustive refutation of a deterministic assignment space: for every 0/1
/// assignment (in canonical order) the index of a violated row.
struct EnumerationRefutation {
    std::vector<std::size_t> violated_row;
};

struct FeasibilityVerdict {
    Verdict status = Verdict::infeasible;
    std::vector<Rational> witness;                     // one value per variable
    std::optional<FarkasCertificate> certificate;      // LP infeasibility
    std::optional<EnumerationRefutation> refutation;   // deterministic infeasibility
    LpMethod method = LpMethod::simplex;

    /// Exact re-verification against the compiled problem.
    bool verify(const FeasibilityProblem& problem) const;
};

/// Throws NoEquivalences when the party has no preparation equivalences.
FeasibilityProblem compile_preparation(const OperationalScenario& s, std::optional<Party> party = {});
/// One cell's response variables; the constraints are the same in every cell.
FeasibilityProblem compile_measurement(const OperationalScenario& s, ResponseMode mode,
                                       std::optional<Party> party = {});
FeasibilityVerdict decide(const FeasibilityProblem& problem, LpMethod method = LpMethod::automatic);

FeasibilityVerdict preparation_feasibility(const OperationalScenario& s,
                                           ResponseMode mode = ResponseMode::indeterministic,
                                           std::optional<Party> party = {});
FeasibilityVerdict measurement_feasibility(const OperationalScenario& s, ResponseMode mode,
                                           std::optional<Party> party = {});

/// Party carrying the scenario's preparation / measurement equivalences
/// (Alice when both do). Throws NoEquivalences when neither does.
Party preparation_party(const OperationalScenario& s);
Party measurement_party(const OperationalScenario& s);

/// {"status": ..., "witness": {...}} or {"status": ..., "certificate": [...]}.
std::string verdict_to_json(const FeasibilityProblem& problem, const FeasibilityVerdict& verdict);

struct OntologicalModel {
    Party party = Party::alice;
    std::size_t measurements = 0;
    std::vector<EpistemicState> preparations;  // index 2t (rho_t^+) and 2t+1 (rho_t^-)
    ResponseTable responses;
};

/// Epistemic states read off a feasible preparation witness.
std::vector<EpistemicState> epistemic_states(const FeasibilityProblem& problem, const FeasibilityVerdict& verdict);

enum class ResidualScope {
    all_pairs,               // every (rho_t^a, P_t'^b)
    cross_pairs,             // t != t'
    perfect_predictability,  // t == t', b == a
};

/// max |sum_lambda mu(lambda) xi(lambda) - Tr[rho P]| over the scope.
/// Throws DimensionMismatch when the model does not fit the scenario.
double born_rule_residual(const OntologicalModel& model, const OperationalScenario& s,
                          ResidualScope scope = ResidualScope::all_pairs);

}  // namespace ctx
